"""Reciprocal roots of integer polynomials P(t) = prod (1 - lambda t).

Exact factorization over Q separates repeated roots, so the numerical stage
only ever sees squarefree factors: companion-matrix eigenvalues seed an Aberth
iteration that is run until the relative residual is at machine level.
"""

from __future__ import annotations

import numpy as np
import sympy

from .errors import RootFindingDiverged

_t = sympy.Symbol("t")


def _aberth(coeffs_high, z, iters=100, tol=1e-15):
    c = np.asarray(coeffs_high, dtype=complex)
    dc = np.polyder(c)
    z = np.array(z, dtype=complex)
    for _ in range(iters):
        pz = np.polyval(c, z)
        dpz = np.polyval(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            repulsion = np.sum(1.0 / diff, axis=1)
            step = ratio / (1.0 - ratio * repulsion)
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.all(np.abs(step) <= tol * np.maximum(1.0, np.abs(z))):
            break
    return z


def relative_residual(coeffs_high, z):
    c = np.asarray(coeffs_high, dtype=complex)
    scale = np.polyval(np.abs(c), np.abs(z))
    return np.abs(np.polyval(c, z)) / scale


def _squarefree_roots(coeffs_high):
    deg = len(coeffs_high) - 1
    if deg == 0:
        return np.array([], dtype=complex)
    if deg == 1:
        return np.array([-coeffs_high[1] / coeffs_high[0]], dtype=complex)
    seed = np.roots(np.asarray(coeffs_high, dtype=float))
    z = _aberth(coeffs_high, seed)
    if not np.all(np.isfinite(z)):
        raise RootFindingDiverged(f"Aberth iteration diverged on {coeffs_high}")
    # coefficients are real: pair each root with its conjugate
    out = np.empty_like(z)
    used = np.zeros(len(z), dtype=bool)
    for i in range(len(z)):
        if used[i]:
            continue
        used[i] = True
        if abs(z[i].imag) <= 1e-13 * max(1.0, abs(z[i])):
            out[i] = z[i].real
            continue
        cand = [j for j in range(len(z)) if not used[j]]
        j = min(cand, key=lambda k: abs(z[k] - z[i].conjugate()))
        used[j] = True
        mean = 0.5 * (z[i] + z[j].conjugate())
        out[i], out[j] = mean, mean.conjugate()
    if np.max(relative_residual(coeffs_high, out)) > 1e-12:
        raise RootFindingDiverged(f"residual too large for {coeffs_high}")
    return out


def reciprocal_root_factors(P):
    """Split P (integer coefficients, constant term first) into irreducible factors.

    Returns a list of ``(factor_coeffs, multiplicity, reciprocal_roots)`` where
    each factor is again constant-term first and the roots are those of its
    reversal, i.e. the lambda with factor(t) = prod (1 - lambda t).
    """
    P = [int(c) for c in P]
    if len(P) <= 1:
        return []
    poly = sympy.Poly(list(reversed(P)), _t)
    _, factors = sympy.factor_list(poly)
    out = []
    for f, mult in factors:
        high = [int(c) for c in f.all_coeffs()]          # f as polynomial in t
        low = list(reversed(high))                         # constant-term first
        if abs(low[0]) != 1:
            raise RootFindingDiverged(f"factor {low} of {P} does not have unit constant term")
        if low[0] == -1:
            low = [-c for c in low]
        # reversed polynomial x^deg f(1/x) has coefficient list low (high-to-low in x)
        roots = _squarefree_roots([float(c) for c in low])
        out.append((low, mult, roots))
    return out


def reciprocal_roots(P):
    roots = []
    for _, mult, rs in reciprocal_root_factors(P):
        for r in rs:
            roots.extend([complex(r)] * mult)
    return roots
