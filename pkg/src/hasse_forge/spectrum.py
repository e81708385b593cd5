"""Frobenius eigen-data, its logarithm Theta, and the parity-graded TP model.

Eigenvalues come from the reciprocal roots of the P_i.  Theta = log_q of the
Frobenius uses the principal branch Arg in (-pi, pi]; a unit v of degree -2
with Fr*(v) = v and Theta(v) = (2 pi i / log q) v makes the model 2-periodic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg
from sympy import factorint

from ._roots import reciprocal_root_factors, relative_residual
from .config import DEFAULT_TOLERANCES
from .errors import IllConditioned, Singular
from .varieties import WeilBoundViolated, ZetaRational

__all__ = ["SpectrumEntry", "FrobeniusSpectrum", "ThetaEntry", "ThetaOperator", "TPEntry",
           "UnitV", "TPModel", "spectrum_from_zeta", "theta_operator", "matrix_log_q",
           "build_tp_model", "frobenius_weight_relation", "export_spectrum", "import_spectrum",
           "principal_log_q"]


@dataclass(frozen=True)
class SpectrumEntry:
    lam: complex
    mult: int
    jordan: tuple = ()   # block sizes, summing to mult; empty means semisimple

    @property
    def blocks(self):
        return self.jordan or (1,) * self.mult


@dataclass
class FrobeniusSpectrum:
    q: int
    by_degree: dict  # i -> list[SpectrumEntry]

    @property
    def betti(self):
        top = max(self.by_degree) if self.by_degree else 0
        return [sum(e.mult for e in self.by_degree.get(i, [])) for i in range(top + 1)]

    def weil_residuals(self):
        """Relative deviation of |lambda| from q^(i/2), per (i, entry)."""
        out = []
        for i, entries in sorted(self.by_degree.items()):
            target = self.q ** (i / 2)
            for e in entries:
                out.append((i, e, abs(abs(e.lam) - target) / target))
        return out


def spectrum_from_zeta(Z: ZetaRational, tol: float = DEFAULT_TOLERANCES.weil) -> FrobeniusSpectrum:
    by_degree = {}
    for i, P in enumerate(Z.polys):
        entries = []
        for f, mult, roots in reciprocal_root_factors(P):
            # residual on the reversed factor, whose roots are the lambdas
            res = relative_residual([float(c) for c in f], roots)
            if len(roots) and np.max(res) > 1e-12:  # pragma: no cover - _roots already enforces this
                raise WeilBoundViolated(f"root residual {np.max(res)} on factor {f}")
            for lam in roots:
                entries.append(SpectrumEntry(complex(lam), mult))
        target = Z.q ** (i / 2)
        for e in entries:
            if abs(abs(e.lam) - target) > tol * target:
                raise WeilBoundViolated(f"|{e.lam}| differs from q^({i}/2) = {target}")
        by_degree[i] = entries
    return FrobeniusSpectrum(Z.q, by_degree)


def principal_log_q(lam: complex, q: int) -> complex:
    """log_q with Arg in (-pi, pi]."""
    lam = complex(lam)
    if lam == 0:
        raise Singular("log of zero eigenvalue")
    arg = cmath.phase(lam)
    if arg == -math.pi:
        arg = math.pi
    return complex(math.log(abs(lam)), arg) / math.log(q)


@dataclass(frozen=True)
class ThetaEntry:
    alpha0: complex
    step: complex        # 2 pi i / log q
    mult: int
    weight: Fraction
    nilpotent_rank: int  # largest Jordan block minus one


@dataclass
class ThetaOperator:
    q: int
    entries: list


def theta_operator(S: FrobeniusSpectrum) -> ThetaOperator:
    step = 2j * math.pi / math.log(S.q)
    entries = []
    for i, es in sorted(S.by_degree.items()):
        for e in es:
            entries.append(ThetaEntry(principal_log_q(e.lam, S.q), step, e.mult,
                                      Fraction(i, 2), max(e.blocks) - 1))
    return ThetaOperator(S.q, entries)


def matrix_log_q(M, q: int, tol=DEFAULT_TOLERANCES):
    """Theta with q^Theta = M, plus the semisimple and unipotent parts of M.

    M = S U is split along generalized eigenspaces (found as null spaces of
    (M - mu)^m for each eigenvalue cluster mu of multiplicity m).  Theta is
    log_q on the eigenvalues of S plus the terminating series
    (1/log q) sum (-1)^(k+1) (U - I)^k / k.
    """
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("matrix_log_q needs a square matrix")
    eig = np.linalg.eigvals(M)
    scale = max(1.0, np.max(np.abs(eig)))
    if np.min(np.abs(eig)) <= 1e-12 * scale:
        raise Singular("matrix is singular")

    # single-linkage clustering: a Jordan block of size m splits its eigenvalue
    # onto a circle of radius about (eps |M|)^(1/m), so the linkage radius must
    # cover neighbours on that circle for m up to n
    split = (1e-15 * np.linalg.norm(M, 2)) ** (1.0 / n)
    radius = max(tol.cluster * scale, 4 * split)
    clusters = []
    for lam in eig:
        near = [c for c in clusters if min(abs(lam - x) for x in c) <= radius]
        merged = [lam] + [x for c in near for x in c]
        clusters = [c for c in clusters if not any(c is d for d in near)] + [merged]
    centres = [complex(np.mean(c)) for c in clusters]

    bases = []
    for mu, c in zip(centres, clusters):
        m = len(c)
        A = np.linalg.matrix_power(M - mu * np.eye(n), m)
        _, sv, vh = np.linalg.svd(A)
        basis = vh[-m:].conj().T
        bases.append(basis)
    V = np.hstack(bases)
    if np.linalg.cond(V) > 1e10:
        raise IllConditioned("generalized eigenspaces are nearly dependent")
    Vinv = np.linalg.inv(V)
    diag_s = np.concatenate([[mu] * len(c) for mu, c in zip(centres, clusters)])
    diag_log = np.concatenate([[principal_log_q(mu, q)] * len(c) for mu, c in zip(centres, clusters)])
    S = V @ np.diag(diag_s) @ Vinv
    log_S = V @ np.diag(diag_log) @ Vinv
    U = np.linalg.solve(S, M)
    Nil = U - np.eye(n)
    log_U = np.zeros((n, n), dtype=complex)
    power = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        power = power @ Nil
        log_U += (-1) ** (k + 1) * power / k
    theta = log_S + log_U / math.log(q)
    back = scipy.linalg.expm(theta * math.log(q))
    if np.max(np.abs(back - M)) > tol.matrix_log * max(1.0, np.max(np.abs(M))):
        raise IllConditioned(f"q^Theta misses M by {np.max(np.abs(back - M)):.2e}")
    return theta, S, U


# ---------------------------------------------------------------------------
# TP model

@dataclass(frozen=True)
class TPEntry:
    lam: complex
    weight: Fraction
    mult: int
    degree: int
    jordan: tuple = ()


@dataclass(frozen=True)
class UnitV:
    """The degree -2 unit: Fr*(v) = v, phi(v) = p v, Theta(v) = (2 pi i / log q) v."""
    degree: int
    theta_shift: complex
    frobenius_eigenvalue: complex
    phi_eigenvalue: int
    weight: int


@dataclass
class TPModel:
    q: int
    p: int
    r: int
    parity_classes: dict   # 0 -> TP_0 entries (even degrees), 1 -> TP_1 entries (odd)
    unit_v: UnitV

    def dim(self, parity: int) -> int:
        return sum(e.mult for e in self.parity_classes[parity])


def _prime_power(q):
    fac = factorint(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, r), = fac.items()
    return p, r


def build_tp_model(S: FrobeniusSpectrum) -> TPModel:
    p, r = _prime_power(S.q)
    classes = {0: [], 1: []}
    for i, es in sorted(S.by_degree.items()):
        for e in es:
            classes[i % 2].append(TPEntry(e.lam, Fraction(i, 2), e.mult, i, e.jordan))
    unit = UnitV(-2, 2j * math.pi / math.log(S.q), 1.0 + 0j, p, -1)
    return TPModel(S.q, p, r, classes, unit)


@dataclass
class WeightReport:
    rows: list = field(default_factory=list)   # (parity, lam, weight, phi_r eigenvalue, modulus, normalized)
    unit_phi_r: int = 0
    unit_frobenius: complex = 0j
    ok: bool = True


def frobenius_weight_relation(model: TPModel, tol: float = DEFAULT_TOLERANCES.weil) -> WeightReport:
    """Read off phi^r = q^(-w) Fr* on each entry and on the unit v.

    With w = i/2 every |phi^r eigenvalue| should be 1; for v, phi(v) = p v gives
    phi^r(v) = q v, and weight -1 returns Fr*(v) = q^(-1) q v = v.
    """
    rep = WeightReport()
    for parity, entries in sorted(model.parity_classes.items()):
        for e in entries:
            phi_r = e.lam * model.q ** (-float(e.weight))
            normalized = abs(abs(phi_r) - 1.0) <= tol
            rep.rows.append((parity, e.lam, e.weight, phi_r, abs(phi_r), normalized))
            rep.ok &= normalized
    v = model.unit_v
    rep.unit_phi_r = v.phi_eigenvalue ** model.r
    rep.unit_frobenius = model.q ** v.weight * rep.unit_phi_r
    rep.ok &= rep.unit_phi_r == model.q and abs(rep.unit_frobenius - v.frobenius_eigenvalue) <= tol
    return rep


# ---------------------------------------------------------------------------
# text records "i, re, im, mult, jordan"

def export_spectrum(S: FrobeniusSpectrum) -> str:
    lines = [f"# q={S.q}", "# i,re,im,mult,jordan"]
    for i, es in sorted(S.by_degree.items()):
        for e in es:
            jordan = "+".join(str(b) for b in e.blocks)
            lines.append(f"{i},{e.lam.real!r},{e.lam.imag!r},{e.mult},{jordan}")
    return "\n".join(lines) + "\n"


def import_spectrum(text: str, q: int | None = None) -> FrobeniusSpectrum:
    by_degree = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line[1:].strip().startswith("q=") and q is None:
                q = int(line[1:].strip()[2:])
            continue
        parts = [x.strip() for x in line.strip("()").split(",")]
        i, re, im, mult = int(parts[0]), float(parts[1]), float(parts[2]), int(parts[3])
        jordan = tuple(int(b) for b in parts[4].split("+")) if len(parts) > 4 and parts[4] else ()
        if jordan and sum(jordan) != mult:
            raise ValueError(f"Jordan blocks {jordan} do not sum to multiplicity {mult}")
        if jordan and all(b == 1 for b in jordan):
            jordan = ()
        by_degree.setdefault(i, []).append(SpectrumEntry(complex(re, im), mult, jordan))
    if q is None:
        raise ValueError("spectrum text does not record q")
    top = max(by_degree) if by_degree else 0
    for i in range(top + 1):
        by_degree.setdefault(i, [])
    return FrobeniusSpectrum(q, by_degree)
