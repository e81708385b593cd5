"""Zeta-regularized determinants of s - Theta on the parity classes of a TP model.

For one Frobenius eigenvalue lambda, Theta has eigenvalues alpha_0 + i h k
(k in Z, h = 2 pi / log q), so s - Theta has eigenvalues
mu_k = z0 - i h k with z0 = s - alpha_0.  Writing a = i z0 / h,

    mu_k = -i h (k + a)    and    mu_{-j} = i h (j - a),

and as long as Re(k + a) > 0 (resp. Re(j - a) > 0) the principal argument of
mu is Arg(k + a) -/+ pi/2 without wrapping.  The two tails are therefore
h^-z e^(+-i pi z/2) zeta_H(z, .), and the finitely many remaining modes are
summed directly with lambda^-z = |lambda|^-z e^(-i z Arg lambda).  At z = 0
everything is explicit through zeta_H(0, A) = 1/2 - A and Lerch's formula.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import BranchBoundary, IdentityViolated
from .special import hurwitz_zeta_deriv0
from .spectrum import (TPModel, build_tp_model, principal_log_q,
                       spectrum_from_zeta)
from .varieties import zeta_of

__all__ = ["EigenProgression", "RegDetResult", "regdet_progression", "regdet_parity_class",
           "finite_det_parity_class", "dim_infty", "scaling_check", "verify_theorem_a",
           "TheoremReport", "SampleRow", "regdet_entries"]


@dataclass(frozen=True)
class EigenProgression:
    lam: complex
    q: int
    mult: int = 1

    @property
    def alpha0(self) -> complex:
        return principal_log_q(self.lam, self.q)

    @property
    def step(self) -> float:
        return 2 * math.pi / math.log(self.q)


@dataclass(frozen=True)
class RegDetResult:
    value: complex
    zeta_at_0: complex
    zeta_prime_at_0: complex
    anomalous_dim: complex
    vanishing: bool


def _near_cut(mu: complex, tol: Tolerances) -> bool:
    # exactly on the cut is fine (Arg = pi); a hair off it is refused
    return mu.real < 0 and mu.imag != 0 and abs(mu.imag) <= tol.branch * abs(mu)


def _principal_log(mu: complex, tol: Tolerances) -> complex:
    if _near_cut(mu, tol):
        raise BranchBoundary(f"eigenvalue {mu} lies within {tol.branch} of the cut Arg = pi")
    arg = cmath.phase(mu)
    if arg == -math.pi:
        arg = math.pi
    return complex(math.log(abs(mu)), arg)


def _arith_progression_det(z0: complex, h: float, mult: int, tol: Tolerances) -> RegDetResult:
    """Regularized determinant of the operator with eigenvalues z0 - i h k, k in Z."""
    a = 1j * z0 / h
    K = math.floor(-a.real) + 1          # smallest K with Re(a + K) > 0
    J = math.floor(a.real) + 1           # smallest J with Re(J - a) > 0
    k_zero = round(z0.imag / h)
    nearest = z0 - 1j * h * k_zero      # the only mode that can sit near the real axis
    if _near_cut(nearest, tol):
        raise BranchBoundary(f"eigenvalue {nearest} lies within {tol.branch} of the cut Arg = pi")
    zero_mode = abs(nearest) <= tol.vanishing
    if zero_mode:
        K = max(K, k_zero + 1)
        J = max(J, 1 - k_zero)
    A, B = a + K, J - a

    log_h = math.log(h)
    zeta0 = (0.5 - A) + (0.5 - B)
    dzeta0 = ((-log_h + 0.5j * math.pi) * (0.5 - A) + hurwitz_zeta_deriv0(A)
              + (-log_h - 0.5j * math.pi) * (0.5 - B) + hurwitz_zeta_deriv0(B))
    for k in range(-(J - 1), K):
        if zero_mode and k == k_zero:
            continue
        mu = z0 - 1j * h * k
        zeta0 += 1
        dzeta0 -= _principal_log(mu, tol)

    zeta0 *= mult
    dzeta0 *= mult
    dim0 = mult if zero_mode else 0
    value = 0j if zero_mode else cmath.exp(-dzeta0)
    return RegDetResult(value, zeta0, dzeta0, dim0 + zeta0, zero_mode)


def regdet_progression(prog: EigenProgression, s: complex, tol: Tolerances = DEFAULT_TOLERANCES,
                       delta: float = 1.0) -> RegDetResult:
    """det_inf(delta (s - Theta)) on the span of the Theta-eigenvalues q^alpha = lambda."""
    z0 = complex(s) - prog.alpha0
    return _arith_progression_det(delta * z0, delta * prog.step, prog.mult, tol)


def _progressions(model: TPModel, parity: int):
    return [EigenProgression(e.lam, model.q, e.mult) for e in model.parity_classes[parity]]


def regdet_entries(progs, s, tol=DEFAULT_TOLERANCES, delta=1.0):
    """Product of det_inf over a list of progressions and the summed anomalous dimension."""
    value, dim = 1 + 0j, 0j
    for prog in progs:
        res = regdet_progression(prog, s, tol, delta)
        value *= res.value
        dim += res.anomalous_dim
    return value, dim


def regdet_parity_class(model: TPModel, parity: int, s: complex,
                        tol: Tolerances = DEFAULT_TOLERANCES, delta: float = 1.0) -> complex:
    """det_inf(delta (s - Theta) | TP_parity), multiplicative over the entries."""
    return regdet_entries(_progressions(model, parity), s, tol, delta)[0]


def finite_det_parity_class(model: TPModel, parity: int, s: complex) -> complex:
    """det(id - q^-s Fr* | TP_parity) computed directly."""
    t = cmath.exp(-complex(s) * math.log(model.q))
    out = 1 + 0j
    for e in model.parity_classes[parity]:
        out *= (1 - e.lam * t) ** e.mult
    return out


def dim_infty(model: TPModel, parity: int, s: complex, tol: Tolerances = DEFAULT_TOLERANCES) -> complex:
    return regdet_entries(_progressions(model, parity), s, tol)[1]


@dataclass
class ScalingReport:
    delta: float
    scaled: complex
    unscaled: complex
    dim: complex
    ratio: complex
    ok: bool


def scaling_check(model: TPModel, parity: int, s: complex, delta: float,
                  tol: Tolerances = DEFAULT_TOLERANCES) -> ScalingReport:
    """Compare det_inf(delta (s - Theta)) with delta^dim_inf det_inf(s - Theta)."""
    if delta <= 0:
        raise ValueError("scaling factor must be positive")
    progs = _progressions(model, parity)
    unscaled, dim = regdet_entries(progs, s, tol)
    scaled, _ = regdet_entries(progs, s, tol, delta)
    expected = delta ** dim * unscaled
    if expected == 0:
        ratio = 1 + 0j if scaled == 0 else complex("inf")
    else:
        ratio = scaled / expected
    return ScalingReport(delta, scaled, unscaled, dim, ratio, abs(ratio - 1) <= tol.identity)


# ---------------------------------------------------------------------------

@dataclass
class SampleRow:
    s: complex
    lhs: complex
    rhs: complex
    relerr: float
    status: str                    # "ok", "fail", "zero", "pole"
    finite_odd: complex = 0j
    finite_even: complex = 0j
    regdet_odd: complex = 0j
    regdet_even: complex = 0j
    finite_vs_regdet: float = 0.0  # max relative gap between the two per-class routes


@dataclass
class TheoremReport:
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status in ("ok", "zero", "pole") for r in self.rows)

    def to_csv(self) -> str:
        lines = ["s,lhs_re,lhs_im,rhs_re,rhs_im,relerr,status"]
        for r in self.rows:
            lines.append(",".join([
                _fmt_complex(r.s), repr(r.lhs.real), repr(r.lhs.imag),
                repr(r.rhs.real), repr(r.rhs.imag), f"{r.relerr:.3e}", r.status]))
        return "\n".join(lines) + "\n"


def _fmt_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _rel(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def _eval_int_poly(P, t):
    out = 0j
    for c in reversed(P):
        out = out * t + c
    return out


def verify_theorem_a(spec, s_samples, tol: Tolerances = DEFAULT_TOLERANCES,
                     raise_on_failure: bool = True, model: TPModel | None = None) -> TheoremReport:
    """Compare zeta(X, s) from point counts with det_inf(s - Theta | TP_od) / det_inf(s - Theta | TP_ev).

    ``spec`` is a variety spec (counted and reconstructed here); a prebuilt
    ``model`` may be passed instead together with ``spec`` = the ZetaRational.
    """
    if model is None:
        Z = zeta_of(spec)
        model = build_tp_model(spectrum_from_zeta(Z, tol.weil))
    else:
        Z = spec
    report = TheoremReport()
    for s in s_samples:
        s = complex(s)
        fin_od = finite_det_parity_class(model, 1, s)
        fin_ev = finite_det_parity_class(model, 0, s)
        reg_od = regdet_parity_class(model, 1, s, tol)
        reg_ev = regdet_parity_class(model, 0, s, tol)
        gap = max(_rel(fin_od, reg_od), _rel(fin_ev, reg_ev))
        row = SampleRow(s, 0j, 0j, 0.0, "ok", fin_od, fin_ev, reg_od, reg_ev, gap)
        if reg_ev == 0 or reg_od == 0:
            # zero or pole of zeta: the counted zeta must vanish on the same side
            t = cmath.exp(-s * math.log(Z.q))
            num = _eval_int_poly(Z.numerator(), t)
            den = _eval_int_poly(Z.denominator(), t)
            vanish_match = ((reg_ev == 0) == (abs(den) <= tol.vanishing)
                            and (reg_od == 0) == (abs(num) <= tol.vanishing))
            pole = reg_ev == 0
            row.status = ("pole" if pole else "zero") if vanish_match else "fail"
            row.lhs = complex("inf") if abs(den) <= tol.vanishing else num / den
            row.rhs = complex("inf") if pole else 0j
        else:
            row.lhs = Z.zeta(s)
            row.rhs = reg_od / reg_ev
            row.relerr = abs(row.lhs - row.rhs) / abs(row.lhs)
            if row.relerr > tol.identity or gap > tol.identity:
                row.status = "fail"
        report.rows.append(row)
        if raise_on_failure and row.status == "fail":
            raise IdentityViolated(s, row.lhs, row.rhs, max(row.relerr, gap))
    return report
