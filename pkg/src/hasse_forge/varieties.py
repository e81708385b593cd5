"""Point counts N_m = |X(F_{q^m})| and the rational zeta function Z(X, t).

Z(X, t) = prod_i P_i(t)^((-1)^(i+1)) with P_i integer polynomials of degree
b_i, P_0 = 1 - t and P_2d = 1 - q^d t.  Reconstruction from counts is exact
(rational arithmetic); floating point only enters when the odd and even parts
are split by the absolute value of their reciprocal roots.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy

from ._roots import reciprocal_root_factors
from .config import DEFAULT_TOLERANCES, ENUMERATION_LIMIT
from .errors import (HasseForgeError, InsufficientCounts, MissingCount,
                     NonIntegerCoefficients, SingularCurve, SpecParse,
                     SurplusCountMismatch, TooLarge)
from .finite_field import FqElement, FqField, build_field, embed_field

__all__ = ["ProjectiveSpace", "WeierstrassCurve", "Product", "Custom", "PointCounts",
           "ZetaRational", "count_points", "point_counts", "zeta_from_counts",
           "functional_equation_check", "spec_from_json", "WeilBoundViolated",
           "power_sums", "counts_from_zeta", "zeta_of", "counts_needed"]


class WeilBoundViolated(HasseForgeError, ValueError):
    pass


# ---------------------------------------------------------------------------
# variety kinds

@dataclass(frozen=True)
class ProjectiveSpace:
    n: int
    base: FqField

    @property
    def q(self):
        return self.base.q

    def betti(self):
        return [1 if i % 2 == 0 else 0 for i in range(2 * self.n + 1)]


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over ``base``."""
    a: tuple  # (a1, a2, a3, a4, a6) as FqElements
    base: FqField

    def __post_init__(self):
        coeffs = tuple(self.base(c) for c in self.a)
        if len(coeffs) != 5:
            raise ValueError("a Weierstrass curve needs five coefficients a1, a2, a3, a4, a6")
        object.__setattr__(self, "a", coeffs)
        if not self.discriminant():
            raise SingularCurve(f"discriminant vanishes for {list(coeffs)}")

    @property
    def q(self):
        return self.base.q

    def betti(self):
        return [1, 2, 1]

    def discriminant(self) -> FqElement:
        a1, a2, a3, a4, a6 = self.a
        b2 = a1 * a1 + a2 * 4
        b4 = a4 * 2 + a1 * a3
        b6 = a3 * a3 + a6 * 4
        b8 = a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9


@dataclass(frozen=True)
class Product:
    left: object
    right: object

    def __post_init__(self):
        if self.left.q != self.right.q:
            raise ValueError(f"factors over different fields: q={self.left.q} vs q={self.right.q}")

    @property
    def q(self):
        return self.left.q

    @property
    def base(self):
        return getattr(self.left, "base", None)

    def betti(self):
        return [int(x) for x in np.convolve(self.left.betti(), self.right.betti())]


@dataclass(frozen=True)
class Custom:
    counts: tuple
    betti_numbers: tuple
    q: int

    def __post_init__(self):
        need = math.ceil(sum(self.betti_numbers) / 2)
        if len(self.counts) < need:
            raise InsufficientCounts(
                f"custom spec supplies {len(self.counts)} counts, at least {need} are required")

    def betti(self):
        return list(self.betti_numbers)


# ---------------------------------------------------------------------------
# counting

def _curve_affine_count(curve: WeierstrassCurve, m: int, start: int, stop: int, limit: int) -> int:
    p, r = curve.base.p, curve.base.r
    big = build_field(p, r * m)
    embed = embed_field(curve.base, big, limit)
    a1, a2, a3, a4, a6 = (embed(c) for c in curve.a)
    Q = big.q
    total = 0
    for idx in range(start, stop):
        x = big.from_index(idx)
        b = a1 * x + a3
        c = ((x + a2) * x + a4) * x + a6
        if p == 2:
            if not b:
                total += 1
                continue
            z = c / (b * b)
            tr, zz = z, z
            for _ in range(big.r - 1):
                zz = zz * zz
                tr = tr + zz
            total += 2 if not tr else 0
        else:
            disc = b * b + c * 4
            if not disc:
                total += 1
            elif disc ** ((Q - 1) // 2) == big.one:
                total += 2
    return total


def count_points(spec, m: int, limit: int = ENUMERATION_LIMIT, workers: int = 1) -> int:
    """N_m = |X(F_{q^m})|.

    Curves are counted exhaustively over x in F_{q^m}; with ``workers > 1`` the
    x-range is split across processes and the partial sums added.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if isinstance(spec, ProjectiveSpace):
        Q = spec.q ** m
        return sum(Q ** i for i in range(spec.n + 1))
    if isinstance(spec, WeierstrassCurve):
        Q = spec.q ** m
        if Q > limit:
            raise TooLarge(Q, limit)
        if workers <= 1:
            return 1 + _curve_affine_count(spec, m, 0, Q, limit)
        bounds = np.linspace(0, Q, workers + 1, dtype=int)
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_curve_affine_count, [spec] * workers, [m] * workers,
                             bounds[:-1].tolist(), bounds[1:].tolist(), [limit] * workers)
            return 1 + sum(parts)
    if isinstance(spec, Product):
        return count_points(spec.left, m, limit, workers) * count_points(spec.right, m, limit, workers)
    if isinstance(spec, Custom):
        if m > len(spec.counts):
            raise MissingCount(m)
        return int(spec.counts[m - 1])
    raise TypeError(f"unsupported variety spec {type(spec).__name__}")


@dataclass(frozen=True)
class PointCounts:
    q: int
    counts: tuple  # N_1..N_M

    def __post_init__(self):
        if any(int(c) < 0 for c in self.counts):
            raise ValueError("point counts must be nonnegative")


def point_counts(spec, M: int, limit: int = ENUMERATION_LIMIT) -> PointCounts:
    return PointCounts(spec.q, tuple(count_points(spec, m, limit) for m in range(1, M + 1)))


# ---------------------------------------------------------------------------
# zeta functions

def power_sums(P: Sequence[int], M: int) -> list:
    """s_m = sum lambda^m over reciprocal roots of P, m = 1..M, via Newton's identities."""
    c = list(P) + [0] * max(0, M + 1 - len(P))
    s = []
    for m in range(1, M + 1):
        val = -m * c[m] - sum(c[k] * s[m - k - 1] for k in range(1, m))
        s.append(val)
    return s


@dataclass(frozen=True)
class ZetaRational:
    q: int
    d: int
    polys: tuple  # P_0..P_2d, each a tuple of ints, constant term first

    @property
    def betti(self):
        return [len(P) - 1 for P in self.polys]

    def numerator(self):
        """Product of the odd-degree P_i (integer coefficients, constant first)."""
        return _poly_product(self.polys[1::2])

    def denominator(self):
        return _poly_product(self.polys[0::2])

    def evaluate(self, t: complex) -> complex:
        val = 1 + 0j
        for i, P in enumerate(self.polys):
            v = np.polyval(list(reversed(P)), t)
            val = val * v if i % 2 else val / v
        return complex(val)

    def zeta(self, s: complex) -> complex:
        """zeta(X, s) = Z(X, q^-s)."""
        return self.evaluate(np.exp(-complex(s) * math.log(self.q)))

    def __str__(self):
        parts = []
        for i, P in enumerate(self.polys):
            parts.append(f"P_{i}(t) = {_format_poly(P)}")
        return "\n".join(parts)


def _format_poly(P):
    terms = []
    for k, c in enumerate(P):
        if c == 0:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if not mono:
            terms.append(str(c))
        else:
            coef = "" if c == 1 else "-" if c == -1 else str(c)
            terms.append(f"{coef}{mono}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def _poly_product(polys):
    out = [1]
    for P in polys:
        out = _int_poly_mul(out, list(P))
    return out


def _int_poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def counts_from_zeta(Z: ZetaRational, M: int) -> list:
    """N_m for m = 1..M from -t d/dt log Z, exact integers."""
    total = [0] * M
    for i, P in enumerate(Z.polys):
        sign = 1 if i % 2 == 0 else -1
        for m, s in enumerate(power_sums(P, M)):
            total[m] += sign * s
    return total


def _zeta_series(counts, M):
    """Coefficients Z_0..Z_M of exp(sum N_m t^m / m); k Z_k = sum_m N_m Z_{k-m}."""
    Z = [Fraction(1)]
    for k in range(1, M + 1):
        Z.append(sum(Fraction(counts[m - 1]) * Z[k - m] for m in range(1, k + 1)) / k)
    return Z


def _symmetric_poly(B, d, q, eps, free):
    """Coefficient expressions of a degree-B polynomial whose reciprocal roots are
    closed under lambda -> q^d / lambda: a_{B-k} = eps q^(d(B-2k)/2) a_k."""
    coeffs = [None] * (B + 1)
    coeffs[0] = sympy.Integer(1)
    for k in range(1, B // 2 + 1):
        coeffs[k] = free[k - 1]
    extra = []
    for k in range(0, (B + 1) // 2 + (B % 2 == 0)):
        j = B - k
        twice = d * (B - 2 * k)
        if twice % 2:
            raise ValueError(f"degree {B} polynomial cannot be self-dual for q^{d}")
        factor = eps * sympy.Integer(q) ** (twice // 2)
        if j == k:
            # middle coefficient: a_k = eps a_k
            if eps == -1:
                extra.append(coeffs[k])
        else:
            coeffs[j] = factor * coeffs[k]
    return coeffs, extra


def _split_by_weight(P, parity, betti, q, tol):
    """Group the irreducible factors of P by weight i (|lambda| = q^(i/2))."""
    by_degree = {i: [1] for i in range(len(betti)) if i % 2 == parity}
    for f, mult, roots in reciprocal_root_factors(P):
        weights = 2 * np.log(np.abs(roots)) / math.log(q)
        i = int(round(float(weights[0])))
        rel = np.abs(np.abs(roots) - q ** (i / 2)) / q ** (i / 2)
        if i not in by_degree or np.max(rel) > tol:
            raise WeilBoundViolated(
                f"factor {f} has reciprocal roots of absolute value {np.abs(roots)}, "
                f"not a power q^(i/2) with i of parity {parity}")
        for _ in range(mult):
            by_degree[i] = _int_poly_mul(by_degree[i], f)
    for i, Pi in by_degree.items():
        if len(Pi) - 1 != betti[i]:
            raise WeilBoundViolated(f"degree-{i} factor has degree {len(Pi) - 1}, expected b_{i} = {betti[i]}")
    return by_degree


def counts_needed(betti: Sequence[int]) -> int:
    """Number of free zeta coefficients once duality is imposed (at most sum(b)/2)."""
    d = (len(betti) - 1) // 2
    B_rest = sum(betti[0::2]) - (2 if d else 1)
    return sum(betti[1::2]) // 2 + B_rest // 2


def zeta_from_counts(counts: PointCounts, betti: Sequence[int], tol=None) -> ZetaRational:
    """Reconstruct Z(X, t) from N_1..N_M and the Betti numbers.

    The odd part N(t) = prod_{i odd} P_i and the even part D(t) = (1-t)(1-q^d t) D'(t)
    are solved for jointly from Z(t) D(t) = N(t) mod t^(M+1), with the duality
    symmetry of both imposed so that about (sum b_i)/2 counts suffice.  The sign
    of the odd symmetry is +1 (alternating Poincare pairing); both signs are tried
    for D'.  Surplus counts must be reproduced exactly.
    """
    tol = tol or DEFAULT_TOLERANCES.weil
    betti = [int(b) for b in betti]
    if len(betti) % 2 == 0 or betti != betti[::-1] or betti[0] != 1:
        raise ValueError(f"Betti numbers {betti} are not those of a smooth proper variety")
    q = counts.q
    d = (len(betti) - 1) // 2
    M = len(counts.counts)
    B_od = sum(betti[1::2])
    B_ev = sum(betti[0::2])
    known = [1, -1] if d == 0 else _int_poly_mul([1, -1], [1, -q ** d])
    B_rest = B_ev - len(known) + 1
    unknowns = counts_needed(betti)
    if M < unknowns:
        raise InsufficientCounts(f"{M} counts given, {unknowns} needed for Betti numbers {betti}")

    series = [sympy.Rational(z.numerator, z.denominator) for z in _zeta_series(counts.counts, M)]
    xs = sympy.symbols(f"n1:{B_od // 2 + 1}")
    ys = sympy.symbols(f"e1:{B_rest // 2 + 1}")

    candidates, failures = [], []
    for eps in (1, -1) if B_rest > 0 else (1,):
        N, extra_n = _symmetric_poly(B_od, d, q, 1, xs)
        Dp, extra_d = _symmetric_poly(B_rest, d, q, eps, ys)
        D = [sympy.expand(sum(known[i] * Dp[k - i] for i in range(len(known)) if 0 <= k - i <= B_rest))
             for k in range(B_ev + 1)]
        eqs = list(extra_n) + list(extra_d)
        for k in range(1, M + 1):
            lhs = N[k] if k <= B_od else 0
            rhs = sum(series[k - j] * D[j] for j in range(min(k, B_ev) + 1))
            eqs.append(sympy.expand(lhs - rhs))
        unknown_syms = list(xs) + list(ys)
        if unknown_syms:
            sol = sympy.linsolve(eqs, unknown_syms)
            if sol == sympy.EmptySet:
                failures.append(("inconsistent", eps))
                continue
            (values,) = list(sol)
            if any(v.free_symbols for v in values):
                failures.append(("underdetermined", eps))
                continue
            subs = dict(zip(unknown_syms, values))
        else:
            if any(sympy.simplify(e) != 0 for e in eqs):
                failures.append(("inconsistent", eps))
                continue
            subs = {}
        Nv = [sympy.nsimplify(c).subs(subs) for c in N]
        Dv = [sympy.nsimplify(c).subs(subs) for c in D]
        if not all(c.is_integer for c in Nv + Dv):
            failures.append(("nonintegral", eps))
            continue
        Nv, Dv = [int(c) for c in Nv], [int(c) for c in Dv]
        try:
            odd = _split_by_weight(Nv, 1, betti, q, tol)
            even = _split_by_weight(Dv, 0, betti, q, tol)
        except WeilBoundViolated as exc:
            failures.append(("weil", eps, str(exc)))
            continue
        polys = tuple(tuple(odd[i] if i % 2 else even[i]) for i in range(2 * d + 1))
        if polys not in [c.polys for c in candidates]:
            candidates.append(ZetaRational(q, d, polys))

    if len(candidates) == 1:
        Z = candidates[0]
        if counts_from_zeta(Z, M) != [int(c) for c in counts.counts]:  # pragma: no cover - guarded above
            raise SurplusCountMismatch("reconstructed zeta does not reproduce the counts")
        return Z
    if len(candidates) > 1:
        raise InsufficientCounts(f"{M} counts admit {len(candidates)} zeta functions; supply more")
    kinds = {f[0] for f in failures}
    if "underdetermined" in kinds:
        raise InsufficientCounts(f"{M} counts do not determine Z(X,t) for Betti numbers {betti}")
    if "nonintegral" in kinds:
        raise NonIntegerCoefficients("counts force non-integral zeta coefficients")
    if "weil" in kinds:
        raise WeilBoundViolated("; ".join(f[2] for f in failures if f[0] == "weil"))
    raise SurplusCountMismatch("counts are inconsistent with any zeta function of this shape")


def zeta_of(spec, M: int | None = None, limit: int = ENUMERATION_LIMIT) -> ZetaRational:
    """Point-count the spec and reconstruct its zeta function.

    By default one count more than strictly needed is used, so the
    reconstruction is checked against a surplus value.
    """
    betti = spec.betti()
    if M is None:
        M = len(spec.counts) if isinstance(spec, Custom) else counts_needed(betti) + 1
    return zeta_from_counts(point_counts(spec, M, limit), betti)


@dataclass
class FunctionalEquationReport:
    ok: bool
    violations: list = field(default_factory=list)


def functional_equation_check(Z: ZetaRational, tol: float = DEFAULT_TOLERANCES.weil) -> FunctionalEquationReport:
    """Check the reciprocal roots of P_i map onto those of P_(2d-i) under lambda -> q^d / lambda."""
    from ._roots import reciprocal_roots
    roots = [np.array(reciprocal_roots(P)) for P in Z.polys]
    violations = []
    top = 2 * Z.d
    for i in range(top + 1):
        a = roots[i]
        b = Z.q ** Z.d / roots[top - i] if len(roots[top - i]) else roots[top - i]
        if len(a) != len(b):
            violations.append((i, "betti asymmetry"))
            continue
        key = lambda z: (round(z.real, 6), round(z.imag, 6))
        a_sorted = sorted(a, key=key)
        b_sorted = sorted(b, key=key)
        for x, y in zip(a_sorted, b_sorted):
            if abs(x - y) > tol * max(1.0, abs(x)):
                violations.append((i, complex(x), complex(y)))
    return FunctionalEquationReport(not violations, violations)


# ---------------------------------------------------------------------------
# JSON spec files

def _parse_field(obj) -> FqField:
    try:
        p, r = int(obj["p"]), int(obj.get("r", 1))
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecParse(f"bad field descriptor {obj!r}") from exc
    return build_field(p, r, obj.get("modulus"))


def _parse_element(F: FqField, value):
    if isinstance(value, int):
        return F(value)
    # leading coefficient first, like the modulus
    return F(list(reversed(value)))


def spec_from_json(obj: dict):
    """Build a variety spec from its JSON form (see README for the schema)."""
    try:
        kind = obj["kind"]
    except (KeyError, TypeError) as exc:
        raise SpecParse("variety spec needs a 'kind'") from exc
    try:
        if kind == "projective_space":
            return ProjectiveSpace(int(obj["n"]), _parse_field(obj["base"]))
        if kind == "weierstrass":
            F = _parse_field(obj["base"])
            a = obj["a"]
            if len(a) != 5:
                raise SpecParse("weierstrass 'a' must list a1, a2, a3, a4, a6")
            return WeierstrassCurve(tuple(_parse_element(F, c) for c in a), F)
        if kind == "product":
            return Product(spec_from_json(obj["left"]), spec_from_json(obj["right"]))
        if kind == "custom":
            if "q" in obj:
                q = int(obj["q"])
            elif "base" in obj:
                q = _parse_field(obj["base"]).q
            else:
                raise SpecParse("custom spec needs 'q' or 'base'")
            return Custom(tuple(int(c) for c in obj["counts"]), tuple(int(b) for b in obj["betti"]), q)
    except KeyError as exc:
        raise SpecParse(f"{kind} spec is missing {exc}") from exc
    raise SpecParse(f"unknown variety kind {kind!r}")
