"""p-typical Witt vectors of finite length over Z, Z/m and F_q.

Ring operations evaluate the universal sum/product polynomials S_m, M_m, which
are produced once per (p, n) by solving the ghost recursion over the integers
(each division by p^m is checked to be exact) and cached.  Polynomials are
sparse dicts ``{exponent tuple: int}``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from sympy import isprime

from .errors import (LengthTooShort, NonPrime, ShapeMismatch,
                     UnsupportedBaseRing, WrongBaseField)
from .finite_field import FqElement, FqField

__all__ = ["IntegerRing", "IntegersMod", "ZZ", "WittStructurePolys", "WittVector",
           "witt_structure_polys", "witt_add", "witt_mul", "ghost", "teichmuller",
           "frobenius_F", "verschiebung_V", "restrict_R", "wn_fp_iso", "xi_image",
           "phi_infty", "phi_infty_inverse", "witt_from_int", "ghost_poly"]


# ---------------------------------------------------------------------------
# sparse integer polynomials

def _padd(a, b, scale=1):
    out = dict(a)
    for k, v in b.items():
        c = out.get(k, 0) + scale * v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def _pmul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def _ppow(a, e, nvars):
    result = {(0,) * nvars: 1}
    base = a
    while e:
        if e & 1:
            result = _pmul(result, base)
        e >>= 1
        if e:
            base = _pmul(base, base)
    return result


def _var(i, nvars):
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): 1}


def _exact_div(a, d):
    out = {}
    for k, v in a.items():
        quo, rem = divmod(v, d)
        if rem:
            raise ArithmeticError(f"ghost recursion produced a non-integral coefficient {v}/{d}")
        out[k] = quo
    return out


def ghost_poly(p, m, offset, nvars):
    """w_m(Z) = sum_{i<=m} p^i Z_i^(p^(m-i)) in variables offset.."""
    out = {}
    for i in range(m + 1):
        e = [0] * nvars
        e[offset + i] = p ** (m - i)
        out[tuple(e)] = p ** i
    return out


def _solve_ghost(p, target, n, nvars):
    """Integer polynomials T_0..T_{n-1} with w_m(T) = target(m)."""
    polys = []
    for m in range(n):
        rest = target(m)
        for i, t in enumerate(polys):
            rest = _padd(rest, _ppow(t, p ** (m - i), nvars), scale=-p ** i)
        polys.append(_exact_div(rest, p ** m))
    return polys


@dataclass(frozen=True)
class WittStructurePolys:
    p: int
    n: int
    sum_polys: tuple   # S_m in variables X_0..X_{n-1}, Y_0..Y_{n-1}
    prod_polys: tuple  # M_m likewise

    def as_sympy(self):
        """Return (sums, products) as sympy expressions for display and checking."""
        import sympy
        X = sympy.symbols(f"X0:{self.n}")
        Y = sympy.symbols(f"Y0:{self.n}")
        gens = X + Y

        def conv(poly):
            return sympy.Add(*[c * sympy.Mul(*[g ** e for g, e in zip(gens, k)])
                               for k, c in poly.items()])

        return [conv(s) for s in self.sum_polys], [conv(m) for m in self.prod_polys]

    def ghost_compatible(self) -> bool:
        """Check w_m(S) = w_m(X)+w_m(Y) and w_m(M) = w_m(X)w_m(Y) as polynomial identities."""
        p, n, nv = self.p, self.n, 2 * self.n
        for m in range(n):
            wx, wy = ghost_poly(p, m, 0, nv), ghost_poly(p, m, n, nv)
            ws, wm = {}, {}
            for i in range(m + 1):
                ws = _padd(ws, _ppow(self.sum_polys[i], p ** (m - i), nv), scale=p ** i)
                wm = _padd(wm, _ppow(self.prod_polys[i], p ** (m - i), nv), scale=p ** i)
            if ws != _padd(wx, wy) or wm != _pmul(wx, wy):
                return False
        return True


def _check_prime(p):
    if not isprime(p):
        raise NonPrime(f"{p} is not prime")


@functools.lru_cache(maxsize=None)
def witt_structure_polys(p: int, n: int) -> WittStructurePolys:
    _check_prime(p)
    if n < 1:
        raise LengthTooShort("Witt length must be at least 1")
    nv = 2 * n
    sums = _solve_ghost(p, lambda m: _padd(ghost_poly(p, m, 0, nv), ghost_poly(p, m, n, nv)), n, nv)
    prods = _solve_ghost(p, lambda m: _pmul(ghost_poly(p, m, 0, nv), ghost_poly(p, m, n, nv)), n, nv)
    return WittStructurePolys(p, n, tuple(sums), tuple(prods))


@functools.lru_cache(maxsize=None)
def _frobenius_polys(p: int, n: int):
    """F_0..F_{n-2} in X_0..X_{n-1} with w_m(F(X)) = w_{m+1}(X)."""
    return tuple(_solve_ghost(p, lambda m: ghost_poly(p, m + 1, 0, n), n - 1, n))


# ---------------------------------------------------------------------------
# base rings

class IntegerRing:
    name = "Z"
    zero = 0
    one = 1

    def __call__(self, x):
        return int(x)

    def pow(self, x, e):
        return x ** e

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")

    def __repr__(self):
        return "Z"


ZZ = IntegerRing()


class IntegersMod:
    def __init__(self, m: int):
        if m < 2:
            raise ValueError("modulus must be at least 2")
        self.m = m
        self.zero = 0
        self.one = 1
        self.name = f"Z/{m}"

    def __call__(self, x):
        return int(x) % self.m

    def pow(self, x, e):
        return pow(x, e, self.m)

    def __eq__(self, other):
        return isinstance(other, IntegersMod) and other.m == self.m

    def __hash__(self):
        return hash(("Zmod", self.m))

    def __repr__(self):
        return self.name


class _FqRing:
    """Adapter giving an FqField the small ring interface used here."""

    def __init__(self, field: FqField):
        self.field = field
        self.zero = field.zero
        self.one = field.one
        self.name = f"F_{field.q}"

    def __call__(self, x):
        return self.field(x)

    def pow(self, x, e):
        return x ** e

    def __eq__(self, other):
        return isinstance(other, _FqRing) and other.field == self.field

    def __hash__(self):
        return hash(self.field)

    def __repr__(self):
        return self.name


def _as_ring(ring):
    if isinstance(ring, FqField):
        return _FqRing(ring)
    if ring is None:
        return ZZ
    return ring


def _evaluate(poly, values, ring):
    powers = {}
    total = ring.zero
    for k, c in poly.items():
        term = None
        for j, e in enumerate(k):
            if e:
                key = (j, e)
                if key not in powers:
                    powers[key] = ring.pow(values[j], e)
                term = powers[key] if term is None else term * powers[key]
        if term is None:
            term = ring.one
        total = total + term * c
    return ring(total)


# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WittVector:
    p: int
    components: tuple
    ring: object = ZZ

    def __post_init__(self):
        ring = _as_ring(self.ring)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "components", tuple(ring(c) for c in self.components))

    @property
    def n(self) -> int:
        return len(self.components)

    def _check(self, other):
        if not isinstance(other, WittVector):
            raise ShapeMismatch(f"expected a Witt vector, got {type(other).__name__}")
        if (other.p, other.n, other.ring) != (self.p, self.n, self.ring):
            raise ShapeMismatch(
                f"W_{self.n}({self.ring}) at p={self.p} vs W_{other.n}({other.ring}) at p={other.p}")

    def __add__(self, other):
        return witt_add(self, other)

    def __mul__(self, other):
        if isinstance(other, int):
            return witt_from_int(other, self.p, self.n, self.ring) * self
        return witt_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        # S_m = X_m + Y_m + (terms in lower variables), so solve S_m(a, b) = 0 for b_m
        polys = witt_structure_polys(self.p, self.n).sum_polys
        n = self.n
        b = [self.ring.zero] * n
        for m in range(n):
            vals = list(self.components) + b
            vals[m] = self.ring.zero
            vals[n + m] = self.ring.zero
            lower = _evaluate(polys[m], vals, self.ring)
            b[m] = self.ring(-self.components[m] - lower)
        return WittVector(self.p, tuple(b), self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, e: int):
        result = witt_from_int(1, self.p, self.n, self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, WittVector) and other.p == self.p
                and other.ring == self.ring and other.components == self.components)

    def __hash__(self):
        return hash((self.p, self.components))

    def __repr__(self):
        return f"W_{self.n}({self.ring}): ({', '.join(map(str, self.components))})"


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    a._check(b)
    polys = witt_structure_polys(a.p, a.n).sum_polys
    vals = a.components + b.components
    return WittVector(a.p, tuple(_evaluate(s, vals, a.ring) for s in polys), a.ring)


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    a._check(b)
    polys = witt_structure_polys(a.p, a.n).prod_polys
    vals = a.components + b.components
    return WittVector(a.p, tuple(_evaluate(m, vals, a.ring) for m in polys), a.ring)


def witt_from_int(k: int, p: int, n: int, ring=ZZ) -> WittVector:
    ring = _as_ring(ring)
    zero = WittVector(p, (ring.zero,) * n, ring)
    one = WittVector(p, (ring.one,) + (ring.zero,) * (n - 1), ring)
    if k < 0:
        return -witt_from_int(-k, p, n, ring)
    result, base = zero, one
    while k:
        if k & 1:
            result = result + base
        base = base + base
        k >>= 1
    return result


def ghost(a: WittVector) -> list:
    """Ghost coordinates (w_0(a), ..., w_{n-1}(a))."""
    ring = a.ring
    if isinstance(ring, _FqRing) or (isinstance(ring, IntegersMod) and gcd(ring.m, a.p) != 1):
        raise UnsupportedBaseRing(f"p={a.p} is a zero divisor in {ring}")
    return [_evaluate(ghost_poly(a.p, m, 0, a.n), a.components, ring) for m in range(a.n)]


def teichmuller(c, n: int, p: int | None = None, ring=None) -> WittVector:
    """[c] = (c, 0, ..., 0).  For F_q elements p and ring are inferred."""
    if isinstance(c, FqElement):
        ring = ring or c.field
        p = p or c.field.p
    ring = _as_ring(ring)
    if p is None:
        raise ValueError("p is required for non-F_q base values")
    return WittVector(p, (c,) + (ring.zero,) * (n - 1), ring)


def frobenius_F(a: WittVector) -> WittVector:
    if a.n < 2:
        raise LengthTooShort("Frobenius F needs length at least 2")
    polys = _frobenius_polys(a.p, a.n)
    return WittVector(a.p, tuple(_evaluate(f, a.components, a.ring) for f in polys), a.ring)


def verschiebung_V(a: WittVector) -> WittVector:
    return WittVector(a.p, (a.ring.zero,) + a.components, a.ring)


def restrict_R(a: WittVector) -> WittVector:
    if a.n < 2:
        raise LengthTooShort("restriction R needs length at least 2")
    return WittVector(a.p, a.components[:-1], a.ring)


def _prime_field_of(a: WittVector) -> FqField:
    if not isinstance(a.ring, _FqRing) or a.ring.field.r != 1:
        raise WrongBaseField(f"expected a Witt vector over a prime field, got {a.ring}")
    return a.ring.field


def wn_fp_iso(a: WittVector) -> int:
    """W_n(F_p) -> Z/p^n.

    Uses a = sum_i V^i[a_i] and V = p on W(F_p), so the image is
    sum_i p^i * teich(a_i), with teich(c) = c^(p^(n-1)) mod p^n the
    multiplicative lift.
    """
    F = _prime_field_of(a)
    p, n = F.p, a.n
    mod = p ** n
    total = 0
    for i, c in enumerate(a.components):
        total += p ** i * pow(c.coeffs[0], p ** (n - 1), mod)
    return total % mod


def xi_image(p: int, n: int, c: FqElement) -> WittVector:
    """1 + [c] + [c]^2 + ... + [c]^(p-1) in W_n(F_q)."""
    if c.field.p != p:
        raise WrongBaseField(f"element of characteristic {c.field.p}, expected {p}")
    t = teichmuller(c, n)
    term = witt_from_int(1, p, n, c.field)
    total = term
    for _ in range(p - 1):
        term = term * t
        total = total + term
    return total


def _phi_power(a: WittVector, k: int) -> WittVector:
    if not isinstance(a.ring, _FqRing):
        raise WrongBaseField(f"phi^infinity needs a perfect base field, got {a.ring}")
    F = a.ring.field
    e = pow(F.p, k % F.r)
    return WittVector(a.p, tuple(c ** e for c in a.components), a.ring)


def phi_infty(a: WittVector) -> WittVector:
    """Level-n component of phi^infinity: W_n(phi^n), each entry raised to p^n."""
    return _phi_power(a, a.n)


def phi_infty_inverse(a: WittVector) -> WittVector:
    """W_n(phi^-n); phi has order r on F_{p^r}."""
    return _phi_power(a, -a.n)
