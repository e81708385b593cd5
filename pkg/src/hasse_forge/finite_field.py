"""Exact arithmetic in F_q = F_p[x]/(f) for a monic irreducible f of degree r.

Conventions: a field modulus is written leading coefficient first, matching the
JSON spec files (``[1, 1, 1]`` is x^2 + x + 1).  Element coefficients are stored
constant term first, so ``FqElement.coeffs[j]`` multiplies x^j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from sympy import isprime, primefactors

from .config import ENUMERATION_LIMIT
from .errors import (DegreeMismatch, DivisionByZero, FieldMismatch, NonPrime,
                     Reducible, TooLarge)

__all__ = ["FqField", "FqElement", "build_field", "arith", "frobenius_endo",
           "enumerate_elements", "embed_field", "is_irreducible"]


# ---------------------------------------------------------------------------
# polynomials over F_p as low-to-high coefficient lists (trailing zeros stripped)

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    """Remainder of a modulo f (f need not be monic, leading coeff invertible)."""
    a = _trim(x % p for x in a)
    f = _trim(f)
    inv = pow(f[-1], -1, p)
    df = len(f) - 1
    while len(a) - 1 >= df:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        a = _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(c % p for c in out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim((x - y) % p for x, y in zip(a, b))


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, e, f, p):
    result = [1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test; ``modulus`` is leading-coefficient first and monic."""
    f = _trim(reversed([c % p for c in modulus]))
    r = len(f) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p ** r, f, p), x, p):
        return False
    for ell in primefactors(r):
        h = _psub(_ppowmod(x, p ** (r // ell), f, p), x, p)
        if len(_pgcd(f, h, p)) > 1:
            return False
    return True


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FqField:
    p: int
    r: int
    modulus: tuple  # leading coefficient first, length r + 1
    _fold: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        # x^(r+k) mod f for k = 0..r-2, used to fold schoolbook products
        f = list(reversed(self.modulus))
        fold = []
        for k in range(max(self.r - 1, 0)):
            mono = [0] * (self.r + k) + [1]
            red = _pmod(mono, f, self.p)
            fold.append(tuple(red + [0] * (self.r - len(red))))
        object.__setattr__(self, "_fold", tuple(fold))

    @property
    def q(self) -> int:
        return self.p ** self.r

    @property
    def zero(self) -> FqElement:
        return FqElement(self, (0,) * self.r)

    @property
    def one(self) -> FqElement:
        return FqElement(self, (1,) + (0,) * (self.r - 1))

    @property
    def gen(self) -> FqElement:
        """The class of x (equal to -f(0) when r = 1)."""
        if self.r == 1:
            return self(-self.modulus[-1])
        return FqElement(self, (0, 1) + (0,) * (self.r - 2))

    def __call__(self, value) -> FqElement:
        if isinstance(value, FqElement):
            if value.field != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FqElement(self, (value % self.p,) + (0,) * (self.r - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.r:
            raise DegreeMismatch(f"{len(coeffs)} coefficients for a degree-{self.r} field")
        return FqElement(self, tuple(coeffs) + (0,) * (self.r - len(coeffs)))

    def from_index(self, i: int) -> FqElement:
        coeffs = []
        for _ in range(self.r):
            i, c = divmod(i, self.p)
            coeffs.append(c)
        return FqElement(self, tuple(coeffs))

    def random_element(self, rng) -> FqElement:
        return self.from_index(int(rng.integers(self.q)))

    def _mul_coeffs(self, a, b):
        p, r = self.p, self.r
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        out = prod[:r]
        for k, c in enumerate(prod[r:]):
            if c:
                for j, fj in enumerate(self._fold[k]):
                    out[j] += c * fj
        return tuple(c % p for c in out)

    def __repr__(self):
        return f"F_{self.q}(p={self.p}, modulus={list(self.modulus)})"

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r, "modulus": list(self.modulus)}


@dataclass(frozen=True)
class FqElement:
    field: FqField
    coeffs: tuple

    def _coerce(self, other):
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise FieldMismatch("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FqElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElement(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return FqElement(self.field, tuple(a * other % p for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FqElement(self.field, self.field._mul_coeffs(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> FqElement:
        if not any(self.coeffs):
            raise DivisionByZero("inverse of zero in a finite field")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if not any(self.coeffs):
            return self.field.one if e == 0 else self
        e %= self.field.q - 1
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == self.field(other).coeffs
        if isinstance(other, FqElement):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    @property
    def index(self) -> int:
        i = 0
        for c in reversed(self.coeffs):
            i = i * self.field.p + c
        return i

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
                terms.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(reversed(terms)) or "0"


def build_field(p: int, r: int, modulus: Sequence[int] | None = None) -> FqField:
    """Describe F_{p^r}.

    Without an explicit modulus the monic polynomials of degree r are scanned in
    lexicographic order of their (leading-first) coefficient lists and the first
    irreducible one is taken.
    """
    if p < 2 or not isprime(p):
        raise NonPrime(f"{p} is not prime")
    if r < 1:
        raise DegreeMismatch(f"extension degree must be positive, got {r}")
    if modulus is not None:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != r + 1:
            raise DegreeMismatch(f"modulus of length {len(mod)} does not define degree {r}")
        if mod[0] != 1:
            raise DegreeMismatch("modulus must be monic")
        if not is_irreducible(mod, p):
            raise Reducible(f"{list(mod)} is reducible over F_{p}")
        return FqField(p, r, mod)
    for tail in itertools.product(range(p), repeat=r):
        mod = (1,) + tail
        if is_irreducible(mod, p):
            return FqField(p, r, mod)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def arith(a: FqElement, b, op: str) -> FqElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


def frobenius_endo(a: FqElement) -> FqElement:
    """The absolute Frobenius x -> x^p."""
    return a ** a.field.p


def enumerate_elements(F: FqField, limit: int = ENUMERATION_LIMIT) -> Iterator[FqElement]:
    if F.q > limit:
        raise TooLarge(F.q, limit)
    for i in range(F.q):
        yield F.from_index(i)


def embed_field(small: FqField, big: FqField, limit: int = ENUMERATION_LIMIT):
    """Return a ring embedding small -> big (as a function) when r_small | r_big.

    The image of the generator is the first root of small's modulus met in the
    enumeration order of ``big``.
    """
    if small.p != big.p or big.r % small.r:
        raise FieldMismatch(f"{small!r} does not embed in {big!r}")
    if small.r == 1:
        return lambda a: big(a.coeffs[0])
    coeffs = list(reversed(small.modulus))
    theta = None
    for z in enumerate_elements(big, limit):
        acc = big.zero
        for c in reversed(coeffs):
            acc = acc * z + c
        if not acc:
            theta = z
            break
    powers = [big.one]
    for _ in range(small.r - 1):
        powers.append(powers[-1] * theta)

    def embed(a: FqElement) -> FqElement:
        out = big.zero
        for c, t in zip(a.coeffs, powers):
            if c:
                out = out + t * c
        return out

    return embed
