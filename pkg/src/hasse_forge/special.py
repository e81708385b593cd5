"""log Gamma and the Hurwitz zeta function for complex arguments.

Both use recurrence shifts into a region where an asymptotic expansion
(Stirling, Euler-Maclaurin) converges to double precision.  Shifted-off terms
use principal logarithms, which makes ``log_gamma`` the branch that is analytic
off the negative real axis.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

from sympy import bernoulli, factorial

from .errors import BadParameter, Pole

__all__ = ["log_gamma", "hurwitz_zeta", "hurwitz_zeta_deriv0", "bernoulli_poly"]

_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_STIRLING_TERMS = 12
_EM_TERMS = 40


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> float:
    return float(bernoulli(n)) if n != 1 else -0.5


@lru_cache(maxsize=None)
def _em_coeff(j: int) -> float:
    return float(bernoulli(2 * j) / factorial(2 * j))


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def log_gamma(z: complex) -> complex:
    """Principal-branch log Gamma(z)."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise Pole(f"log Gamma has a pole at {z}")
    shift = 0j
    n = max(0, int(math.ceil(20 - z.real)))
    for k in range(n):
        shift += cmath.log(z + k)
    z += n
    w = 1.0 / z
    w2 = w * w
    series = 0j
    wk = w
    for k in range(1, _STIRLING_TERMS + 1):
        series += _bernoulli(2 * k) / (2 * k * (2 * k - 1)) * wk
        wk *= w2
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + series - shift


def hurwitz_zeta(z: complex, a: complex) -> complex:
    """sum_{k>=0} (k+a)^(-z), analytically continued in z.

    ``(k+a)^(-z)`` uses the principal argument; for Re(a) <= 0 the terms with
    Re(k+a) <= 0 are summed explicitly before the Euler-Maclaurin tail.
    """
    z, a = complex(z), complex(a)
    if z == 1:
        raise Pole("Hurwitz zeta has a pole at z = 1")
    if _is_nonpositive_integer(a):
        raise BadParameter(f"Hurwitz zeta undefined at a = {a}")
    head = 0j
    while a.real <= 0:
        head += cmath.exp(-z * cmath.log(a))
        a += 1
    # N explicit terms so that |N + a| exceeds |z| + 10; the Bernoulli tail then
    # decays like (|z| / 2 pi |N + a|)^(2j).  At z = -n it terminates, so N = 0.
    target = abs(z) + 10.0
    N = 0
    if abs(a) < target and not _is_nonpositive_integer(z):
        N = int(math.ceil(math.sqrt(max(target ** 2 - a.imag ** 2, 0.0)) - a.real)) + 1
        N = max(N, 0)
    for k in range(N):
        head += cmath.exp(-z * cmath.log(k + a))
    x = a + N
    logx = cmath.log(x)
    tail = cmath.exp((1 - z) * logx) / (z - 1) + 0.5 * cmath.exp(-z * logx)
    rising = z                       # z (z+1) ... (z+2j-2)
    xpow = cmath.exp(-(z + 1) * logx)
    inv_x2 = 1.0 / (x * x)
    for j in range(1, _EM_TERMS + 1):
        term = _em_coeff(j) * rising * xpow
        tail += term
        if term == 0 or abs(term) < 1e-17 * abs(tail):
            break
        rising *= (z + 2 * j - 1) * (z + 2 * j)
        xpow *= inv_x2
    return head + tail


def hurwitz_zeta_deriv0(a: complex) -> complex:
    """d/dz zeta_H(z, a) at z = 0, by Lerch's formula log Gamma(a) - log(2 pi)/2."""
    a = complex(a)
    if _is_nonpositive_integer(a):
        raise BadParameter(f"Hurwitz zeta undefined at a = {a}")
    head = 0j
    while a.real <= 0:
        head -= cmath.log(a)
        a += 1
    return head + log_gamma(a) - _HALF_LOG_2PI


def bernoulli_poly(n: int, x: complex) -> complex:
    """B_n(x) = sum_k C(n, k) B_k x^(n-k) with B_1 = -1/2."""
    return sum(math.comb(n, k) * _bernoulli(k) * x ** (n - k) for k in range(n + 1))
