"""Special functions used by the state fidelities.

Polylogarithms of order 2 and 3 on the unit circle, the Clausen function,
Legendre polynomials, Bessel J0 and the zeta values zeta(2), zeta(3).
All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

TWO_PI = 2.0 * math.pi

# number of terms in the small-angle Clausen expansion; the ratio of
# consecutive terms is (theta / 2pi)^2 <= 1/4 on [0, pi]
_CLAUSEN_TERMS = 30
_BESSEL_SERIES_MAX = 12.0


@lru_cache(maxsize=None)
def bernoulli_numbers(nmax: int) -> tuple[Fraction, ...]:
    """Exact Bernoulli numbers B_0 .. B_nmax (convention B_1 = -1/2)."""
    b = [Fraction(1)]
    for m in range(1, nmax + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * b[k]
        b.append(-acc / (m + 1))
    return tuple(b)


@lru_cache(maxsize=None)
def _zeta3() -> float:
    # Euler-Maclaurin: sum_{n<N} n^-3 + integral + f(N)/2 - sum_k B_2k/(2k)! f^(2k-1)(N)
    N = 20
    head = math.fsum(1.0 / n**3 for n in range(1, N))
    tail = 1.0 / (2 * N**2) + 0.5 / N**3
    bern = bernoulli_numbers(16)
    for k in range(1, 9):
        m = 2 * k - 1
        # f^(m)(x) = (-1)^m (m+2)!/2 x^(-3-m)
        deriv = (-1) ** m * math.factorial(m + 2) / 2 / N ** (3 + m)
        tail -= float(bern[2 * k]) / math.factorial(2 * k) * deriv
    return head + tail


def zeta(s: int) -> float:
    """Riemann zeta at s = 2 (closed form) or s = 3 (cached accelerated sum)."""
    if s == 2:
        return math.pi**2 / 6.0
    if s == 3:
        return _zeta3()
    raise ValueError(f"unsupported order s={s}; only 2 and 3 are available")


@lru_cache(maxsize=None)
def _clausen_coefficients() -> np.ndarray:
    # Cl2(t) = t - t ln t + sum_n |B_2n| t^(2n+1) / (2 (2n)! n (2n+1))
    bern = bernoulli_numbers(2 * _CLAUSEN_TERMS)
    return np.array([
        float(abs(bern[2 * n]) / (2 * math.factorial(2 * n) * n * (2 * n + 1)))
        for n in range(1, _CLAUSEN_TERMS + 1)
    ])


def _check_angle(theta):
    theta = np.asarray(theta, dtype=float)
    if np.any(~np.isfinite(theta)) or np.any(theta < 0.0) or np.any(theta > TWO_PI):
        raise ValueError("angle out of range: theta must lie in [0, 2*pi]")
    return theta


def _fold(theta):
    """Map [0, 2pi] onto [0, pi]; returns the folded angle and the reflection sign."""
    reflected = theta > math.pi
    folded = np.where(reflected, TWO_PI - theta, theta)
    return folded, np.where(reflected, -1.0, 1.0)


def _odd_powers_sum(t, coeffs, offset):
    # sum_n coeffs[n-1] * t^(2n+offset), evaluated by Horner in t^2
    t2 = t * t
    acc = np.zeros_like(t)
    for c in coeffs[::-1]:
        acc = acc * t2 + c
    return acc * t ** (2 + offset)


def _cl2_folded(t):
    with np.errstate(divide="ignore", invalid="ignore"):
        log_part = np.where(t > 0.0, t - t * np.log(t), 0.0)
    return log_part + _odd_powers_sum(t, _clausen_coefficients(), 1)


def clausen2(theta):
    """Clausen function Cl2(theta) = Im Li2(e^{i theta}) = sum sin(n theta)/n^2."""
    theta = _check_angle(theta)
    t, sign = _fold(theta)
    out = sign * _cl2_folded(t)
    return out if out.ndim else float(out)


def _li3_real_folded(t):
    # Re Li3(e^{it}) = zeta(3) - int_0^t Cl2
    coeffs = _clausen_coefficients()
    integrated = coeffs / (2.0 * np.arange(1, len(coeffs) + 1) + 2.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_part = np.where(t > 0.0, 0.75 * t * t - 0.5 * t * t * np.log(t), 0.0)
    return zeta(3) - log_part - _odd_powers_sum(t, integrated, 2)


def polylog_unit_circle(s: int, theta):
    """Li_s(e^{i theta}) for s in {2, 3} and theta in [0, 2pi].

    The Bernoulli-polynomial parts are exact:

        Re Li2 = pi^2/6 - pi theta/2 + theta^2/4
        Im Li3 = pi^2 theta/6 - pi theta^2/4 + theta^3/12

    and the remaining parts use the small-angle Clausen expansion on [0, pi]
    with reflection about pi.
    """
    if s not in (2, 3):
        raise ValueError(f"unsupported order s={s}; only 2 and 3 are available")
    theta = _check_angle(theta)
    t, sign = _fold(theta)
    if s == 2:
        re = math.pi**2 / 6.0 - math.pi * theta / 2.0 + theta * theta / 4.0
        im = sign * _cl2_folded(t)
    else:
        re = _li3_real_folded(t)
        im = math.pi**2 * theta / 6.0 - math.pi * theta**2 / 4.0 + theta**3 / 12.0
    out = re + 1j * im
    return out if out.ndim else complex(out)


def legendre_p(n: int, x):
    """Legendre polynomial P_n(x) by the three-term recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    p_prev, p = np.ones_like(x), x.copy()
    if n == 0:
        out = p_prev
    else:
        for k in range(1, n):
            p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
        out = p
    return out if out.ndim else float(out)


def legendre_complement_sq(n: int, theta):
    """1 - P_n(cos theta)^2, accurate where P_n(cos theta)^2 is close to 1.

    The angle is folded to [0, pi/2] (P_n^2 is even about 0 and pi). With
    y = sin^2(t/2), 1 - P_n(1 - 2y) = -sum_k c_k y^k, c_k = (-n)_k (n+1)_k / k!^2,
    is summed directly while n(n+1) y <= 4 (terms stay below ~4, so less than
    one digit cancels); elsewhere P_n^2 is bounded away from 1.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    theta = np.asarray(theta, dtype=float)
    _check_angle(theta)
    t = np.minimum(theta, TWO_PI - theta)
    t = np.minimum(t, np.pi - t)
    y = np.sin(t / 2.0) ** 2
    small = n * (n + 1) * y <= 4.0
    ys = np.where(small, y, 0.0)
    term = np.ones_like(y)
    q = np.zeros_like(y)
    for k in range(1, min(n, 60) + 1):
        term = term * ((k - 1 - n) * (n + k) / (k * k)) * ys
        q = q - term
    pn = legendre_p(n, np.cos(t))
    out = np.where(small, q * (2.0 - q), 1.0 - pn * pn)
    out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)


def legendre_table(nmax: int, x) -> np.ndarray:
    """All of P_0 .. P_nmax at x, shape (nmax + 1,) + x.shape."""
    x = np.asarray(x, dtype=float)
    table = np.empty((nmax + 1,) + x.shape)
    table[0] = 1.0
    if nmax >= 1:
        table[1] = x
    for k in range(1, nmax):
        table[k + 1] = ((2 * k + 1) * x * table[k] - k * table[k - 1]) / (k + 1)
    return table


def _j0_series(x):
    q = -(x * x) / 4.0
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, 80):
        term = term * q / (k * k)
        total = total + term
        if np.all(np.abs(term) < 1e-18):
            break
    return total


def _j0_asymptotic(x):
    # Hankel expansion, truncated at the smallest term
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    last = np.full_like(x, np.inf)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, 120):
        term = term * (-((2 * k - 1) ** 2)) / (k * 8.0 * x)
        size = np.abs(term)
        active &= size < last
        if not np.any(active):
            break
        # a_k / x^k with alternating signs: even k feed P, odd k feed Q
        sgn = (-1) ** (k // 2)
        if k % 2 == 0:
            p = np.where(active, p + sgn * term, p)
        else:
            q = np.where(active, q + sgn * term, q)
        last = np.where(active, size, last)
    chi = x - math.pi / 4.0
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j0(x):
    """Bessel J0 for x >= 0: power series up to 12, Hankel asymptotics beyond."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise ValueError("bessel_j0 requires x >= 0")
    small = x <= _BESSEL_SERIES_MAX
    out = np.empty_like(x)
    if np.any(small):
        out[small] = _j0_series(x[small])
    if np.any(~small):
        out[~small] = _j0_asymptotic(x[~small])
    return out if out.ndim else float(out)
