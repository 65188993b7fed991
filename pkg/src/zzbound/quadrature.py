"""Deterministic adaptive Simpson quadrature.

All open subintervals of one refinement level are evaluated in a single
vectorized call, so the integrand must accept numpy arrays. Accepted panels
carry the Richardson-corrected value S2 + (S2 - S1)/15.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np


class ConvergenceError(RuntimeError):
    """Raised when the refinement budget is exhausted before the tolerance is met."""


def adaptive_simpson(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-9,
    breakpoints: Sequence[float] = (),
    max_depth: int = 60,
    max_panels: int = 2_000_000,
    min_width: float | None = None,
) -> float:
    """Integrate f over [a, b] to absolute tolerance tol.

    breakpoints split the domain before refinement starts; use them at
    kinks of the integrand. Each initial piece gets an equal share of the
    tolerance, which is then halved at every bisection.

    Panels narrower than min_width (default (b - a) * 2**-40) are taken as
    roundoff-limited and accepted as they are, provided their summed error
    estimates stay below tol; otherwise ConvergenceError is raised.
    """
    if not b > a:
        raise ValueError("integration requires b > a")
    if not tol > 0.0:
        raise ValueError("tolerance must be positive")
    floor = (b - a) * 2.0**-40 if min_width is None else float(min_width)
    cuts = sorted({a, b, *(float(p) for p in breakpoints if a < p < b)})
    lo = np.array(cuts[:-1])
    hi = np.array(cuts[1:])

    mid = 0.5 * (lo + hi)
    f_lo, f_mid, f_hi = f(lo), f(mid), f(hi)
    whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi)
    eps = np.full(lo.shape, tol / lo.size)

    pieces = []
    evaluated = 0
    forced_error = 0.0
    for _depth in range(max_depth):
        if lo.size == 0:
            break
        left_mid = 0.5 * (lo + mid)
        right_mid = 0.5 * (mid + hi)
        f_lm = f(left_mid)
        f_rm = f(right_mid)
        evaluated += 2 * lo.size
        h = (hi - lo) / 12.0
        left = h * (f_lo + 4.0 * f_lm + f_mid)
        right = h * (f_mid + 4.0 * f_rm + f_hi)
        delta = left + right - whole
        done = np.abs(delta) <= 15.0 * eps
        tiny = ~done & ((hi - lo) < floor)
        if np.any(tiny):
            forced_error += float(np.sum(np.abs(delta[tiny]))) / 15.0
            if forced_error > tol:
                raise ConvergenceError(
                    f"adaptive quadrature stalled at panel width {floor:.3g}: "
                    f"roundoff-limited error {forced_error:.3g} exceeds tol={tol}"
                )
            done |= tiny
        if np.any(done):
            pieces.append(left[done] + right[done] + delta[done] / 15.0)
        keep = ~done
        if not np.any(keep):
            lo = lo[:0]
            break
        if 2 * np.count_nonzero(keep) + evaluated > max_panels:
            raise ConvergenceError(
                f"adaptive quadrature exceeded {max_panels} evaluations without meeting tol={tol}"
            )
        # split every unfinished panel in two
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        f_lo, f_mid, f_hi = f_lo[keep], f_mid[keep], f_hi[keep]
        f_lm, f_rm = f_lm[keep], f_rm[keep]
        left, right, eps = left[keep], right[keep], eps[keep] / 2.0
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        lo = np.concatenate([lo, mid])
        hi = np.concatenate([mid, hi])
        new_mid = np.concatenate([lm, rm])
        f_lo, f_hi = np.concatenate([f_lo, f_mid]), np.concatenate([f_mid, f_hi])
        f_mid = np.concatenate([f_lm, f_rm])
        whole = np.concatenate([left, right])
        eps = np.concatenate([eps, eps])
        mid = new_mid
    else:
        raise ConvergenceError(f"adaptive quadrature hit max depth {max_depth} at tol={tol}")
    if lo.size:
        raise ConvergenceError(f"adaptive quadrature hit max depth {max_depth} at tol={tol}")
    # sorted summation keeps the result independent of panel bookkeeping order
    values = np.sort(np.concatenate(pieces)) if pieces else np.zeros(1)
    return math.fsum(values.tolist())
