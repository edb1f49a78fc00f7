"""
Principal branch of the Lambert W function on [0, inf).

W(x) is defined by W(x) * exp(W(x)) = x. Only the principal branch on the
nonnegative axis is provided; that is the regime needed by the asymptotic
bounds for the associated function, whose arguments are of the form
C * ln k with C > 0 and k > e.

The solver is a Halley iteration (Corless et al., "On the Lambert W
function", Adv. Comput. Math. 5, 1996, eq. 5.9) started from a truncated
Maclaurin series near the origin and from the midpoint of the elementary
bracket

    ln x - ln ln x  <=  W(x)  <=  ln x - (1/2) ln ln x      (x >= e)

for large arguments. Both endpoints coincide with W at x = e and the
bracket is strict for x > e.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["LambertEval", "ConvergenceError", "lambert_w0", "lambert_bracket", "lambert_eval"]

_MAX_ITER = 50
# |w e^w - x| <= RESIDUAL_RTOL * max(1, x) is the advertised contract.
_RESIDUAL_RTOL = 1e-12


class ConvergenceError(RuntimeError):
    """Halley iteration failed to meet the residual contract within the cap."""


@dataclass(frozen=True)
class LambertEval:
    """One W evaluation with its backward error."""

    x: float
    w: float
    residual: float  # |w e^w - x|


def _initial_guess(x: np.ndarray) -> np.ndarray:
    w = np.empty_like(x)

    small = x < 0.367  # inside the series' radius of convergence 1/e
    xs = x[small]
    # W(x) = x - x^2 + (3/2)x^3 - (8/3)x^4 + O(x^5)
    w[small] = xs * (1.0 - xs * (1.0 - xs * (1.5 - (8.0 / 3.0) * xs)))

    large = x >= math.e
    xl = x[large]
    lx = np.log(xl)
    llx = np.log(lx)
    w[large] = lx - 0.75 * llx  # bracket midpoint

    mid = ~small & ~large
    w[mid] = np.log1p(x[mid])  # smooth start on the gap [0.367, e)

    return w


def _halley(x: np.ndarray) -> np.ndarray:
    w = _initial_guess(x)
    active = x > 0.0  # W(0) = 0 exactly; skip it
    w[~active] = 0.0

    for _ in range(_MAX_ITER):
        wa = w[active]
        xa = x[active]
        ew = np.exp(wa)
        f = wa * ew - xa
        wp1 = wa + 1.0
        # Halley step; the parenthesized term is f * f'' / (2 f').
        delta = f / (ew * wp1 - (wa + 2.0) * f / (2.0 * wp1))
        wa = wa - delta
        w[active] = wa
        still = np.abs(delta) > 2e-16 * (2.0 + np.abs(wa))
        if not still.any():
            break
        keep = np.zeros_like(active)
        keep[active] = still
        active = keep

    residual = np.abs(w * np.exp(w) - x)
    bad = residual > _RESIDUAL_RTOL * np.maximum(1.0, x)
    if bad.any():
        i = int(np.argmax(residual / np.maximum(1.0, x)))
        raise ConvergenceError(
            f"Lambert W residual {residual.flat[i]:.3e} at x={x.flat[i]:.6e} "
            f"exceeds {_RESIDUAL_RTOL:.0e} * max(1, x) after {_MAX_ITER} iterations"
        )
    return w


def lambert_w0(x):
    """Principal-branch W(x) for x >= 0.

    Accepts a scalar or ndarray; scalars return a float. Raises
    ValueError off the domain (negative, non-finite) and
    ConvergenceError if the residual contract cannot be met.
    """
    arr = np.asarray(x, dtype=float)
    if not np.isfinite(arr).all():
        raise ValueError("lambert_w0: argument must be finite")
    if (arr < 0.0).any():
        raise ValueError("lambert_w0: argument must be nonnegative (principal branch on [0, inf))")
    w = _halley(np.atleast_1d(arr).copy())
    if arr.ndim == 0:
        return float(w[0])
    return w.reshape(arr.shape)


def lambert_bracket(x):
    """Elementary two-sided bound (ln x - ln ln x, ln x - 0.5 ln ln x) for x >= e.

    Both bounds equal W(e) = 1 at x = e; for x > e the enclosure is strict.
    Raises ValueError for x < e.
    """
    arr = np.asarray(x, dtype=float)
    if not np.isfinite(arr).all():
        raise ValueError("lambert_bracket: argument must be finite")
    if (arr < math.e).any():
        raise ValueError("lambert_bracket: bound requires x >= e")
    lx = np.log(arr)
    llx = np.log(lx)
    lower = lx - llx
    upper = lx - 0.5 * llx
    if arr.ndim == 0:
        return float(lower), float(upper)
    return lower, upper


def lambert_eval(x: float) -> LambertEval:
    """Solve W at a single point and report the achieved residual."""
    w = lambert_w0(float(x))
    return LambertEval(x=float(x), w=w, residual=abs(w * math.exp(w) - float(x)))
