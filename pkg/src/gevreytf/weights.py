"""Weight functions for weighted sup norms and mixed-norm quadrature.

Three families: the trivial weight, polynomial brackets <x>^t <xi>^s with
<x> = sqrt(1 + x^2), and radial exponentials e^(s ||(x, xi)||).  All are
strictly positive, which downstream code relies on when dividing by them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["WeightSpec"]

_KINDS = ("unweighted", "polynomial", "exponential")


@dataclass(frozen=True)
class WeightSpec:
    kind: str = "unweighted"
    t_exp: float = 0.0
    s_exp: float = 0.0
    s: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"weight kind must be one of {_KINDS}, got {self.kind!r}")
        for name in ("t_exp", "s_exp", "s"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"weight parameter {name} must be finite")

    @classmethod
    def unweighted(cls) -> "WeightSpec":
        return cls("unweighted")

    @classmethod
    def polynomial(cls, t_exp: float, s_exp: float) -> "WeightSpec":
        return cls("polynomial", t_exp=t_exp, s_exp=s_exp)

    @classmethod
    def exponential(cls, s: float) -> "WeightSpec":
        return cls("exponential", s=s)

    def eval_t(self, t):
        """Time-side weight v(t): bracket power or one-variable exponential."""
        t = np.asarray(t, dtype=float)
        if self.kind == "unweighted":
            out = np.ones_like(t)
        elif self.kind == "polynomial":
            out = (1.0 + t * t) ** (0.5 * self.t_exp)
        else:
            out = np.exp(self.s * np.abs(t))
        return float(out) if out.ndim == 0 else out

    def eval_xy(self, x, xi):
        """Phase-space weight m(x, xi); broadcasts over array arguments."""
        x = np.asarray(x, dtype=float)
        xi = np.asarray(xi, dtype=float)
        if self.kind == "unweighted":
            out = np.ones(np.broadcast(x, xi).shape)
        elif self.kind == "polynomial":
            out = (1.0 + x * x) ** (0.5 * self.t_exp) * (1.0 + xi * xi) ** (0.5 * self.s_exp)
        else:
            out = np.exp(self.s * np.hypot(x, xi))
        return float(out) if out.ndim == 0 else out
