"""
Two-parameter weight sequences M_p = p^(tau * p^sigma) and their structure.

Everything is done with ln M_p = tau * p^sigma * ln p (ln M_0 = ln M_1 = 0):
the sequences overflow float64 around p = 25 already, while the log-domain
values stay well inside range for p up to 1e6, sigma <= 3, tau <= 10.

The checks cover the three properties that make the scale usable:

* log-convexity, (M_p)^2 <= M_{p-1} M_{p+1};
* a product bound M_{p+q} <= C^(p^sigma + q^sigma) * M'_p * M'_q where M'
  is the same sequence at tau * 2^(sigma-1) (the fitted ln C is reported);
* a ratio bound M_{p-1}/M_p <= (2p)^(-tau (p-1)^(sigma-1)) whose right-hand
  sides sum to a convergent series (non-quasianalyticity).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GevreyParams",
    "PropertyReport",
    "log_m",
    "check_m1_logconvex",
    "check_m2bar",
    "check_m3prime",
]


@dataclass(frozen=True)
class GevreyParams:
    """Scale parameters: tau > 0, sigma >= 1, geometric factor h > 0."""

    tau: float
    sigma: float
    h: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.tau) and self.tau > 0):
            raise ValueError(f"tau must be positive and finite, got {self.tau}")
        if not (np.isfinite(self.sigma) and self.sigma >= 1):
            raise ValueError(f"sigma must be >= 1, got {self.sigma}")
        if not (np.isfinite(self.h) and self.h > 0):
            raise ValueError(f"h must be positive and finite, got {self.h}")

    def widened(self) -> "GevreyParams":
        """Parameters with tau -> tau * 2^(sigma-1) (the product-bound slack)."""
        return GevreyParams(self.tau * 2.0 ** (self.sigma - 1.0), self.sigma, self.h)


@dataclass
class PropertyReport:
    """Outcome of one structural scan, JSON-serializable."""

    property: str
    params: dict
    scanned_range: dict
    fitted_constant: float | None = None
    violations: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        d = {
            "property": self.property,
            "params": self.params,
            "scanned_range": self.scanned_range,
            "fitted_constant": self.fitted_constant,
            "violations": self.violations,
        }
        d.update(self.extra)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def log_m(params: GevreyParams, p):
    """ln M_p = tau * p^sigma * ln p, with the p in {0, 1} values exactly 0.

    `p` may be a nonnegative integer or an array of them.
    """
    arr = np.asarray(p)
    if not np.issubdtype(arr.dtype, np.number):
        raise ValueError("log_m: p must be numeric")
    if (arr < 0).any() or not np.equal(np.mod(arr, 1), 0).all():
        raise ValueError("log_m: p must be a nonnegative integer")
    pf = arr.astype(float)
    safe = np.maximum(pf, 1.0)  # ln(0) guard; those entries are zeroed below
    out = params.tau * safe**params.sigma * np.log(safe)
    if arr.ndim == 0:
        return float(out)
    return out


def check_m1_logconvex(params: GevreyParams, p_max: int) -> PropertyReport:
    """Scan 2 ln M_p <= ln M_{p-1} + ln M_{p+1} for 1 <= p <= p_max."""
    if p_max < 1:
        raise ValueError("check_m1_logconvex: p_max must be >= 1")
    p = np.arange(0, p_max + 2)
    lm = log_m(params, p)
    lhs = 2.0 * lm[1:-1]
    rhs = lm[:-2] + lm[2:]
    bad = np.nonzero(lhs > rhs)[0]
    violations = [
        {"p": int(i + 1), "lhs": float(lhs[i]), "rhs": float(rhs[i])} for i in bad
    ]
    return PropertyReport(
        property="log-convexity",
        params={"tau": params.tau, "sigma": params.sigma},
        scanned_range={"p_min": 1, "p_max": int(p_max)},
        violations=violations,
    )


def check_m2bar(params: GevreyParams, p_max: int, q_max: int) -> PropertyReport:
    """Fit the product-bound constant over the rectangle [1, p_max] x [1, q_max].

    Reports ln C = sup [ln M_{p+q} - ln M'_p - ln M'_q] / (p^sigma + q^sigma)
    with M' the tau * 2^(sigma-1) sequence. Finiteness of the sup is the
    property; no violation list applies.
    """
    if p_max < 1 or q_max < 1:
        raise ValueError("check_m2bar: p_max and q_max must be >= 1")
    wide = params.widened()
    p = np.arange(1, p_max + 1)
    q = np.arange(1, q_max + 1)
    lm_wide_p = log_m(wide, p)
    lm_wide_q = log_m(wide, q)
    lm_sum = log_m(params, p[:, None] + q[None, :])
    numer = lm_sum - lm_wide_p[:, None] - lm_wide_q[None, :]
    denom = p[:, None].astype(float) ** params.sigma + q[None, :].astype(float) ** params.sigma
    ratio = numer / denom
    i, j = np.unravel_index(int(np.argmax(ratio)), ratio.shape)
    ln_c = float(ratio[i, j])
    return PropertyReport(
        property="product-bound",
        params={"tau": params.tau, "sigma": params.sigma},
        scanned_range={"p_max": int(p_max), "q_max": int(q_max)},
        fitted_constant=ln_c,
        extra={"argmax": {"p": int(p[i]), "q": int(q[j])}, "constant_is_log": True},
    )


def check_m3prime(params: GevreyParams, p_max: int) -> PropertyReport:
    """Scan M_{p-1}/M_p <= (2p)^(-tau (p-1)^(sigma-1)) for 2 <= p <= p_max.

    Also reports the partial sum of the actual ratios and whether the tail
    increment has dropped below 1e-15 (series convergence evidence). The
    quasianalytic range sigma = 1, tau <= 1 is rejected: there the ratios
    are not summable and the scale contains no nontrivial compactly
    supported functions.
    """
    if params.sigma == 1.0 and params.tau <= 1.0:
        raise ValueError(
            "check_m3prime: sigma = 1 with tau <= 1 is quasianalytic; the ratio "
            "series diverges there"
        )
    if p_max < 2:
        raise ValueError("check_m3prime: p_max must be >= 2")
    p = np.arange(2, p_max + 1)
    lm = log_m(params, np.arange(0, p_max + 1))
    log_ratio = lm[p - 1] - lm[p]  # ln(M_{p-1}/M_p)
    log_bound = -params.tau * (p - 1.0) ** (params.sigma - 1.0) * np.log(2.0 * p)
    bad = np.nonzero(log_ratio > log_bound)[0]
    violations = [
        {"p": int(p[i]), "log_ratio": float(log_ratio[i]), "log_bound": float(log_bound[i])}
        for i in bad
    ]
    with np.errstate(under="ignore"):
        ratios = np.exp(log_ratio)
    tail = float(ratios[-1])
    return PropertyReport(
        property="ratio-bound",
        params={"tau": params.tau, "sigma": params.sigma},
        scanned_range={"p_min": 2, "p_max": int(p_max)},
        violations=violations,
        extra={
            "partial_sum": float(ratios.sum()),
            "tail_increment": tail,
            "converged": bool(tail < 1e-15),
        },
    )
