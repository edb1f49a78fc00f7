"""
Extended associated function of the weight sequence p^(tau p^sigma).

    T(k) = sup_{p >= 0} ln_+ [ h^(p^sigma) k^p / M_p ]
         = max(0, sup_{p >= 1} f(p)),
    f(p) = p^sigma ln h + p ln k - tau p^sigma ln p,

computed exactly in the log domain. The discrete sup is found without a
dense scan: for fixed (tau, sigma, h, k) the continuous derivative

    f'(p) = ln k - g(p),    g(p) = p^(sigma-1) (tau sigma ln p + tau - sigma ln h)

has at most two sign changes, because g decreases to a single minimum at
ln p = ln h / tau - 1/sigma - 1/(sigma-1) and increases to infinity
afterwards. f is therefore decreasing/increasing/decreasing, and the
integer argmax lies in {1} union {floor(p_b), ceil(p_b)} with p_b the
unique down-crossing of f' on g's increasing branch. p_b is bisected in
ln p; an integer window around it plus a dense head is evaluated, widened
once to confirm the max is stable. This covers maximizers up to ~4.5e15
(beyond which consecutive integers stop being representable in float64 and
the evaluation refuses).

Also here: the sigma = 1 closed-form limit (tau/e) k^(1/tau), the
Lambert-W two-sided asymptotic exponents for sigma > 1, the simplified
leading-order shape ln^(sigma/(sigma-1)) k / ln^(1/(sigma-1)) ln k, and
the decay envelope exp(-T).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lambertw import lambert_w0
from .sequences import GevreyParams

__all__ = [
    "AssocEval",
    "AsymptoticBracket",
    "assoc_t",
    "assoc_t_grid",
    "assoc_t_gevrey_limit",
    "assoc_bracket",
    "assoc_simplified",
    "envelope",
]

_HEAD = 64  # dense integer head always evaluated
_WINDOW = 32  # integers kept on each side of the continuous crossing
_P_REPRESENTABLE = 2.0**52  # beyond this, p and p+1 may collide in float64
_BISECT_ITERS = 90


@dataclass(frozen=True)
class AssocEval:
    params: GevreyParams
    k: float
    value: float
    argmax_p: int
    truncation_p: int  # top of the integer range the evaluation covered


@dataclass(frozen=True)
class AsymptoticBracket:
    k: float
    lower_exponent: float
    upper_exponent: float
    c_tsh: float  # constant inside the Lambert-W argument


def _term(tau: float, sigma: float, lnh: float, lnk: float, p):
    """f(p) for float p >= 1, scalar or ndarray. Keep this expression in sync
    with any independent re-evaluation: the op order defines the float64 value."""
    ps = p**sigma
    return ps * lnh + p * lnk - tau * ps * np.log(p)


def _g(tau: float, sigma: float, lnh: float, p):
    """g(p) = p^(sigma-1) (tau sigma ln p + tau - sigma ln h)."""
    return p ** (sigma - 1.0) * (tau * sigma * np.log(p) + tau - sigma * lnh)


def _interior_crossing(tau: float, sigma: float, lnh: float, lnk: float) -> float | None:
    """ln p_b of the down-crossing of f', or None if f' <= 0 on [1, inf)."""
    if sigma == 1.0:
        # f'(p) = ln(hk) - tau (ln p + 1), strictly decreasing
        s = lnh + lnk - tau
        if s <= 0.0:
            return None
        return (lnh + lnk) / tau - 1.0
    # start on g's increasing branch
    lnp_g = lnh / tau - 1.0 / sigma - 1.0 / (sigma - 1.0)
    lnp_lo = max(0.0, lnp_g)
    if lnk - _g(tau, sigma, lnh, math.exp(lnp_lo)) <= 0.0:
        return None  # f' never positive past the dip; argmax at p = 1
    step = 1.0
    lnp_hi = lnp_lo + step
    while lnk - _g(tau, sigma, lnh, math.exp(lnp_hi)) > 0.0:
        if lnp_hi > 37.0:  # p ~ 1.2e16, past the representability guard
            return math.inf
        step *= 2.0
        lnp_hi = lnp_lo + step
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lnp_lo + lnp_hi)
        if lnk - _g(tau, sigma, lnh, math.exp(mid)) > 0.0:
            lnp_lo = mid
        else:
            lnp_hi = mid
    return 0.5 * (lnp_lo + lnp_hi)


def _candidate_max(tau, sigma, lnh, lnk, head_n, p_b, pad):
    """Exact max of f over {1..head_n} and an integer window of half-width
    `pad` around p_b. Returns (best value, argmax, top of covered range)."""
    cands = [np.arange(1.0, head_n + 1.0)]
    if p_b is not None:
        lo = max(1.0, math.floor(p_b) - pad)
        hi = math.ceil(p_b) + pad
        cands.append(np.arange(lo, hi + 1.0))
    p = np.unique(np.concatenate(cands))
    t = _term(tau, sigma, lnh, lnk, p)
    i = int(np.argmax(t))  # first index wins ties -> smallest p
    top = int(p[-1])
    return float(t[i]), int(p[i]), top


def assoc_t(params: GevreyParams, k: float) -> AssocEval:
    """Evaluate T(k) exactly, with the attaining integer and covered range.

    Raises ValueError for k <= 0 / non-finite, and when the maximizer would
    exceed float64 integer resolution (~4.5e15; only reachable for sigma
    near 1 with extremely large h^... k^(1/tau)).
    """
    k = float(k)
    if not math.isfinite(k) or k <= 0.0:
        raise ValueError(f"assoc_t: k must be positive and finite, got {k}")
    tau, sigma, lnh = params.tau, params.sigma, math.log(params.h)
    lnk = math.log(k)

    lnp_b = _interior_crossing(tau, sigma, lnh, lnk)
    if lnp_b is not None and (lnp_b == math.inf or lnp_b > math.log(_P_REPRESENTABLE)):
        raise ValueError(
            "assoc_t: discrete maximizer exceeds float64 integer resolution "
            f"for tau={tau}, sigma={sigma}, h={params.h}, k={k}"
        )
    p_b = None if lnp_b is None else math.exp(lnp_b)

    best, arg, _ = _candidate_max(tau, sigma, lnh, lnk, _HEAD, p_b, _WINDOW)
    # widen once and confirm stability of the discrete max
    head, pad = 2 * _HEAD, 2 * _WINDOW
    best2, arg2, top2 = _candidate_max(tau, sigma, lnh, lnk, head, p_b, pad)
    while best2 > best:  # mathematically unreachable; kept as a hard guard
        best, arg = best2, arg2
        head, pad = 2 * head, 2 * pad
        best2, arg2, top2 = _candidate_max(tau, sigma, lnh, lnk, head, p_b, pad)
    if best <= 0.0:
        return AssocEval(params=params, k=k, value=0.0, argmax_p=0, truncation_p=top2)
    return AssocEval(params=params, k=k, value=best, argmax_p=arg, truncation_p=top2)


def assoc_t_grid(params: GevreyParams, k_ascending) -> tuple[np.ndarray, np.ndarray]:
    """T(k) over a nondecreasing positive grid; returns (values, argmax array).

    Exploits that the integer argmax is nondecreasing in k (the log-term has
    strictly increasing differences in (p, ln k)): a dense head covers the
    region where f may dip before rising, and a single climbing pointer
    tracks the interior peak across the grid. Falls back to per-point
    evaluation when the interior peak would exceed 2^20.
    """
    k = np.asarray(k_ascending, dtype=float)
    if k.ndim != 1 or k.size == 0:
        raise ValueError("assoc_t_grid: need a 1-D nonempty grid")
    if not np.isfinite(k).all() or (k <= 0).any():
        raise ValueError("assoc_t_grid: grid must be positive and finite")
    if (np.diff(k) < 0).any():
        raise ValueError("assoc_t_grid: grid must be nondecreasing")

    tau, sigma, lnh = params.tau, params.sigma, math.log(params.h)
    if sigma > 1.0:
        lnp_g = lnh / tau - 1.0 / sigma - 1.0 / (sigma - 1.0)
        p_g = math.exp(max(0.0, min(lnp_g, 20.0)))
    else:
        p_g = 1.0
    top_eval = assoc_t(params, float(k[-1]))
    if top_eval.argmax_p > 2**20 or p_g > 2**18:
        vals = np.empty(k.size)
        args = np.empty(k.size, dtype=np.int64)
        for i, ki in enumerate(k):
            ev = assoc_t(params, float(ki))
            vals[i] = ev.value
            args[i] = ev.argmax_p
        return vals, args

    head_n = max(_HEAD, int(p_g) + 2)

    lnk = np.log(k)
    p_head = np.arange(1.0, head_n + 1.0)
    base = p_head**sigma * lnh - tau * p_head**sigma * np.log(p_head)
    head_vals = np.empty(k.size)
    head_args = np.empty(k.size, dtype=np.int64)
    chunk = max(1, 4_000_000 // head_n)
    for s in range(0, k.size, chunk):
        block = base[None, :] + lnk[s : s + chunk, None] * p_head[None, :]
        idx = np.argmax(block, axis=1)
        head_vals[s : s + chunk] = block[np.arange(block.shape[0]), idx]
        head_args[s : s + chunk] = idx + 1

    def term(p: float, lk: float) -> float:
        ps = p**sigma
        return ps * lnh + p * lk - tau * ps * math.log(p)

    vals = np.empty(k.size)
    args = np.empty(k.size, dtype=np.int64)
    p_cur = float(head_n)
    for i in range(k.size):
        lk = float(lnk[i])
        while term(p_cur + 1.0, lk) >= term(p_cur, lk):
            p_cur += 1.0
        interior = term(p_cur, lk)
        if head_vals[i] >= interior:  # smallest attaining p wins
            v, a = float(head_vals[i]), int(head_args[i])
        else:
            v, a = interior, int(p_cur)
        if v <= 0.0:
            vals[i], args[i] = 0.0, 0
        else:
            vals[i], args[i] = v, a
    return vals, args


def assoc_t_gevrey_limit(tau: float, k: float):
    """Continuous-relaxation value (tau/e) k^(1/tau) of the sigma = 1 sup."""
    if not (tau > 0 and math.isfinite(tau)):
        raise ValueError(f"assoc_t_gevrey_limit: tau must be positive, got {tau}")
    karr = np.asarray(k, dtype=float)
    if (karr <= 0).any() or not np.isfinite(karr).all():
        raise ValueError("assoc_t_gevrey_limit: k must be positive and finite")
    out = (tau / math.e) * karr ** (1.0 / tau)
    return float(out) if karr.ndim == 0 else out


def assoc_bracket(params: GevreyParams, k) -> AsymptoticBracket:
    """Two-sided Lambert-W exponents bracketing T(k) up to additive constants.

    Requires sigma > 1 and k > e. With s = sigma, the constant inside W is
    C = h^(-(s-1)/tau) e^((s-1)/s) (s-1)/(tau s), and

        lower = (2^(s-1) tau)^(-1/(s-1)) ((s-1)/s)^(s/(s-1)) W(C ln k)^(-1/(s-1)) ln^(s/(s-1)) k
        upper = ((s-1)/(tau s))^(1/(s-1))                    W(C ln k)^(-1/(s-1)) ln^(s/(s-1)) k

    For 1 < sigma < 2 the enclosure is two-sided up to constants depending
    only on (tau, sigma, h).
    """
    tau, s, h = params.tau, params.sigma, params.h
    if s <= 1.0:
        raise ValueError("assoc_bracket: requires sigma > 1")
    kf = float(k)
    if not (math.isfinite(kf) and kf > math.e):
        raise ValueError(f"assoc_bracket: requires k > e, got {k}")
    lnk = math.log(kf)
    c = h ** (-(s - 1.0) / tau) * math.exp((s - 1.0) / s) * (s - 1.0) / (tau * s)
    w = lambert_w0(c * lnk)
    shape = w ** (-1.0 / (s - 1.0)) * lnk ** (s / (s - 1.0))
    lower = (2.0 ** (s - 1.0) * tau) ** (-1.0 / (s - 1.0)) * ((s - 1.0) / s) ** (
        s / (s - 1.0)
    ) * shape
    upper = ((s - 1.0) / (tau * s)) ** (1.0 / (s - 1.0)) * shape
    return AsymptoticBracket(k=kf, lower_exponent=lower, upper_exponent=upper, c_tsh=c)


def assoc_simplified(sigma: float, k):
    """Leading-order shape ln^(sigma/(sigma-1)) k / ln^(1/(sigma-1)) ln k.

    The W factor contributes only iterated-log corrections; this is the
    envelope exponent's first-order growth. Requires sigma > 1 and k > e.
    """
    if sigma <= 1.0:
        raise ValueError("assoc_simplified: requires sigma > 1")
    karr = np.asarray(k, dtype=float)
    if (karr <= math.e).any() or not np.isfinite(karr).all():
        raise ValueError("assoc_simplified: requires k > e")
    lnk = np.log(karr)
    out = lnk ** (sigma / (sigma - 1.0)) / np.log(lnk) ** (1.0 / (sigma - 1.0))
    return float(out) if karr.ndim == 0 else out


def envelope(params: GevreyParams, xi_abs):
    """Decay envelope exp(-T(|xi|)); |xi| = 0 maps to 1 (T(0+) = 0)."""
    arr = np.asarray(xi_abs, dtype=float)
    if (arr < 0).any() or not np.isfinite(arr).all():
        raise ValueError("envelope: |xi| must be nonnegative and finite")
    flat = arr.reshape(-1)
    out = np.ones(flat.size)
    pos = flat > 0
    if pos.any():
        order = np.argsort(flat[pos], kind="stable")
        vals, _ = assoc_t_grid(params, flat[pos][order])
        unsorted = np.empty_like(vals)
        unsorted[order] = vals
        out[pos] = np.exp(-unsorted)
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)
