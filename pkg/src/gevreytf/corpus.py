"""Deterministic test signals with known regularity ground truth.

Grids are centered: sample j sits at t = (j - n//2) dt, so t = 0 is always
on the grid. No generator consumes randomness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .associated import envelope
from .sequences import GevreyParams
from .stft import SampledSignal
from .windows import make_gevrey_bump

__all__ = ["SignalSpec", "generate"]

_KINDS = (
    "gaussian",
    "heaviside",
    "abs_t",
    "sawtooth",
    "sine",
    "bump",
    "envelope_synth",
    "two_step",
)


@dataclass(frozen=True)
class SignalSpec:
    kind: str
    dt: float
    n: int
    params: GevreyParams | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"signal kind must be one of {_KINDS}, got {self.kind!r}")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ValueError("dt must be positive and finite")
        n = self.n
        if n < 256 or (n & (n - 1)) != 0:
            raise ValueError("n must be a power of two >= 256")
        if self.kind in ("envelope_synth", "bump") and self.params is None:
            object.__setattr__(self, "params", GevreyParams(1.0, 1.5))


def _envelope_synth(spec: SignalSpec) -> np.ndarray:
    """Real even signal whose spectrum at the FFT bins is e^(-T(|xi|)) exactly.

    Zero-phase spectrum, inverse FFT, then a roll so the peak lands at the
    grid center. With the absolute-phase transform convention the forward
    FFT of the result reproduces the spectrum bin by bin.
    """
    xi = np.fft.fftfreq(spec.n, spec.dt)
    spectrum = envelope(spec.params, np.abs(xi))
    f = np.fft.ifft(spectrum).real / spec.dt
    return np.roll(f, spec.n // 2)


def generate(spec: SignalSpec) -> SampledSignal:
    """Build the sampled signal for a spec; byte-deterministic."""
    n, dt = spec.n, spec.dt
    t = (np.arange(n) - n // 2) * dt
    k = spec.kind
    if k == "gaussian":
        with np.errstate(under="ignore"):
            y = 2.0**0.25 * np.exp(-np.pi * t * t)
    elif k == "heaviside":
        y = np.where(t >= 0, 1.0, 0.0)
    elif k == "abs_t":
        y = np.abs(t)
    elif k == "sawtooth":
        y = np.mod(t, 1.0) - 0.5  # unit period, jumps at integer t
    elif k == "sine":
        y = np.sin(2.0 * np.pi * t)
    elif k == "bump":
        radius = n * dt / 8.0
        w = make_gevrey_bump(spec.params, radius, dt)
        y = np.zeros(n)
        m = w.samples.size
        start = n // 2 - m // 2
        y[start : start + m] = w.samples
    elif k == "envelope_synth":
        y = _envelope_synth(spec)
    elif k == "two_step":
        y = np.where(np.abs(t) <= 1.0, 1.0, 0.0)  # jumps at t = -1 and t = 1
    else:  # pragma: no cover - kinds validated in SignalSpec
        raise ValueError(f"unhandled kind {k!r}")
    return SampledSignal(samples=y, dt=dt, t0=float(t[0]))
