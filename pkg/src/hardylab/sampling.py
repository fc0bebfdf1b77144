"""Band-limited signals: cardinal-series sampling and reconstruction.

A finite-energy signal whose spectrum lives in [-pi, pi] is determined
by its values at the integers, and is rebuilt from them by the cardinal
series sum_n f(n) sinc(t - n).  The translated sinc kernels form an
orthonormal basis, so truncating the series loses exactly the energy of
the discarded samples; the reconstruction error admits a certified
Cauchy-Schwarz bound.  The band limit and unit sampling rate are fixed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SampleSet",
    "sinc",
    "reconstruct",
    "reconstruct_with_bound",
    "sample_energy",
    "orthonormality_check",
]


def sinc(t):
    """Normalized kernel sin(pi t) / (pi t), with value 1 at 0."""
    return np.sinc(t)


class SampleSet:
    """Complex samples a_n on the contiguous integer window
    [start, start + len)."""

    __slots__ = ("start", "values")

    def __init__(self, values, start: int):
        vals = np.atleast_1d(np.asarray(values, dtype=complex))
        if vals.ndim != 1:
            raise ValueError("sample values must be one-dimensional")
        object.__setattr__(self, "start", int(start))
        object.__setattr__(self, "values", vals.copy())
        self.values.flags.writeable = False

    def __setattr__(self, name, value):
        raise AttributeError("SampleSet is immutable")

    @classmethod
    def symmetric(cls, values) -> "SampleSet":
        """Samples on [-M, M]; the window length must be odd."""
        vals = np.atleast_1d(np.asarray(values, dtype=complex))
        if vals.size % 2 == 0:
            raise ValueError("symmetric window needs an odd number of samples")
        return cls(vals, start=-(vals.size // 2))

    @classmethod
    def from_function(cls, f, lo: int, hi: int) -> "SampleSet":
        """Sample a callable at the integers lo..hi inclusive."""
        ns = np.arange(lo, hi + 1)
        return cls(np.asarray([f(float(n)) for n in ns], dtype=complex), start=lo)

    def indices(self) -> np.ndarray:
        return np.arange(self.start, self.start + self.values.size)

    def to_dict(self) -> dict:
        return {
            "start": int(self.start),
            "re": self.values.real.tolist(),
            "im": self.values.imag.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SampleSet":
        re = np.asarray(d["re"], dtype=float)
        im = np.asarray(d["im"], dtype=float)
        return cls(re + 1j * im, start=int(d["start"]))


def reconstruct(s: SampleSet, t: float) -> complex:
    """Truncated cardinal series sum_n a_n sinc(t - n) over the window.

    At an integer inside the window every other summand vanishes, so the
    stored sample is returned exactly.
    """
    t = float(t)
    if t == round(t):
        k = int(round(t)) - s.start
        if 0 <= k < s.values.size:
            return complex(s.values[k])
        return 0j
    return complex(np.sum(s.values * np.sinc(t - s.indices())))


def reconstruct_with_bound(s: SampleSet, t: float, tail_energy: float):
    """Reconstruction together with a certified truncation bound.

    If ``tail_energy`` dominates the energy of the samples outside the
    window, the truncation error is at most
    sqrt(tail_energy) * sqrt(1 - sum over the window of sinc^2(t - n)),
    by Cauchy-Schwarz and the fact that the translated kernels carry
    total weight one at every t.
    """
    value = reconstruct(s, t)
    window_weight = float(np.sum(np.sinc(float(t) - s.indices()) ** 2))
    bound = float(np.sqrt(max(tail_energy, 0.0)) * np.sqrt(max(0.0, 1.0 - window_weight)))
    return value, bound


def sample_energy(s: SampleSet) -> float:
    """Energy sum |a_n|^2 over the stored window."""
    return float(np.sum(np.abs(s.values) ** 2))


def orthonormality_check(n: int, m: int, half_width: float = 200.0, step: float = 1e-2) -> float:
    """Quadrature of the kernel inner product
    integral of sinc(t - n) sinc(t - m) dt, which is 1 if n = m else 0.

    Trapezoid rule on [-half_width, half_width]; the truncation error
    decays like 1 / half_width.
    """
    t = np.arange(-half_width, half_width + step / 2, step)
    vals = np.sinc(t - n) * np.sinc(t - m)
    return float(np.trapezoid(vals, dx=step))
