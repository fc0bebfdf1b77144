"""Finitely supported complex sequences and the systems they generate.

A signal is a map from the integers to the complex numbers with finite
support.  Convolution against a fixed kernel is the general form of a
linear, shift-invariant system, and the elementary stability bounds of
such systems are all expressed through the kernel's one-norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "Signal",
    "StabilityReport",
    "convolve",
    "shift",
    "lp_norm",
    "stability_report",
    "linf_extremal_witness",
]


class Signal:
    """Finitely supported sequence, stored densely from ``offset`` upward.

    Indices outside the stored range read as zero.  Leading and trailing
    zeros are trimmed on construction, so the first and last stored values
    are nonzero unless the signal is identically zero (which stores an
    empty array at offset 0).
    """

    __slots__ = ("offset", "values")

    def __init__(self, values, offset: int = 0):
        vals = np.atleast_1d(np.asarray(values, dtype=complex))
        if vals.ndim != 1:
            raise ValueError("signal values must be one-dimensional")
        nonzero = np.flatnonzero(vals != 0)
        if nonzero.size == 0:
            object.__setattr__(self, "offset", 0)
            object.__setattr__(self, "values", np.zeros(0, dtype=complex))
        else:
            lo, hi = int(nonzero[0]), int(nonzero[-1]) + 1
            object.__setattr__(self, "offset", int(offset) + lo)
            object.__setattr__(self, "values", vals[lo:hi].copy())
        self.values.flags.writeable = False

    def __setattr__(self, name, value):
        raise AttributeError("Signal is immutable")

    @classmethod
    def delta(cls, m: int = 0) -> "Signal":
        """Unit impulse at time ``m``."""
        return cls([1.0], offset=m)

    @classmethod
    def from_pairs(cls, indices, values) -> "Signal":
        """Build from parallel (index, value) sequences; gaps read as zero."""
        indices = np.asarray(indices, dtype=int)
        values = np.asarray(values, dtype=complex)
        if indices.size != values.size:
            raise ValueError("indices and values must have equal length")
        if indices.size == 0:
            return cls([])
        if np.unique(indices).size != indices.size:
            raise ValueError("duplicate indices")
        lo, hi = int(indices.min()), int(indices.max())
        buf = np.zeros(hi - lo + 1, dtype=complex)
        buf[indices - lo] = values
        return cls(buf, offset=lo)

    @property
    def is_zero(self) -> bool:
        return self.values.size == 0

    @property
    def first_index(self) -> int:
        if self.is_zero:
            raise DomainError("zero signal has no support")
        return self.offset

    @property
    def last_index(self) -> int:
        if self.is_zero:
            raise DomainError("zero signal has no support")
        return self.offset + self.values.size - 1

    def indices(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.values.size)

    def at(self, n: int) -> complex:
        """Value at index ``n`` (zero outside the stored range)."""
        k = n - self.offset
        if 0 <= k < self.values.size:
            return complex(self.values[k])
        return 0j

    def __add__(self, other: "Signal") -> "Signal":
        if not isinstance(other, Signal):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.offset + self.values.size, other.offset + other.values.size)
        buf = np.zeros(hi - lo, dtype=complex)
        buf[self.offset - lo : self.offset - lo + self.values.size] += self.values
        buf[other.offset - lo : other.offset - lo + other.values.size] += other.values
        return Signal(buf, offset=lo)

    def __neg__(self) -> "Signal":
        return Signal(-self.values, offset=self.offset)

    def __sub__(self, other: "Signal") -> "Signal":
        return self + (-other)

    def __mul__(self, scalar) -> "Signal":
        if isinstance(scalar, Signal):
            raise TypeError("use convolve() for signal products")
        return Signal(self.values * complex(scalar), offset=self.offset)

    __rmul__ = __mul__

    def __repr__(self):
        if self.is_zero:
            return "Signal(0)"
        return f"Signal({self.values.tolist()!r}, offset={self.offset})"

    def to_dict(self) -> dict:
        return {
            "offset": int(self.offset),
            "re": self.values.real.tolist(),
            "im": self.values.imag.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Signal":
        re = np.asarray(d["re"], dtype=float)
        im = np.asarray(d["im"], dtype=float)
        if re.size != im.size:
            raise ValueError("re and im must have equal length")
        return cls(re + 1j * im, offset=int(d["offset"]))


@dataclass(frozen=True)
class StabilityReport:
    """Gain bounds of the convolution system with a given kernel.

    The sup-norm gain equals the kernel's one-norm; the same number is an
    upper bound for the energy gain, attained when the kernel is
    nonnegative.
    """

    l1_norm: float
    linf_gain: float
    l2_gain_upper: float
    l2_gain_exact_when_nonneg: bool


def convolve(phi: Signal, psi: Signal) -> Signal:
    """Convolution (phi * psi)(m) = sum_n phi(m - n) psi(n)."""
    if phi.is_zero or psi.is_zero:
        return Signal([])
    return Signal(np.convolve(phi.values, psi.values), offset=phi.offset + psi.offset)


def shift(phi: Signal, m: int) -> Signal:
    """Delay by ``m`` steps: result(n) = phi(n - m)."""
    if phi.is_zero:
        return phi
    return Signal(phi.values, offset=phi.offset + int(m))


def lp_norm(phi: Signal, p) -> float:
    """Sequence norm for p in {1, 2, inf}."""
    absvals = np.abs(phi.values)
    if p == 1:
        return float(absvals.sum())
    if p == 2:
        return float(np.sqrt((absvals**2).sum()))
    if p in (math.inf, np.inf, "inf"):
        return float(absvals.max()) if absvals.size else 0.0
    raise ValueError("p must be 1, 2, or infinity")


def stability_report(k: Signal) -> StabilityReport:
    """Gain bounds for the system phi -> k * phi.

    The sup-norm gain is exactly the one-norm of ``k``.  The energy gain
    is at most the one-norm, with equality when every kernel entry is a
    nonnegative real, which the report flags.
    """
    l1 = float(np.abs(k.values).sum())
    nonneg = bool(np.all(k.values.imag == 0) and np.all(k.values.real >= 0))
    return StabilityReport(
        l1_norm=l1,
        linf_gain=l1,
        l2_gain_upper=l1,
        l2_gain_exact_when_nonneg=nonneg,
    )


def linf_extremal_witness(k: Signal) -> Signal:
    """Unit sup-norm input whose response peaks at the one-norm of ``k``.

    The witness phi(n) = conj(k(-n)) / |k(-n)| on the reflected support
    satisfies (k * phi)(0) = ||k||_1 and has sup-norm one.
    """
    if k.is_zero:
        raise DomainError("no witness for zero system")
    reflected = k.values[::-1]  # entry i corresponds to n = -(last_index) + i
    out = np.zeros_like(reflected)
    mask = reflected != 0
    out[mask] = np.conj(reflected[mask]) / np.abs(reflected[mask])
    return Signal(out, offset=-k.last_index)
