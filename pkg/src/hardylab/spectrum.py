"""Frequency-side machinery: boundary grids, disk evaluation, kernels.

Sign convention used everywhere in this package: the transform of a
sequence phi is ``phi_hat(e^{it}) = sum_n phi(n) e^{i n t}`` with the
normalized measure dt / (2 pi), and the disk transform of a causal signal
is ``sum_n phi(n) z^n`` on |z| < 1.  The engineering convention with
negative powers of z (and the disk exterior as the stability region) is
deliberately NOT used; stable transfer functions here are bounded inside
the unit disk.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .signals import Signal, convolve

__all__ = [
    "BoundaryGrid",
    "DiskPoint",
    "SupremumEstimate",
    "fourier_grid",
    "grid_to_coefficients",
    "z_transform_eval",
    "convolution_theorem_check",
    "sup_norm_grid",
    "refine_sup",
    "poisson_value",
    "szego_kernel",
]

MAX_GRID = 2**20


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class DiskPoint:
    """A point strictly inside the unit disk."""

    z: complex

    def __post_init__(self):
        if not abs(self.z) < 1:
            raise DomainError(f"point {self.z} is not inside the unit disk")


def as_disk_point(z) -> complex:
    """Coerce a DiskPoint or bare number to a validated complex value."""
    if isinstance(z, DiskPoint):
        return complex(z.z)
    z = complex(z)
    if not abs(z) < 1:
        raise DomainError(f"point {z} is not inside the unit disk")
    return z


class BoundaryGrid:
    """Samples of a circle function at the n-th roots of unity.

    Sample j lives at angle t_j = 2 pi j / n; n is a power of two, at
    least 8, so grids nest under doubling and fast transforms apply.
    """

    __slots__ = ("values",)

    def __init__(self, values):
        vals = np.asarray(values, dtype=complex)
        if vals.ndim != 1:
            raise ValueError("grid values must be one-dimensional")
        if not _is_pow2(vals.size) or vals.size < 8:
            raise DomainError("grid size must be a power of two, at least 8")
        object.__setattr__(self, "values", vals.copy())
        self.values.flags.writeable = False

    def __setattr__(self, name, value):
        raise AttributeError("BoundaryGrid is immutable")

    @property
    def size(self) -> int:
        return self.values.size

    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.size) / self.size

    def points(self) -> np.ndarray:
        """The grid points e^{i t_j} on the circle."""
        return np.exp(1j * self.angles())

    @classmethod
    def from_function(cls, f, n: int) -> "BoundaryGrid":
        ts = 2.0 * np.pi * np.arange(n) / n
        return cls(np.asarray(f(np.exp(1j * ts)), dtype=complex))

    def to_dict(self) -> dict:
        return {
            "n": int(self.size),
            "re": self.values.real.tolist(),
            "im": self.values.imag.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundaryGrid":
        re = np.asarray(d["re"], dtype=float)
        im = np.asarray(d["im"], dtype=float)
        if re.size != int(d["n"]) or im.size != int(d["n"]):
            raise ValueError("grid length does not match declared size")
        return cls(re + 1j * im)


def fourier_grid(phi: Signal, n: int) -> BoundaryGrid:
    """Sample sum_k phi(k) e^{i k t} on the size-n boundary grid.

    The support of ``phi`` must fit in [-n/2, n/2) so the coefficients
    remain recoverable from the samples.
    """
    if not _is_pow2(n) or n < 8:
        raise DomainError("grid size must be a power of two, at least 8")
    buf = np.zeros(n, dtype=complex)
    if not phi.is_zero:
        if phi.first_index < -(n // 2) or phi.last_index >= n // 2:
            raise DomainError(
                f"support [{phi.first_index}, {phi.last_index}] does not fit "
                f"in [-{n // 2}, {n // 2})"
            )
        buf[phi.indices() % n] = phi.values
    # ifft * n evaluates sum_k buf[k] e^{+2 pi i j k / n}
    return BoundaryGrid(np.fft.ifft(buf) * n)


def grid_to_coefficients(grid: BoundaryGrid) -> Signal:
    """Invert :func:`fourier_grid`: recover coefficients on [-n/2, n/2)."""
    n = grid.size
    c = np.fft.fft(grid.values) / n
    return Signal(np.concatenate([c[n // 2 :], c[: n // 2]]), offset=-(n // 2))


def z_transform_eval(phi: Signal, z) -> complex:
    """Evaluate sum_n phi(n) z^n for a causal signal at |z| < 1."""
    z = as_disk_point(z)
    if phi.is_zero:
        return 0j
    if phi.first_index < 0:
        raise DomainError("Z-transform requires causal signal")
    acc = 0j
    for v in phi.values[::-1]:
        acc = acc * z + v
    return complex(acc * z**phi.first_index)


def convolution_theorem_check(phi: Signal, psi: Signal, n: int) -> float:
    """Max grid deviation between the transform of phi*psi and the product
    of the transforms."""
    lhs = fourier_grid(convolve(phi, psi), n).values
    rhs = fourier_grid(phi, n).values * fourier_grid(psi, n).values
    return float(np.max(np.abs(lhs - rhs)))


def sup_norm_grid(grid: BoundaryGrid) -> float:
    """Largest sample modulus."""
    return float(np.max(np.abs(grid.values)))


@dataclass(frozen=True)
class SupremumEstimate:
    """Converged boundary supremum together with the grid that settled it."""

    value: float
    grid_size: int


def refine_sup(f, tol: float = 1e-8, start: int = 64, max_size: int = MAX_GRID) -> SupremumEstimate:
    """Estimate sup |f| over the circle by doubling uniform grids.

    ``f`` is evaluated vectorized on arrays of boundary points e^{it}.
    Doubling stops when successive suprema differ by less than
    tol * max(1, current value).  Since the grids nest, the estimates are
    nondecreasing.  Raises :class:`ConvergenceError` (carrying the best
    estimate) if max_size is exhausted.
    """
    if not _is_pow2(start) or start < 8:
        raise DomainError("starting grid size must be a power of two, at least 8")
    n = start
    current = float(np.max(np.abs(f(np.exp(2j * np.pi * np.arange(n) / n)))))
    while 2 * n <= max_size:
        n *= 2
        nxt = float(np.max(np.abs(f(np.exp(2j * np.pi * np.arange(n) / n)))))
        if abs(nxt - current) < tol * max(1.0, current):
            return SupremumEstimate(value=nxt, grid_size=n)
        current = nxt
    raise ConvergenceError(
        f"supremum did not stabilize within grid size {max_size}",
        best_estimate=current,
    )


def poisson_value(grid: BoundaryGrid, a) -> complex:
    """Poisson integral of the grid samples at a point inside the disk.

    Trapezoid quadrature of (1 - |a|^2) / |1 - conj(a) z|^2 against the
    samples with the normalized measure; the kernel has unit mass.
    """
    a = as_disk_point(a)
    z = grid.points()
    kernel = (1.0 - abs(a) ** 2) / np.abs(1.0 - np.conj(a) * z) ** 2
    return complex(np.mean(grid.values * kernel))


def szego_kernel(z, w) -> complex:
    """Reproducing kernel k_z(w) = 1 / (1 - conj(z) w) of the analytic
    square-summable class on the disk."""
    z = as_disk_point(z)
    w = as_disk_point(w)
    return 1.0 / (1.0 - np.conj(z) * w)
