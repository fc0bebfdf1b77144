"""Hankel and Toeplitz machinery: best causal approximation and norms.

The distance from a bounded symbol to the causal class equals the
operator norm of its Hankel matrix, whose (m, n) entry depends only on
m + n and is built from the symbol's negative-frequency coefficients.
The top singular pair of a finite-rank truncation reconstructs the best
causal approximant, whose error has constant modulus on the circle.
Toeplitz compressions, polynomial-contraction bounds, and a kernel-probe
Carleson estimator round out the operator toolbox.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .rational import Polynomial, RationalFunction, classify
from .signals import Signal
from .spectrum import (
    BoundaryGrid,
    as_disk_point,
    fourier_grid,
    grid_to_coefficients,
    poisson_value,
    refine_sup,
    sup_norm_grid,
)

__all__ = [
    "HankelOperatorData",
    "SchmidtPair",
    "HankelNormResult",
    "ContractionMatrix",
    "AakResult",
    "ToeplitzBracket",
    "VonNeumannReport",
    "hankel_from_symbol",
    "hankel_matrix",
    "hankel_norm",
    "hankel_bilinear_form",
    "nehari_distance",
    "best_causal_approx",
    "toeplitz_apply",
    "toeplitz_norm_lower",
    "von_neumann_check",
    "bmoa_carleson_estimate",
]


@dataclass(frozen=True)
class HankelOperatorData:
    """Symbol sequence alpha(j), j >= 0, with a truncation size.

    When built from a symbol phi, alpha(j) = conj(phi_hat(-j-1)): only
    the negative-frequency part of the symbol matters.  ``rule``, when
    present, extends alpha beyond the stored window (used for symbols
    with infinitely many negative coefficients, e.g. 1/(j+1)).
    """

    alpha: np.ndarray
    n: int
    rule: object = None  # optional callable j -> alpha(j)

    def __post_init__(self):
        object.__setattr__(self, "alpha", np.asarray(self.alpha, dtype=complex))
        if self.n < 1:
            raise DomainError("truncation size must be at least 1")

    @classmethod
    def from_rule(cls, rule, n: int) -> "HankelOperatorData":
        """Materialize alpha(0..2n-2) from a rule so the n-truncation is exact."""
        alpha = np.array([rule(j) for j in range(max(1, 2 * n - 1))], dtype=complex)
        return cls(alpha=alpha, n=n, rule=rule)

    def alpha_at(self, count: int) -> np.ndarray:
        """First ``count`` entries of alpha, extended by rule or by zero."""
        out = np.zeros(count, dtype=complex)
        stored = min(count, self.alpha.size)
        out[:stored] = self.alpha[:stored]
        if self.rule is not None and count > self.alpha.size:
            out[self.alpha.size :] = [self.rule(j) for j in range(self.alpha.size, count)]
        return out


def _symbol_coefficients(phi) -> Signal:
    if isinstance(phi, BoundaryGrid):
        return grid_to_coefficients(phi)
    if isinstance(phi, Signal):
        return phi
    raise TypeError("symbol must be a Signal or a BoundaryGrid")


def hankel_from_symbol(phi, n: int | None = None) -> HankelOperatorData:
    """Hankel data of a symbol: alpha(j) = conj(coefficient at -j-1).

    Symbols with no negative-frequency content give alpha identically
    zero, hence a vanishing Hankel operator.
    """
    coeffs = _symbol_coefficients(phi)
    if coeffs.is_zero or coeffs.first_index >= 0:
        alpha = np.zeros(1, dtype=complex)
    else:
        depth = -coeffs.first_index  # alpha(j) nonzero for j < depth
        js = np.arange(depth)
        alpha = np.conj(np.array([coeffs.at(int(-j - 1)) for j in js], dtype=complex))
    if n is None:
        n = max(2, alpha.size)
    return HankelOperatorData(alpha=alpha, n=int(n))


def hankel_matrix(data: HankelOperatorData, n: int | None = None) -> np.ndarray:
    """Dense truncation [alpha(m + n)] of the Hankel matrix."""
    n = data.n if n is None else int(n)
    a = data.alpha_at(2 * n - 1)
    idx = np.arange(n)
    return a[idx[:, None] + idx[None, :]]


@dataclass(frozen=True)
class SchmidtPair:
    """Top singular data of a Hankel truncation.

    Convention: with M the truncation matrix, ``M @ u = sigma * v`` and
    both vectors have unit norm (u is the input side, v the output side).
    """

    sigma: float
    u: np.ndarray
    v: np.ndarray


@dataclass(frozen=True)
class HankelNormResult:
    """Top singular value of the truncation plus a doubling check."""

    sigma: float
    pair: SchmidtPair
    converged: bool
    n: int


def _top_pair(matrix: np.ndarray) -> SchmidtPair:
    umat, svals, vh = np.linalg.svd(matrix)
    return SchmidtPair(sigma=float(svals[0]), u=np.conj(vh[0]), v=umat[:, 0])


def hankel_norm(data: HankelOperatorData, rtol: float = 1e-8) -> HankelNormResult:
    """Operator norm of the n-truncation, with a convergence certificate.

    ``converged`` is True when doubling the truncation changes the top
    singular value by less than ``rtol`` relative; for symbols whose
    negative part is a polynomial the truncation is exact as soon as it
    covers the support, so the flag is exact there.
    """
    if data.n < 2:
        raise DomainError("norm estimation needs truncation size at least 2")
    pair = _top_pair(hankel_matrix(data))
    sigma2 = float(np.linalg.svd(hankel_matrix(data, 2 * data.n), compute_uv=False)[0])
    converged = abs(sigma2 - pair.sigma) <= rtol * max(pair.sigma, 1e-300)
    return HankelNormResult(sigma=pair.sigma, pair=pair, converged=converged, n=data.n)


def hankel_bilinear_form(data: HankelOperatorData, f: Signal, g: Signal) -> complex:
    """Bilinear pairing of two causal signals against the symbol's
    negative part.

    Equals sum over m, n of conj(alpha(m+n)) f(n) g(m), which is the
    normalized circle integral of f g e^{it} phi(e^{it}) for the symbol
    phi behind ``data``.  Supports must fit inside the truncation.
    """
    n = data.n
    fv = np.zeros(n, dtype=complex)
    gv = np.zeros(n, dtype=complex)
    for sig, buf in ((f, fv), (g, gv)):
        if sig.is_zero:
            continue
        if sig.first_index < 0:
            raise DomainError("bilinear form requires causal signals")
        if sig.last_index >= n:
            raise DomainError("support overflow: signal does not fit the truncation")
        buf[sig.indices()] = sig.values
    mat = np.conj(hankel_matrix(data))
    return complex(gv @ mat @ fv)


def nehari_distance(phi, n: int | None = None) -> HankelNormResult:
    """Distance from the symbol to the causal bounded class.

    This is the Hankel norm of the symbol's data; when the negative part
    is a polynomial of degree d, any truncation with n > d is exact and
    the result is certified converged.
    """
    return hankel_norm(hankel_from_symbol(phi, n))


@dataclass(frozen=True)
class AakResult:
    """Best causal approximation and its constant-modulus error."""

    approximant: Signal
    boundary: BoundaryGrid
    achieved: float
    modulus_deviation: float
    negative_residual: float


def best_causal_approx(
    phi: Signal,
    n: int | None = None,
    grid_n: int = 2048,
    degeneracy_rtol: float = 1e-10,
    modulus_rtol: float = 1e-6,
    causal_rtol: float = 1e-7,
) -> AakResult:
    """Best sup-norm approximation of a symbol by a causal function.

    Requires a finite-rank Hankel (finitely many negative coefficients),
    for which the truncation is exact.  The error function is built from
    the top Schmidt pair read as power series: with A the
    negative-part matrix, A xi = sigma eta, the error is
    sigma * eta(z) / xi(z) with eta expanded in z^{-m-1}; its modulus is
    constant equal to sigma on the circle, and the approximant
    phi - error has no negative-frequency content.  Both properties are
    verified on the grid and failures raise.

    A degenerate top singular value (sigma_1 = sigma_2 within
    ``degeneracy_rtol``) makes the construction ambiguous and is refused.
    """
    phi = _symbol_coefficients(phi)
    data = hankel_from_symbol(phi, n)
    phi_grid = fourier_grid(phi, grid_n)
    if np.max(np.abs(data.alpha)) == 0.0:
        # symbol already causal
        return AakResult(
            approximant=phi,
            boundary=phi_grid,
            achieved=0.0,
            modulus_deviation=0.0,
            negative_residual=0.0,
        )

    size = max(data.n, 2)
    amat = np.conj(hankel_matrix(data, size))
    umat, svals, vh = np.linalg.svd(amat)
    sigma = float(svals[0])
    if svals.size > 1 and (svals[0] - svals[1]) <= degeneracy_rtol * max(svals[0], 1e-300):
        raise DomainError("nonunique approximant, singular-pair step ambiguous")
    xi_coeffs = np.conj(vh[0])
    eta_coeffs = umat[:, 0]

    z = np.exp(2j * np.pi * np.arange(grid_n) / grid_n)
    xi = np.polynomial.polynomial.polyval(z, xi_coeffs)
    eta = np.conj(z) * np.polynomial.polynomial.polyval(np.conj(z), eta_coeffs)
    if np.min(np.abs(xi)) <= 1e-12 * np.max(np.abs(xi)):
        raise ConvergenceError("Schmidt vector vanishes on the evaluation grid")
    error = sigma * eta / xi

    modulus_deviation = float(np.max(np.abs(np.abs(error) - sigma)))
    if modulus_deviation > modulus_rtol * max(1.0, sigma):
        raise ConvergenceError(
            f"error modulus is not constant: deviation {modulus_deviation:.3e}",
            best_estimate=sigma,
        )
    b_grid = phi_grid.values - error
    coeffs = grid_to_coefficients(BoundaryGrid(b_grid))
    total = np.linalg.norm(coeffs.values)
    neg = 0.0
    if not coeffs.is_zero and coeffs.first_index < 0:
        sel = coeffs.indices() < 0
        neg = float(np.linalg.norm(coeffs.values[sel]))
    # scale against the symbol so a vanishing approximant stays well-posed
    symbol_scale = float(np.sqrt(np.mean(np.abs(phi_grid.values) ** 2)))
    negative_residual = neg / max(total, symbol_scale, 1e-300)
    if negative_residual > causal_rtol:
        raise ConvergenceError(
            f"approximant has negative-frequency residual {negative_residual:.3e}",
            best_estimate=sigma,
        )
    causal_values = [coeffs.at(k) for k in range(max(coeffs.last_index + 1, 1))] if not coeffs.is_zero else [0.0]
    return AakResult(
        approximant=Signal(causal_values, offset=0),
        boundary=BoundaryGrid(b_grid),
        achieved=sigma,
        modulus_deviation=modulus_deviation,
        negative_residual=negative_residual,
    )


def toeplitz_apply(psi: BoundaryGrid, f: Signal) -> Signal:
    """Compression of multiplication by psi to the causal class:
    multiply on the grid and discard negative frequencies.

    The essential bandwidth of psi plus the support of f must fit the
    grid, otherwise the product would alias.
    """
    if not f.is_zero and f.first_index < 0:
        raise DomainError("Toeplitz compression acts on causal signals")
    n = psi.size
    half = n // 2
    psi_coeffs = grid_to_coefficients(psi)
    if not psi_coeffs.is_zero:
        mags = np.abs(psi_coeffs.values)
        live = psi_coeffs.indices()[mags > 1e-13 * mags.max()]
        k_hi = int(live.max()) if live.size else 0
    else:
        k_hi = 0
    f_hi = 0 if f.is_zero else f.last_index
    if f_hi >= half or f_hi + max(k_hi, 0) >= half:
        raise DomainError("bandwidth overflow: product does not fit the grid")
    product = psi.values * fourier_grid(f, n).values
    coeffs = grid_to_coefficients(BoundaryGrid(product))
    if coeffs.is_zero:
        return coeffs
    keep = coeffs.indices() >= 0
    return Signal(coeffs.values[keep], offset=max(coeffs.first_index, 0))


@dataclass(frozen=True)
class ToeplitzBracket:
    """Certified bracket for the compression norm: the Poisson probe
    value from below, the grid sup-norm from above."""

    lower: float
    upper: float


def toeplitz_norm_lower(
    psi: BoundaryGrid, radii=(0.9, 0.99, 0.999), n_angles: int = 256
) -> ToeplitzBracket:
    """Bracket the compression norm of the symbol.

    Kernel probes give sup_a |Poisson extension at a|, a guaranteed lower
    bound that approaches the sup-norm as the probes approach the circle;
    the grid sup is the matching upper bound.  The quadrature error of a
    probe decays like exp(-n (1 - r)), so probes closer to the circle
    than the grid resolves are refused.
    """
    for r in radii:
        if psi.size * (1.0 - abs(r)) < 4.0:
            raise DomainError(
                f"probe radius {r} is too close to the circle for a size-{psi.size} grid"
            )
    best = 0.0
    thetas = 2.0 * np.pi * np.arange(n_angles) / n_angles
    for r in radii:
        for th in thetas:
            val = abs(poisson_value(psi, as_disk_point(r * np.exp(1j * th))))
            if val > best:
                best = val
    return ToeplitzBracket(lower=float(best), upper=sup_norm_grid(psi))


@dataclass(frozen=True)
class ContractionMatrix:
    """Square matrix of operator 2-norm at most one (within 1e-12)."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DomainError("contraction must be a square matrix")
        if np.linalg.norm(mat, 2) > 1.0 + 1e-12:
            raise DomainError("matrix is not a contraction")
        object.__setattr__(self, "matrix", mat)


@dataclass(frozen=True)
class VonNeumannReport:
    """Comparison of a polynomial applied to a contraction against the
    polynomial's boundary sup-norm."""

    lhs: float
    rhs: float
    holds: bool


def von_neumann_check(p: Polynomial, T) -> VonNeumannReport:
    """Check the contraction bound ||p(T)|| <= sup of |p| on the circle."""
    if not isinstance(T, ContractionMatrix):
        T = ContractionMatrix(np.asarray(T, dtype=complex))
    mat = T.matrix
    dim = mat.shape[0]
    acc = np.zeros((dim, dim), dtype=complex)
    for c in p.coeffs[::-1]:
        acc = acc @ mat + c * np.eye(dim)
    lhs = float(np.linalg.norm(acc, 2))
    rhs = refine_sup(lambda z: p(z)).value
    return VonNeumannReport(lhs=lhs, rhs=rhs, holds=lhs <= rhs + 1e-9)


def _default_probes() -> list[complex]:
    probes = [0j]
    for r in (0.35, 0.6, 0.8, 0.9, 0.95):
        for k in range(12):
            probes.append(r * np.exp(2j * np.pi * k / 12))
    return probes


def bmoa_carleson_estimate(
    b: RationalFunction,
    probes=None,
    start_radial: int = 32,
    start_angles: int = 64,
    refine_tol: float = 0.01,
    max_refine: int = 8,
) -> float:
    """Kernel-probe estimate of the Carleson constant of the measure
    (1 - |z|^2) |b'(z)|^2 dxdy attached to a causal-stable b.

    For each probe a, the kernel quotient
    (1 - |a|^2) * integral of |k_a|^2 against the measure is a lower
    bound for the true constant; the supremum over the probe set is
    returned once polar quadrature refinement moves it by less than
    ``refine_tol`` relative.
    """
    if not classify(b).causal_stable:
        raise DomainError("Carleson estimate requires a causal-stable function")
    if probes is None:
        probes = _default_probes()
    probes = [as_disk_point(a) for a in probes]
    db = b.derivative()

    def level(n_rad, n_ang):
        x, w = np.polynomial.legendre.leggauss(n_rad)
        r = 0.5 * (x + 1.0)
        wr = 0.5 * w
        theta = 2.0 * np.pi * np.arange(n_ang) / n_ang
        zgrid = r[:, None] * np.exp(1j * theta)[None, :]
        weight = (wr * r)[:, None] * (2.0 * np.pi / n_ang)
        base = (1.0 - np.abs(zgrid) ** 2) * np.abs(db(zgrid)) ** 2 * weight
        best = 0.0
        for a in probes:
            quotient = (1.0 - abs(a) ** 2) * np.sum(base / np.abs(1.0 - np.conj(a) * zgrid) ** 2)
            best = max(best, float(quotient.real))
        return best

    n_rad, n_ang = start_radial, start_angles
    current = level(n_rad, n_ang)
    for _ in range(max_refine):
        n_rad *= 2
        n_ang *= 2
        nxt = level(n_rad, n_ang)
        if abs(nxt - current) <= refine_tol * max(current, 1e-300):
            return nxt
        current = nxt
    raise ConvergenceError(
        "Carleson quadrature did not stabilize", best_estimate=current
    )
