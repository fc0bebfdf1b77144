"""Inner/outer structure of bounded analytic functions on the disk.

Inner functions (unimodular boundary values) are assembled from three
ingredients: a phase constant, automorphism factors vanishing at
prescribed interior points, and zero-free atomic singular factors driven
by point masses on the circle.  Outer functions are exponentials of the
half-plane-kernel integral of a real boundary log-modulus.  Every stable
rational transfer function splits uniquely into an outer part carrying
its size and an inner part carrying its interior zeros.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .rational import Polynomial, RationalFunction, classify, poly_roots
from .spectrum import BoundaryGrid

__all__ = [
    "InnerFunction",
    "OuterFunction",
    "BlaschkeDiagnostic",
    "WeakFactorization",
    "blaschke_factor",
    "inner_eval",
    "blaschke_condition",
    "outer_from_log_modulus",
    "factorize_rational",
    "h1_weak_factor",
]

BOUNDARY_ZERO_TOL = 1e-9
ORIGIN_ZERO_TOL = 1e-9
OUTER_MAX_RADIUS = 1.0 - 1e-3
LOG_FLOOR = np.log(1e-12)


def blaschke_factor(a, z):
    """Disk automorphism (|a|/a) (a - z) / (1 - conj(a) z), vanishing at a.

    Normalized so the value at 0 is |a| > 0; takes the circle onto the
    circle.  The point a must be nonzero (a zero at the origin is the
    plain monomial factor z, handled separately).
    """
    a = complex(a)
    if a == 0:
        raise DomainError("zero at origin: use the monomial factor z instead")
    if not abs(a) < 1:
        raise DomainError("automorphism base point must lie inside the disk")
    z = np.asarray(z, dtype=complex)
    out = (abs(a) / a) * (a - z) / (1.0 - np.conj(a) * z)
    return complex(out) if out.ndim == 0 else out


def _cayley(w):
    """(1 + w) / (1 - w): disk onto right half-plane."""
    return (1.0 + w) / (1.0 - w)


@dataclass(frozen=True)
class InnerFunction:
    """Phase * z^zero_order * automorphism factors * atomic singular factors.

    ``atoms`` is a list of (angle, mass) pairs; each contributes the
    zero-free factor exp(-mass * cayley(e^{-i angle} z)), which decays
    like exp(-2 mass / eps) on the radius toward its boundary point.
    """

    lam: complex = 1.0 + 0j
    zero_order: int = 0
    zeros: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        zeros = np.atleast_1d(np.asarray(self.zeros, dtype=complex))
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "atoms", tuple((float(a), float(m)) for a, m in self.atoms))
        if abs(abs(self.lam) - 1.0) > 1e-12:
            raise DomainError("phase constant must be unimodular")
        if self.zero_order < 0:
            raise DomainError("order of the zero at 0 must be nonnegative")
        if zeros.size and (np.any(np.abs(zeros) >= 1) or np.any(zeros == 0)):
            raise DomainError("zeros must lie inside the disk and off the origin")
        if any(m <= 0 for _, m in self.atoms):
            raise DomainError("atom masses must be positive")

    def __call__(self, z):
        return inner_eval(self, z)

    def to_dict(self) -> dict:
        return {
            "lambda_re": self.lam.real,
            "lambda_im": self.lam.imag,
            "m": int(self.zero_order),
            "zeros": [{"re": z.real, "im": z.imag} for z in self.zeros],
            "atoms": [{"alpha": a, "mu": m} for a, m in self.atoms],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "InnerFunction":
        return cls(
            lam=complex(d["lambda_re"], d["lambda_im"]),
            zero_order=int(d["m"]),
            zeros=np.array([complex(z["re"], z["im"]) for z in d["zeros"]], dtype=complex),
            atoms=tuple((float(a["alpha"]), float(a["mu"])) for a in d["atoms"]),
        )


def inner_eval(theta: InnerFunction, z):
    """Evaluate an inner function inside the disk or on the circle.

    Boundary points coinciding with an atom location are essential
    singularities and are rejected.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    zz = np.atleast_1d(z)
    on_circle = np.abs(np.abs(zz) - 1.0) <= 1e-12
    for alpha, _ in theta.atoms:
        if np.any(on_circle & (np.abs(zz - np.exp(1j * alpha)) <= 1e-9)):
            raise DomainError("essential singularity: evaluation at a boundary atom")
    out = np.full(zz.shape, theta.lam, dtype=complex)
    if theta.zero_order:
        out = out * zz**theta.zero_order
    for a in theta.zeros:
        out = out * blaschke_factor(a, zz)
    for alpha, mu in theta.atoms:
        out = out * np.exp(-mu * _cayley(np.exp(-1j * alpha) * zz))
    return complex(out[0]) if scalar else out


@dataclass(frozen=True)
class BlaschkeDiagnostic:
    """Partial sum of the gaps 1 - |a_j| with a convergence verdict.

    For finite gap lists the verdict is exact; for generator rules it is
    a condensation-test heuristic on the sampled terms.
    """

    partial_sum: float
    terms: int
    convergent: bool


def blaschke_condition(gaps, count: int | None = None) -> BlaschkeDiagnostic:
    """Diagnose summability of zero gaps 1 - |a_j|.

    ``gaps`` is either a finite sequence (always summable) or a callable
    rule j -> gap sampled at j = 1..count.  The heuristic for rules is
    Cauchy condensation: the terms 2^k g(2^k) must decay geometrically.
    """
    if callable(gaps):
        if count is None:
            raise ValueError("a generator rule needs an explicit term count")
        js = np.arange(1, count + 1)
        vals = np.array([float(gaps(int(j))) for j in js])
    else:
        vals = np.asarray(list(gaps), dtype=float)
        count = vals.size
    if np.any(vals <= 0):
        raise DomainError("gaps must be positive")
    total = float(vals.sum())
    if not callable(gaps):
        return BlaschkeDiagnostic(partial_sum=total, terms=count, convergent=True)
    ks = []
    k = 0
    while 2**k <= count:
        ks.append(2**k * vals[2**k - 1])
        k += 1
    if len(ks) < 3:
        return BlaschkeDiagnostic(partial_sum=total, terms=count, convergent=True)
    ratios = [ks[i + 1] / ks[i] for i in range(len(ks) - 1)]
    tail = ratios[-3:]
    convergent = bool(np.median(tail) < 0.95)
    return BlaschkeDiagnostic(partial_sum=total, terms=count, convergent=convergent)


def outer_from_log_modulus(log_modulus, z, max_radius: float = OUTER_MAX_RADIUS):
    """Outer value exp of the half-plane-kernel average of a boundary
    log-modulus.

    ``log_modulus`` is a real grid k(e^{it}); the value is
    exp(mean_j [(1 + e^{-i t_j} z) / (1 - e^{-i t_j} z)] k_j).  The
    evaluation point must satisfy |z| <= max_radius: closer to the circle
    the quadrature degrades and the call is refused.
    """
    if isinstance(log_modulus, BoundaryGrid):
        if np.max(np.abs(log_modulus.values.imag)) > 1e-12:
            raise DomainError("log-modulus grid must be real-valued")
        kvals = log_modulus.values.real
        n = log_modulus.size
    else:
        kvals = np.asarray(log_modulus, dtype=float)
        n = kvals.size
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > max_radius):
        raise DomainError(
            f"evaluation point too close to the circle; largest supported radius is {max_radius}"
        )
    conj_points = np.exp(-2j * np.pi * np.arange(n) / n)
    w = conj_points * z[..., None]
    integrand = (1.0 + w) / (1.0 - w) * kvals
    out = np.exp(integrand.mean(axis=-1))
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class OuterFunction:
    """Zero-free-in-disk factor, positive at the origin.

    Backed either by a reduced rational function or by a real boundary
    log-modulus grid (exponentiated through the half-plane kernel).
    """

    rational: RationalFunction | None = None
    log_modulus: BoundaryGrid | None = None

    def __post_init__(self):
        if (self.rational is None) == (self.log_modulus is None):
            raise DomainError("provide exactly one backing representation")

    def __call__(self, z):
        if self.rational is not None:
            return self.rational(z)
        return outer_from_log_modulus(self.log_modulus, z)

    def boundary_values(self, n: int) -> np.ndarray:
        if self.rational is None:
            raise DomainError("boundary values need the rational backing")
        return self.rational.boundary_values(n)


def factorize_rational(
    b: RationalFunction,
    boundary_tol: float = BOUNDARY_ZERO_TOL,
    on_boundary: str = "error",
):
    """Split a causal-stable rational function as (inner, outer).

    The inner part collects the order of the zero at the origin and the
    automorphism factors of the interior zeros (rational data has no
    singular part: its boundary modulus is continuous); the outer part is
    rational, zero-free in the disk, positive at 0, and carries all of
    the size: |outer| = |b| on the circle.  Zeros within ``boundary_tol``
    of the circle make the split ill-conditioned and are refused unless
    ``on_boundary="outer"``, which assigns them to the outer part (they
    generate no inner factor, at the cost of a log-modulus that dips to
    minus infinity).
    """
    if on_boundary not in ("error", "outer"):
        raise ValueError("on_boundary must be 'error' or 'outer'")
    report = classify(b)
    if not report.causal_stable:
        raise DomainError("factorization requires a causal-stable input")
    if b.is_zero:
        raise DomainError("factorization requires a nonzero input")

    origin_order = 0
    interior = []
    exterior = []
    if b.num.degree >= 1:
        for r in poly_roots(b.num):
            if abs(r) <= ORIGIN_ZERO_TOL:
                origin_order += 1
            elif abs(abs(r) - 1.0) <= boundary_tol:
                if on_boundary == "error":
                    raise DomainError("boundary zero: factorization ill-conditioned")
                exterior.append(r)
            elif abs(r) < 1.0:
                interior.append(r)
            else:
                exterior.append(r)
    interior = np.asarray(interior, dtype=complex)

    # b = u_raw * z^m * prod blaschke(a_j); solving for u_raw cancels the
    # interior roots exactly:  u_raw = c/kappa * prod(z - e_i) * prod(1 - conj(a_j) z) / den
    kappa = np.prod([-abs(a) / a for a in interior]) if interior.size else 1.0 + 0j
    u_num = Polynomial.from_roots(exterior, leading=b.num.leading / kappa)
    for a in interior:
        u_num = u_num * Polynomial([1.0, -np.conj(a)])
    u_raw = RationalFunction(u_num, b.den, reduce=False)

    u0 = u_raw(0.0)
    phase = u0 / abs(u0)
    outer = OuterFunction(rational=RationalFunction(u_raw.num * np.conj(phase), u_raw.den, reduce=False))
    inner = InnerFunction(lam=phase, zero_order=origin_order, zeros=interior, atoms=())
    return inner, outer


def _analytic_boundary_log(values: np.ndarray) -> np.ndarray:
    """Single-valued log of zero-free-in-the-disk boundary samples.

    The argument is unwrapped along the circle and pinned so its mean is
    zero, which is the branch of a function positive at the origin.  The
    modulus is clamped below at exp(LOG_FLOOR): samples sitting exactly
    on a boundary zero would otherwise send the log to minus infinity
    (documented accuracy limit).
    """
    arg = np.unwrap(np.angle(values))
    arg = arg - 2.0 * np.pi * np.round(arg.mean() / (2.0 * np.pi))
    modulus = np.maximum(np.abs(values), np.exp(LOG_FLOOR))
    return np.log(modulus) + 1j * arg


@dataclass(frozen=True)
class WeakFactorization:
    """h = f g with f = sqrt(outer part), g = f * inner part, on a grid."""

    f: BoundaryGrid
    g: BoundaryGrid
    h1_norm: float
    f_norm: float
    g_norm: float


def h1_weak_factor(h: RationalFunction, n: int = 1024) -> WeakFactorization:
    """Factor a causal-stable rational h into two square-summable factors
    whose norms multiply to the absolute-mean norm of h.

    The square root of the outer part is taken through half of its
    analytic logarithm (never a pointwise complex sqrt), so the factor is
    a single-valued analytic branch.  Zeros on the circle are tolerated:
    they belong to the outer part and only touch the quadrature through
    the clamped log-modulus.
    """
    inner, outer = factorize_rational(h, on_boundary="outer")
    z = np.exp(2j * np.pi * np.arange(n) / n)
    u_vals = outer.boundary_values(n)
    f_vals = np.exp(0.5 * _analytic_boundary_log(u_vals))
    g_vals = f_vals * inner_eval(inner, z)
    f_norm = float(np.sqrt(np.mean(np.abs(f_vals) ** 2)))
    g_norm = float(np.sqrt(np.mean(np.abs(g_vals) ** 2)))
    h_vals = h.boundary_values(n)
    h1 = float(np.mean(np.abs(h_vals)))
    return WeakFactorization(
        f=BoundaryGrid(f_vals),
        g=BoundaryGrid(g_vals),
        h1_norm=h1,
        f_norm=f_norm,
        g_norm=g_norm,
    )
