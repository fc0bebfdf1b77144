"""Best approximation of an ideal plant by a cascade with a designable
middle stage.

Minimizing the boundary sup-norm of T - U C V over stable compensators C
reduces, through the inner/outer split of U V, to minimal-norm
interpolation at the inner factor's zeros: any admissible error function
takes the values T(lambda_j) there, and conversely an optimal
interpolant H rebuilds the compensator as C = (T - H) / (inner * outer).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .inner_outer import InnerFunction, factorize_rational
from .pick import PickProblem, minimal_radius, solve_pick
from .rational import Polynomial, RationalFunction, classify, poly_roots
from .spectrum import refine_sup

__all__ = [
    "MatchProblem",
    "PickReduction",
    "MatchSolution",
    "MatchReport",
    "reduce_to_pick",
    "model_match",
    "verify_match",
]

NODE_MATCH_TOL = 1e-6


@dataclass(frozen=True)
class MatchProblem:
    """Cascade data: ideal plant t, fixed outer stages u and v, all
    causal-stable with u v not identically zero."""

    t: RationalFunction
    u: RationalFunction
    v: RationalFunction

    def __post_init__(self):
        for name, r in (("t", self.t), ("u", self.u), ("v", self.v)):
            if not classify(r).causal_stable:
                raise DomainError(f"plant {name} must be causal-stable")
        if self.u.is_zero or self.v.is_zero:
            raise DomainError("cascade u v must not vanish identically")


@dataclass(frozen=True)
class PickReduction:
    """Interpolation data extracted from the cascade's inner factor."""

    nodes: np.ndarray
    targets: np.ndarray
    inner: InnerFunction
    outer: RationalFunction


def reduce_to_pick(p: MatchProblem) -> PickReduction:
    """Factor u v and read off nodes (inner zeros) and targets (values
    of t there).

    The inner factor must have simple, strictly interior zeros; a zero
    at the origin of order one contributes the node 0.
    """
    uv = p.u * p.v
    try:
        inner, outer = factorize_rational(uv)
    except DomainError as exc:
        if "boundary zero" in str(exc):
            raise DomainError("outer factor not invertible on the circle") from exc
        raise
    if inner.zero_order > 1:
        raise DomainError("reduction requires simple interior zeros")
    nodes = list(inner.zeros)
    if inner.zero_order == 1:
        nodes.insert(0, 0j)
    nodes = np.asarray(nodes, dtype=complex)
    for i in range(nodes.size):
        for j in range(i + 1, nodes.size):
            if abs(nodes[i] - nodes[j]) < 1e-9:
                raise DomainError("reduction requires simple interior zeros")
    targets = np.asarray([p.t(lmb) for lmb in nodes], dtype=complex)
    return PickReduction(nodes=nodes, targets=targets, inner=inner, outer=outer.rational)


def _divide_by_finite_blaschke(g: RationalFunction, inner: InnerFunction, nodes: np.ndarray) -> RationalFunction:
    """Exact rational division g / inner by pairing each inner zero with
    a numerator root of g.

    Root pairing (rather than grid division) keeps the quotient rational
    and avoids error amplification near the interior zeros.
    """
    residual = float(np.max(np.abs(g(nodes)))) if nodes.size else 0.0
    if residual > NODE_MATCH_TOL:
        raise DomainError("division by inner factor failed: cancellation residual too large")
    if nodes.size == 0:
        quotient_num = g.num
    else:
        if g.num.degree < nodes.size:
            raise DomainError("division by inner factor failed: no matching numerator root")
        roots = list(poly_roots(g.num))
        for node in nodes:
            best, best_d = None, NODE_MATCH_TOL * max(1.0, abs(node))
            for i, r in enumerate(roots):
                d = abs(r - node)
                if d <= best_d:
                    best, best_d = i, d
            if best is None:
                raise DomainError("division by inner factor failed: no matching numerator root")
            roots.pop(best)
        quotient_num = Polynomial.from_roots(roots, leading=g.num.leading)
    # inner = c * prod(z - node) / prod(1 - conj(a) z) with |c| = 1
    c = inner.lam * np.prod([-abs(a) / a for a in inner.zeros]) if inner.zeros.size else inner.lam
    num = quotient_num * np.conj(c)
    for a in inner.zeros:
        num = num * Polynomial([1.0, -np.conj(a)])
    return RationalFunction(num, g.den, reduce=False)


@dataclass(frozen=True)
class MatchSolution:
    """Compensator, optimal error function, intermediates, and the
    verified optimal value."""

    c: RationalFunction
    h: RationalFunction
    f: RationalFunction
    achieved: float
    nodes: np.ndarray
    targets: np.ndarray
    radius: float


def model_match(p: MatchProblem, tol: float = 1e-4, slack: float = 1e-6) -> MatchSolution:
    """Solve the cascade approximation problem.

    Pipeline: reduce to interpolation data, find the minimal radius,
    solve the interpolation at radius * (1 + slack), divide out the
    inner factor exactly, and undo the outer factor.  The achieved
    sup-norm is re-measured on refined grids and must agree with the
    minimal radius within ``tol``.
    """
    red = reduce_to_pick(p)
    if red.nodes.size == 0:
        radius = 0.0
        h = RationalFunction(0.0, 1.0)
    else:
        radius = minimal_radius(red.nodes, red.targets)
        if radius == 0.0:
            h = RationalFunction(0.0, 1.0)
        else:
            h = solve_pick(PickProblem(red.nodes, red.targets, radius * (1.0 + slack)))
    g = p.t - h
    num_scale = max(
        float(np.max(np.abs(p.t.num.coeffs))), float(np.max(np.abs(h.num.coeffs))), 1e-300
    )
    if g.num.is_zero or np.max(np.abs(g.num.coeffs)) <= 1e-12 * num_scale:
        f = RationalFunction(0.0, 1.0)
    else:
        f = _divide_by_finite_blaschke(g, red.inner, red.nodes)
    c = f / red.outer

    diff_num = p.t - p.u * c * p.v
    achieved = refine_sup(lambda z: diff_num.num(z) / diff_num.den(z), tol=min(tol, 1e-6)).value
    if abs(achieved - radius) > tol * max(1.0, radius):
        raise ConvergenceError(
            f"achieved norm {achieved:.6e} does not certify the minimal radius {radius:.6e}",
            best_estimate=achieved,
        )
    return MatchSolution(
        c=c,
        h=h,
        f=f,
        achieved=achieved,
        nodes=red.nodes,
        targets=red.targets,
        radius=radius,
    )


@dataclass(frozen=True)
class MatchReport:
    """Independent re-measurement of a solved instance."""

    grid_norm: float
    achieved: float
    gap: float
    c_causal_stable: bool
    c_reason: str


def verify_match(p: MatchProblem, sol: MatchSolution, grid_n: int = 4096) -> MatchReport:
    """Recompute the error norm on a fresh grid and recheck the
    compensator's stability."""
    diff = p.t - p.u * sol.c * p.v
    grid_norm = float(np.max(np.abs(diff.boundary_values(grid_n))))
    rep = classify(sol.c)
    return MatchReport(
        grid_norm=grid_norm,
        achieved=sol.achieved,
        gap=abs(grid_norm - sol.achieved),
        c_causal_stable=rep.causal_stable,
        c_reason=rep.reason,
    )
