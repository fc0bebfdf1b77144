"""Minimal-sup-norm interpolation at finitely many disk points.

Feasibility of interpolating targets mu_j at nodes lambda_j with a
bounded analytic function of sup-norm at most R is decided by positive
semidefiniteness of the kernel-weighted matrix
[(1 - mu_i conj(mu_j) / R^2) / (1 - lambda_i conj(lambda_j))].  The
minimal radius follows by bisection (the smallest eigenvalue is
nondecreasing in R), and the interpolant itself is built by one-point
Schur reduction, giving a rational function of degree below the number
of nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .rational import RationalFunction, compose_mobius
from .spectrum import refine_sup

__all__ = [
    "PickProblem",
    "FeasibilityReport",
    "pick_matrix",
    "is_feasible",
    "minimal_radius",
    "solve_pick",
]

NODE_SEPARATION = 1e-9


@dataclass(frozen=True)
class PickProblem:
    """Interpolation data: distinct disk nodes, complex targets, radius."""

    nodes: np.ndarray
    targets: np.ndarray
    radius: float = 1.0

    def __post_init__(self):
        nodes = np.atleast_1d(np.asarray(self.nodes, dtype=complex))
        targets = np.atleast_1d(np.asarray(self.targets, dtype=complex))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "radius", float(self.radius))
        if nodes.size == 0 or nodes.size != targets.size:
            raise DomainError("nodes and targets must be nonempty and equally long")
        if np.any(np.abs(nodes) >= 1):
            raise DomainError("nodes must lie inside the unit disk")
        if self.radius <= 0:
            raise DomainError("radius must be positive")
        for i in range(nodes.size):
            for j in range(i + 1, nodes.size):
                if abs(nodes[i] - nodes[j]) < NODE_SEPARATION:
                    raise DomainError("coincident interpolation nodes")


def pick_matrix(p: PickProblem) -> np.ndarray:
    """Entry (i, j) = (1 - mu_i conj(mu_j)/R^2) / (1 - lambda_i conj(lambda_j));
    Hermitian by construction."""
    lam, mu, r = p.nodes, p.targets, p.radius
    num = 1.0 - np.outer(mu, np.conj(mu)) / r**2
    den = 1.0 - np.outer(lam, np.conj(lam))
    return num / den


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    min_eig: float


def is_feasible(p: PickProblem, tol: float = 1e-10) -> FeasibilityReport:
    """Feasible iff the Pick matrix has no eigenvalue below -tol * scale."""
    eigs = np.linalg.eigvalsh(pick_matrix(p))
    scale = max(1.0, float(np.max(np.abs(eigs))))
    min_eig = float(eigs[0])
    return FeasibilityReport(feasible=min_eig >= -tol * scale, min_eig=min_eig)


def minimal_radius(nodes, targets, tol: float = 1e-10, feas_tol: float = 1e-14) -> float:
    """Smallest radius at which the data is feasible, by bisection.

    The returned value is the certified-feasible end of a bracket of
    width at most ``tol``.  The bisection uses a near-machine
    eigenvalue threshold (``feas_tol``) so the cushion does not widen
    the bracket.  All-zero targets short-circuit to zero.
    """
    nodes = np.atleast_1d(np.asarray(nodes, dtype=complex))
    targets = np.atleast_1d(np.asarray(targets, dtype=complex))
    peak = float(np.max(np.abs(targets))) if targets.size else 0.0
    if peak == 0.0:
        return 0.0

    def feasible(r):
        return is_feasible(PickProblem(nodes, targets, r), tol=feas_tol).feasible

    lo = peak * 1e-6
    hi = max(1.0, 2.0 * peak)
    for _ in range(200):
        if feasible(hi):
            break
        hi *= 2.0
    else:
        raise ConvergenceError("no feasible radius found")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _schur_recurse(nodes: np.ndarray, targets: np.ndarray, boundary_tol: float) -> RationalFunction:
    """One-point reduction: peel the first node, solve the smaller
    problem, undo the disk automorphisms.

    All targets live in the closed unit disk (data normalized by the
    radius).  A boundary target forces the constant solution, which is
    only consistent when every remaining target agrees with it.
    """
    w1 = complex(targets[0])
    if len(nodes) == 1:
        return RationalFunction([w1], [1.0], reduce=False)
    if abs(w1) > 1.0 + 1e-9:
        raise DomainError("interpolation step left the unit ball: data infeasible")
    if abs(w1) >= 1.0 - boundary_tol:
        if np.max(np.abs(targets[1:] - w1)) > 1e-8:
            raise DomainError("degenerate: unique-solution branch failed")
        return RationalFunction([w1], [1.0], reduce=False)
    lam1 = complex(nodes[0])
    rest_nodes = nodes[1:]
    rest = targets[1:]
    moved = (rest - w1) / (1.0 - np.conj(w1) * rest)
    bl = (rest_nodes - lam1) / (1.0 - np.conj(lam1) * rest_nodes)
    inner_sol = _schur_recurse(rest_nodes, moved / bl, boundary_tol)
    # undo: h = (B h' + w1) / (1 + conj(w1) B h'),  B(z) = (z - lam1)/(1 - conj(lam1) z)
    blaschke = RationalFunction([-lam1, 1.0], [1.0, -np.conj(lam1)], reduce=False)
    lifted = blaschke * inner_sol
    return compose_mobius(lifted, 1.0, w1, np.conj(w1), 1.0)


def solve_pick(
    p: PickProblem,
    feas_tol: float = 1e-10,
    boundary_tol: float = 1e-10,
    residual_tol: float = 1e-8,
    sup_slack: float = 1e-6,
) -> RationalFunction:
    """Rational interpolant of sup-norm at most radius * (1 + slack).

    Strictly feasible data goes through the Schur recursion; data on the
    feasibility boundary (singular Pick matrix) is resolved by the same
    recursion, whose boundary branch produces the unique
    automorphism-product solution or fails loudly.  The interpolation
    residuals and the boundary sup-norm are verified before returning.
    """
    report = is_feasible(p, feas_tol)
    if not report.feasible:
        raise DomainError(f"infeasible interpolation data (min eigenvalue {report.min_eig:.3e})")
    h = _schur_recurse(p.nodes, p.targets / p.radius, boundary_tol)
    sol = RationalFunction(h.num * p.radius, h.den, reduce=False)

    residual = float(np.max(np.abs(sol(p.nodes) - p.targets)))
    if residual > residual_tol * max(1.0, p.radius):
        raise ConvergenceError(
            f"interpolation residual {residual:.3e} exceeds tolerance", best_estimate=residual
        )
    sup = refine_sup(lambda z: sol.num(z) / sol.den(z)).value
    if sup > p.radius * (1.0 + sup_slack):
        raise ConvergenceError(
            f"interpolant sup-norm {sup:.6e} exceeds radius {p.radius:.6e}", best_estimate=sup
        )
    return sol
