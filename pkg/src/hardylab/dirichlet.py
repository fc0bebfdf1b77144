"""The Dirichlet-weighted disk space and its dyadic model on the binary
tree.

On the disk, the space weights the n-th Taylor coefficient by (n + 1);
its kernel is a logarithm.  On the rooted binary tree, summation along
geodesics and the increment operator model integration and
differentiation, the kernel for evaluation at a vertex is the summed
geodesic indicator, and embedding testing against a vertex measure
becomes a finite eigenproblem.  Level-n vertices embed at radius
1 - 2^{-n}, tying the two pictures together.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "DyadicTree",
    "TreeFunction",
    "TreeMeasure",
    "I_op",
    "delta_op",
    "tree_norm",
    "tree_inner",
    "tree_kernel",
    "tree_carleson_constant",
    "dirichlet_kernel",
    "dirichlet_norm",
    "derivative_area_norm",
    "embed_tree_in_disk",
    "restrict_to_tree",
]

MAX_CARLESON_DEPTH = 12
MAX_EMBED_DEPTH = 16


class DyadicTree:
    """Rooted binary tree of the given depth.

    Vertices are binary strings of length at most ``depth`` in
    breadth-first order; the root is the empty string, and the
    predecessor of a vertex drops its last bit.
    """

    __slots__ = ("depth", "labels", "index", "parent", "level")

    def __init__(self, depth: int):
        if depth < 0:
            raise DomainError("depth must be nonnegative")
        labels = [""]
        for lvl in range(1, depth + 1):
            labels.extend(format(k, f"0{lvl}b") for k in range(2**lvl))
        object.__setattr__(self, "depth", int(depth))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "index", {lab: i for i, lab in enumerate(labels)})
        parent = np.array(
            [-1] + [self.index[lab[:-1]] for lab in labels[1:]], dtype=int
        )
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "level", np.array([len(lab) for lab in labels], dtype=int))

    def __setattr__(self, name, value):
        raise AttributeError("DyadicTree is immutable")

    @property
    def size(self) -> int:
        return len(self.labels)

    def meet_depth(self, a: str, b: str) -> int:
        """Length of the longest common prefix (depth of the meet)."""
        d = 0
        for x, y in zip(a, b):
            if x != y:
                break
            d += 1
        return d


class TreeFunction:
    """Complex value per vertex, aligned with the tree's vertex order."""

    __slots__ = ("tree", "values")

    def __init__(self, tree: DyadicTree, values):
        vals = np.asarray(values, dtype=complex)
        if vals.shape != (tree.size,):
            raise ValueError("values must assign one number per vertex")
        object.__setattr__(self, "tree", tree)
        object.__setattr__(self, "values", vals.copy())
        self.values.flags.writeable = False

    def __setattr__(self, name, value):
        raise AttributeError("TreeFunction is immutable")

    def at(self, label: str) -> complex:
        return complex(self.values[self.tree.index[label]])

    def to_dict(self) -> dict:
        return {
            lab: [v.real, v.imag] for lab, v in zip(self.tree.labels, self.values)
        }

    @classmethod
    def from_dict(cls, tree: DyadicTree, d: dict) -> "TreeFunction":
        vals = np.zeros(tree.size, dtype=complex)
        for lab, pair in d.items():
            vals[tree.index[lab]] = complex(pair[0], pair[1])
        return cls(tree, vals)


class TreeMeasure:
    """Nonnegative weight per vertex."""

    __slots__ = ("tree", "weights")

    def __init__(self, tree: DyadicTree, weights):
        w = np.asarray(weights, dtype=float)
        if w.shape != (tree.size,):
            raise ValueError("weights must assign one number per vertex")
        if np.any(w < 0):
            raise DomainError("measure weights must be nonnegative")
        object.__setattr__(self, "tree", tree)
        object.__setattr__(self, "weights", w.copy())
        self.weights.flags.writeable = False

    def __setattr__(self, name, value):
        raise AttributeError("TreeMeasure is immutable")

    @classmethod
    def point_mass(cls, tree: DyadicTree, label: str, mass: float = 1.0) -> "TreeMeasure":
        w = np.zeros(tree.size)
        w[tree.index[label]] = mass
        return cls(tree, w)


def I_op(f: TreeFunction) -> TreeFunction:
    """Geodesic sum: (If)(b) adds f over the path from the root to b."""
    tree = f.tree
    out = np.empty(tree.size, dtype=complex)
    out[0] = f.values[0]
    for i in range(1, tree.size):  # parents precede children in BFS order
        out[i] = out[tree.parent[i]] + f.values[i]
    return TreeFunction(tree, out)


def delta_op(f: TreeFunction) -> TreeFunction:
    """Increment along the parent edge; zero at the root.

    Inverse of :func:`I_op` on functions vanishing at the root.
    """
    tree = f.tree
    out = np.empty(tree.size, dtype=complex)
    out[0] = 0.0
    out[1:] = f.values[1:] - f.values[tree.parent[1:]]
    return TreeFunction(tree, out)


def tree_inner(f: TreeFunction, g: TreeFunction) -> complex:
    """f(root) conj(g(root)) plus the increment pairing."""
    df = delta_op(f).values
    dg = delta_op(g).values
    return complex(f.values[0] * np.conj(g.values[0]) + np.sum(df * np.conj(dg)))


def tree_norm(f: TreeFunction) -> float:
    """Root value plus increment energy, square-rooted."""
    df = delta_op(f).values
    return float(np.sqrt(abs(f.values[0]) ** 2 + np.sum(np.abs(df) ** 2)))


def tree_kernel(tree: DyadicTree, label: str) -> TreeFunction:
    """Kernel for evaluation at a vertex: the geodesic indicator, summed.

    Its value at b is 1 + depth of the meet of the two vertices.
    """
    if label not in tree.index:
        raise DomainError(f"no vertex {label!r} in a depth-{tree.depth} tree")
    chi = np.zeros(tree.size, dtype=complex)
    for k in range(len(label) + 1):
        chi[tree.index[label[:k]]] = 1.0
    return I_op(TreeFunction(tree, chi))


def tree_carleson_constant(mu: TreeMeasure) -> float:
    """Exact embedding constant sup over f of (sum |f|^2 dmu) / norm(f)^2.

    In the coordinates (f(root), increments) the norm Gram is the
    identity and the measure-weighted Gram is L^T diag(mu) L with L the
    geodesic summation matrix, so the constant is the top eigenvalue of
    a dense symmetric matrix.  Depth is capped to keep that eigenproblem
    dense and exact.
    """
    tree = mu.tree
    if tree.depth > MAX_CARLESON_DEPTH:
        raise DomainError(f"depth {tree.depth} exceeds the dense-eigenproblem cap {MAX_CARLESON_DEPTH}")
    size = tree.size
    lmat = np.zeros((size, size))
    for i, lab in enumerate(tree.labels):
        for k in range(len(lab) + 1):
            lmat[i, tree.index[lab[:k]]] = 1.0
    weighted = lmat * np.sqrt(mu.weights)[:, None]
    gram = weighted.T @ weighted
    return float(np.linalg.eigvalsh(gram)[-1])


def dirichlet_kernel(z, w) -> complex:
    """Reproducing kernel: log(1 / (1 - conj(z) w)) / (conj(z) w).

    Evaluated through the series sum (conj(z) w)^n / (n + 1) near the
    origin (where the closed form is indeterminate) and the closed form
    elsewhere.
    """
    s = np.conj(complex(z)) * complex(w)
    if abs(s) >= 1:
        raise DomainError("kernel requires |conj(z) w| < 1")
    if abs(s) < 0.5:
        total, term, n = 0j, 1.0 + 0j, 0
        while abs(term) > 1e-18 * max(1.0, abs(total)):
            total += term / (n + 1)
            n += 1
            term *= s
        return complex(total)
    return complex(-np.log1p(-s) / s)


def dirichlet_norm(coeffs, weight_power: int = 1) -> float:
    """Coefficient norm sqrt(sum (n+1)^a |c_n|^2) for a in {0, 1}.

    Power 0 is the boundary energy norm, power 1 the Dirichlet norm; the
    former never exceeds the latter.
    """
    if weight_power not in (0, 1):
        raise DomainError("weight power must be 0 or 1")
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    w = (np.arange(c.size) + 1.0) ** weight_power
    return float(np.sqrt(np.sum(w * np.abs(c) ** 2)))


def derivative_area_norm(
    coeffs,
    weight_power: int = 1,
    start_radial: int = 16,
    start_angles: int = 64,
    rtol: float = 1e-10,
    max_refine: int = 10,
) -> float:
    """Norm through the derivative's weighted area integral:
    sqrt(|f(0)|^2 + (1/pi) integral |f'|^2 (1 - |z|^2)^{1 - a} dxdy).

    Polar quadrature (Gauss-Legendre radially, trapezoid in angle),
    refined until stable.  Comparable to the coefficient norm with
    two-sided constants in [1, 2]; exact equality is not a property of
    these conventions.
    """
    if weight_power not in (0, 1):
        raise DomainError("weight power must be 0 or 1")
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    head = abs(c[0]) ** 2 if c.size else 0.0
    dc = c[1:] * np.arange(1, c.size)
    if dc.size == 0:
        return float(np.sqrt(head))

    def level(n_rad, n_ang):
        x, wq = np.polynomial.legendre.leggauss(n_rad)
        r = 0.5 * (x + 1.0)
        wr = 0.5 * wq
        theta = 2.0 * np.pi * np.arange(n_ang) / n_ang
        zgrid = r[:, None] * np.exp(1j * theta)[None, :]
        dvals = np.polynomial.polynomial.polyval(zgrid, dc)
        weight = (1.0 - np.abs(zgrid) ** 2) ** (1 - weight_power)
        integrand = np.abs(dvals) ** 2 * weight
        return float(np.sum(integrand * (wr * r)[:, None]) * (2.0 * np.pi / n_ang) / np.pi)

    n_rad, n_ang = max(start_radial, dc.size + 2), max(start_angles, 4 * c.size)
    current = level(n_rad, n_ang)
    for _ in range(max_refine):
        n_rad *= 2
        n_ang *= 2
        nxt = level(n_rad, n_ang)
        if abs(nxt - current) <= rtol * max(1.0, current):
            return float(np.sqrt(head + nxt))
        current = nxt
    raise ConvergenceError("area quadrature did not stabilize", best_estimate=np.sqrt(head + current))


def embed_tree_in_disk(depth: int) -> dict:
    """Map each vertex to its disk realization.

    The root sits at the origin; the 2^n level-n vertices sit evenly on
    the circle of radius 1 - 2^{-n}, each inside its parent's angular
    sector.
    """
    if depth > MAX_EMBED_DEPTH:
        raise DomainError(f"depth {depth} exceeds the embedding cap {MAX_EMBED_DEPTH}")
    tree = DyadicTree(depth)
    out = {}
    for lab in tree.labels:
        n = len(lab)
        if n == 0:
            out[lab] = 0j
            continue
        k = int(lab, 2)
        radius = 1.0 - 2.0**-n
        out[lab] = radius * np.exp(2j * np.pi * (k + 0.5) / 2**n)
    return out


def restrict_to_tree(coeffs, tree: DyadicTree) -> TreeFunction:
    """Evaluate a Taylor polynomial at the embedded vertices."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    embedding = embed_tree_in_disk(tree.depth)
    pts = np.array([embedding[lab] for lab in tree.labels])
    vals = np.polynomial.polynomial.polyval(pts, c)
    return TreeFunction(tree, vals)
