"""JSON-in, JSON-out command line front end.

Every subcommand reads JSON inputs, invokes one pipeline, and writes a
versioned report embedding the inputs, the tolerances used, and any
convergence flags, so runs are reproducible and diffable.  Exit codes:
0 success, 1 domain/convergence error (best-effort payload emitted),
2 usage or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import dirichlet as dy
from . import operators as ops
from .errors import ConvergenceError, DomainError
from .inner_outer import factorize_rational, h1_weak_factor
from .model_matching import MatchProblem, model_match, verify_match
from .pick import PickProblem, is_feasible, minimal_radius, solve_pick
from .rational import Polynomial, RationalFunction, classify, feedback_closure, impulse_response
from .sampling import SampleSet, reconstruct_with_bound
from .signals import Signal, convolve, linf_extremal_witness, lp_norm, stability_report
from .spectrum import BoundaryGrid, fourier_grid, sup_norm_grid

SCHEMA_VERSION = 1


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _signal_from_json(d: dict) -> Signal:
    if "index" in d:
        values = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
        return Signal.from_pairs(np.asarray(d["index"], dtype=int), values)
    return Signal.from_dict(d)


def _grid_or_signal(d: dict, grid_n: int) -> BoundaryGrid:
    if "n" in d:
        return BoundaryGrid.from_dict(d)
    return fourier_grid(_signal_from_json(d), grid_n)


def _pick_problem_from_json(d: dict) -> PickProblem:
    nodes = np.array([complex(p["re"], p["im"]) for p in d["nodes"]], dtype=complex)
    targets = np.array([complex(p["re"], p["im"]) for p in d["targets"]], dtype=complex)
    return PickProblem(nodes, targets, float(d.get("radius", 1.0)))


def _complex_list(values) -> list:
    return [[v.real, v.imag] for v in np.asarray(values, dtype=complex)]


# ---------------------------------------------------------------- handlers


def _cmd_conv(args):
    a = _signal_from_json(_load_json(args.a))
    b = _signal_from_json(_load_json(args.b))
    out = convolve(a, b)
    return {"signal": out.to_dict()}, {}


def _cmd_stability(args):
    k = _signal_from_json(_load_json(args.k))
    rep = stability_report(k)
    result = {
        "l1_norm": rep.l1_norm,
        "linf_gain": rep.linf_gain,
        "l2_gain_upper": rep.l2_gain_upper,
        "l2_gain_exact_when_nonneg": rep.l2_gain_exact_when_nonneg,
    }
    if not k.is_zero:
        witness = linf_extremal_witness(k)
        result["witness"] = witness.to_dict()
        result["witness_response_at_zero"] = [
            convolve(k, witness).at(0).real,
            convolve(k, witness).at(0).imag,
        ]
    return result, {}


def _cmd_spectrum(args):
    phi = _signal_from_json(_load_json(args.signal))
    grid = fourier_grid(phi, args.grid)
    parseval_gap = abs(float(np.mean(np.abs(grid.values) ** 2)) - lp_norm(phi, 2) ** 2)
    return {"grid": grid.to_dict(), "parseval_gap": parseval_gap}, {"grid": args.grid}


def _cmd_classify(args):
    b = RationalFunction.from_dict(_load_json(args.b))
    rep = classify(b)
    return {
        "zeros": _complex_list(rep.zeros),
        "poles": _complex_list(rep.poles),
        "causal_stable": rep.causal_stable,
        "reason": rep.reason,
    }, {}


def _cmd_factor(args):
    b = RationalFunction.from_dict(_load_json(args.b))
    inner, outer = factorize_rational(b)
    z = np.exp(2j * np.pi * np.arange(args.grid) / args.grid)
    recon = inner(z) * outer.rational(z)
    err = float(np.max(np.abs(recon - b.boundary_values(args.grid))))
    weak = h1_weak_factor(b, n=args.grid) if args.weak else None
    result = {
        "inner": inner.to_dict(),
        "outer": outer.rational.to_dict(),
        "reconstruction_error": err,
    }
    if weak is not None:
        result["weak_factorization"] = {
            "h1_norm": weak.h1_norm,
            "f_norm": weak.f_norm,
            "g_norm": weak.g_norm,
        }
    return result, {"grid": args.grid}


def _cmd_nehari(args):
    phi = _signal_from_json(_load_json(args.symbol))
    res = ops.nehari_distance(phi, args.n)
    return {"distance": res.sigma, "converged": res.converged, "n": res.n}, {}


def _cmd_aak(args):
    phi = _signal_from_json(_load_json(args.symbol))
    res = ops.best_causal_approx(phi, n=args.n, grid_n=args.grid)
    return {
        "achieved": res.achieved,
        "approximant": res.approximant.to_dict(),
        "modulus_deviation": res.modulus_deviation,
        "negative_residual": res.negative_residual,
    }, {"grid": args.grid}


def _cmd_toeplitz(args):
    psi = _grid_or_signal(_load_json(args.symbol), args.grid)
    if args.f is not None:
        f = _signal_from_json(_load_json(args.f))
        out = ops.toeplitz_apply(psi, f)
        return {"signal": out.to_dict()}, {"grid": psi.size}
    radii = args.radius if args.radius else [0.9, 0.99, 0.999]
    bracket = ops.toeplitz_norm_lower(psi, radii=radii, n_angles=args.angles)
    return {"lower": bracket.lower, "upper": bracket.upper}, {
        "grid": psi.size,
        "radii": radii,
        "angles": args.angles,
    }


def _cmd_vn_check(args):
    rng = np.random.default_rng(args.seed)
    violations = 0
    worst = -np.inf
    for _ in range(args.trials):
        dim = int(rng.integers(1, args.dim + 1))
        mat = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        norm = np.linalg.norm(mat, 2)
        if norm > 0:
            mat = mat / norm
        deg = int(rng.integers(0, args.degree + 1))
        coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        rep = ops.von_neumann_check(Polynomial(coeffs), mat)
        worst = max(worst, rep.lhs - rep.rhs)
        if not rep.holds:
            violations += 1
    return {"trials": args.trials, "violations": violations, "max_gap": float(worst)}, {
        "seed": args.seed,
        "dim": args.dim,
        "degree": args.degree,
    }


def _cmd_pick(args):
    problem = _pick_problem_from_json(_load_json(args.problem))
    rep = is_feasible(problem, tol=args.tol)
    result = {"feasible": rep.feasible, "min_eig": rep.min_eig}
    result["minimal_radius"] = minimal_radius(problem.nodes, problem.targets)
    if args.solve:
        sol = solve_pick(problem)
        residual = float(np.max(np.abs(sol(problem.nodes) - problem.targets)))
        result["h"] = sol.to_dict()
        result["max_residual"] = residual
    return result, {"tol": args.tol}


def _cmd_match(args):
    problem = MatchProblem(
        t=RationalFunction.from_dict(_load_json(args.t)),
        u=RationalFunction.from_dict(_load_json(args.u)),
        v=RationalFunction.from_dict(_load_json(args.v)),
    )
    sol = model_match(problem, tol=args.tol)
    report = verify_match(problem, sol)
    if args.require_delay and abs(sol.c(0.0)) > 1e-9:
        raise DomainError("compensator violates the requested unit-delay condition C(0) = 0")
    return {
        "c": sol.c.to_dict(),
        "h": sol.h.to_dict(),
        "f": sol.f.to_dict(),
        "achieved": sol.achieved,
        "minimal_radius": sol.radius,
        "nodes": _complex_list(sol.nodes),
        "targets": _complex_list(sol.targets),
        "verification": {
            "grid_norm": report.grid_norm,
            "gap": report.gap,
            "c_causal_stable": report.c_causal_stable,
        },
    }, {"tol": args.tol}


def _cmd_feedback(args):
    plant = RationalFunction.from_dict(_load_json(args.p))
    comp = RationalFunction.from_dict(_load_json(args.c))
    closed = feedback_closure(plant, comp, strict=args.strict)
    rep = classify(closed)
    echo = impulse_response(closed, args.impulse) if args.impulse else None
    result = {
        "closed_loop": closed.to_dict(),
        "causal_stable": rep.causal_stable,
        "reason": rep.reason,
    }
    if echo is not None:
        result["impulse_response"] = echo.to_dict()
    return result, {"strict": args.strict}


def _cmd_sample_reconstruct(args):
    samples = SampleSet.from_dict(_load_json(args.samples))
    value, bound = reconstruct_with_bound(samples, args.t, args.tail_energy)
    return {
        "t": args.t,
        "value": [value.real, value.imag],
        "truncation_bound": bound,
    }, {"tail_energy": args.tail_energy}


def _cmd_dyadic_carleson(args):
    raw = _load_json(args.measure)
    tree = dy.DyadicTree(args.depth)
    weights = np.zeros(tree.size)
    for label, w in raw.items():
        if label not in tree.index:
            raise DomainError(f"vertex {label!r} not present at depth {args.depth}")
        weights[tree.index[label]] = float(w)
    mu = dy.TreeMeasure(tree, weights)
    constant = dy.tree_carleson_constant(mu)
    kernel_bound = 0.0
    for lab in tree.labels:
        k = dy.tree_kernel(tree, lab)
        denom = dy.tree_norm(k) ** 2
        num = float(np.sum(mu.weights * np.abs(k.values) ** 2))
        kernel_bound = max(kernel_bound, num / denom)
    return {"constant": constant, "kernel_test_lower_bound": kernel_bound}, {
        "depth": args.depth
    }


def _cmd_dirichlet(args):
    d = _load_json(args.coeffs)
    coeffs = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
    coef_norm = dy.dirichlet_norm(coeffs, args.alpha)
    area_norm = dy.derivative_area_norm(coeffs, args.alpha)
    return {
        "coefficient_norm": coef_norm,
        "area_norm": area_norm,
        "ratio": area_norm / coef_norm if coef_norm else 0.0,
    }, {"alpha": args.alpha}


# ---------------------------------------------------------------- wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hardylab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, configure):
        sp = sub.add_parser(name)
        sp.add_argument("--out", default=None, help="write the JSON report here")
        configure(sp)
        sp.set_defaults(handler=handler)
        return sp

    add("conv", _cmd_conv, lambda sp: (
        sp.add_argument("--a", required=True),
        sp.add_argument("--b", required=True),
    ))
    add("stability", _cmd_stability, lambda sp: sp.add_argument("--k", required=True))
    add("spectrum", _cmd_spectrum, lambda sp: (
        sp.add_argument("--signal", required=True),
        sp.add_argument("--grid", type=int, default=1024),
    ))
    add("classify", _cmd_classify, lambda sp: sp.add_argument("--b", required=True))
    add("factor", _cmd_factor, lambda sp: (
        sp.add_argument("--b", required=True),
        sp.add_argument("--grid", type=int, default=512),
        sp.add_argument("--weak", action="store_true"),
    ))
    add("nehari", _cmd_nehari, lambda sp: (
        sp.add_argument("--symbol", required=True),
        sp.add_argument("--n", type=int, default=None),
    ))
    add("aak", _cmd_aak, lambda sp: (
        sp.add_argument("--symbol", required=True),
        sp.add_argument("--n", type=int, default=None),
        sp.add_argument("--grid", type=int, default=2048),
    ))
    add("toeplitz", _cmd_toeplitz, lambda sp: (
        sp.add_argument("--symbol", required=True),
        sp.add_argument("--f", default=None),
        sp.add_argument("--grid", type=int, default=1024),
        sp.add_argument("--radius", type=float, action="append"),
        sp.add_argument("--angles", type=int, default=256),
    ))
    add("vn-check", _cmd_vn_check, lambda sp: (
        sp.add_argument("--dim", type=int, default=8),
        sp.add_argument("--degree", type=int, default=6),
        sp.add_argument("--trials", type=int, default=100),
        sp.add_argument("--seed", type=int, default=0),
    ))
    add("pick", _cmd_pick, lambda sp: (
        sp.add_argument("--problem", required=True),
        sp.add_argument("--solve", action="store_true"),
        sp.add_argument("--tol", type=float, default=1e-10),
    ))
    add("match", _cmd_match, lambda sp: (
        sp.add_argument("--t", required=True),
        sp.add_argument("--u", required=True),
        sp.add_argument("--v", required=True),
        sp.add_argument("--tol", type=float, default=1e-4),
        sp.add_argument("--require-delay", action="store_true"),
    ))
    add("feedback", _cmd_feedback, lambda sp: (
        sp.add_argument("--p", required=True),
        sp.add_argument("--c", required=True),
        sp.add_argument("--strict", action="store_true"),
        sp.add_argument("--impulse", type=int, default=0),
    ))

    sample = sub.add_parser("sample")
    sample_sub = sample.add_subparsers(dest="subcommand", required=True)
    sp = sample_sub.add_parser("reconstruct")
    sp.add_argument("--samples", required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--tail-energy", type=float, default=0.0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(handler=_cmd_sample_reconstruct, command="sample reconstruct")

    dyadic = sub.add_parser("dyadic")
    dyadic_sub = dyadic.add_subparsers(dest="subcommand", required=True)
    sp = dyadic_sub.add_parser("carleson")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--depth", type=int, default=8)
    sp.add_argument("--out", default=None)
    sp.set_defaults(handler=_cmd_dyadic_carleson, command="dyadic carleson")

    add("dirichlet", _cmd_dirichlet, lambda sp: (
        sp.add_argument("--coeffs", required=True),
        sp.add_argument("--alpha", type=int, default=1),
    ))
    return parser


def _emit(report: dict, out_path):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        result, tolerances = args.handler(args)
    except ConvergenceError as exc:
        _emit(
            {
                "schema": SCHEMA_VERSION,
                "command": args.command,
                "error": str(exc),
                "best_estimate": exc.best_estimate,
            },
            args.out,
        )
        return 1
    except DomainError as exc:
        _emit({"schema": SCHEMA_VERSION, "command": args.command, "error": str(exc)}, args.out)
        return 1
    except (json.JSONDecodeError, KeyError, TypeError, OSError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    report = {
        "schema": SCHEMA_VERSION,
        "command": args.command,
        "tolerances": tolerances,
        "result": result,
    }
    _emit(report, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
