"""Command-line interface.

Every subcommand emits line-delimited JSON records (schema version 1) to
--out when given, else to standard output, followed by a human-readable
summary line prefixed with 'summary:'. Randomized subcommands take explicit
seeds so reruns reproduce byte-identical records apart from timestamps.

Exit codes: 0 success, 1 computation or verification failure, 2 bad
arguments or missing input file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

import numpy as np

from . import experiments, solver
from .backend import backend_name
from .encoding import min_qubits
from .graphs import (
    GraphParseError,
    generate_random_instance,
    parse_graph_file,
    write_graph,
)
from .loss import default_alpha
from .parent import build_parent_hamiltonian, verify_parent_hamiltonian
from .training import TrainConfig

SCHEMA_VERSION = 1


class _CliError(Exception):
    def __init__(self, message, code=1):
        super().__init__(message)
        self.code = code


def _record(command: str, config: dict, metrics: dict) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "command": command,
        "config": config,
        "metrics": metrics,
    }


def _emit(records, out_path, summary: str):
    lines = [json.dumps(r, sort_keys=True) for r in records]
    if out_path:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        for line in lines:
            print(line)
    print(f"summary: {summary}")


def _load_graph(path, fmt):
    if not os.path.exists(path):
        raise _CliError(f"graph file not found: {path}", code=2)
    try:
        return parse_graph_file(path, fmt)
    except GraphParseError as exc:
        raise _CliError(f"{path}: {exc}", code=1) from exc


def _train_config(args, seed) -> TrainConfig:
    return TrainConfig(
        learning_rate=args.lr,
        max_epochs=args.max_epochs,
        relaxed_stopping=args.relaxed_stopping,
        seed=seed,
    )


def _solve_one(task):
    g, k, layers, cfg, best_known, alpha, beta, shots, exact_value = task
    res = solver.solve(
        g, k, layers=layers, cfg=cfg, best_known=best_known,
        alpha=alpha, beta=beta, shots=shots, exact_value=exact_value,
    )
    return cfg.seed, res


def cmd_solve(args) -> int:
    g = _load_graph(args.graph, args.format)
    alpha = None if args.alpha == "auto" else float(args.alpha)
    exact_value = None
    if g.num_vertices <= 26 and g.num_edges:
        from .graphs import exact_maxcut

        exact_value = exact_maxcut(g)[0]
    tasks = [
        (
            g, args.k, args.layers, _train_config(args, args.seed_base + i),
            args.best_known, alpha, args.beta, args.shots, exact_value,
        )
        for i in range(args.seeds)
    ]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_solve_one, tasks))
    else:
        outcomes = [_solve_one(t) for t in tasks]

    config = {
        "graph": args.graph, "format": args.format, "k": args.k,
        "layers": args.layers, "alpha": args.alpha, "beta": args.beta,
        "shots": args.shots, "best_known": args.best_known,
        "lr": args.lr, "max_epochs": args.max_epochs,
        "relaxed_stopping": args.relaxed_stopping, "backend": backend_name(),
    }
    records = []
    for seed, res in outcomes:
        metrics = {
            "seed": seed,
            "cut": res.cut,
            "readout_cut": res.readout_cut,
            "n": res.n, "k": res.k, "layers": res.layers,
            "epochs": res.trace.epochs,
            "best_loss": res.trace.best_loss if res.trace.losses else None,
            "wall_time": res.trace.wall_time,
            "ratio": res.ratio,
            "ratio_exact": res.ratio_exact,
        }
        records.append(_record("solve", config, metrics))

    ratios = [r.ratio if r.ratio is not None else r.ratio_exact for _, r in outcomes]
    cuts = [r.cut for _, r in outcomes]
    if all(r is not None for r in ratios):
        summary = (
            f"solve {args.graph}: mean r {np.mean(ratios):.4f}, "
            f"max r {np.max(ratios):.4f} over {args.seeds} seeds"
        )
    else:
        summary = (
            f"solve {args.graph}: mean cut {np.mean(cuts):.2f}, "
            f"max cut {np.max(cuts):.2f} over {args.seeds} seeds"
        )
    _emit(records, args.out, summary)
    return 0


def cmd_plateau(args) -> int:
    graph = _load_graph(args.graph, args.format) if args.graph else None
    report = experiments.plateau_variance(
        args.n, args.k, args.depth_rows, args.trials, args.seed,
        graph=graph, alpha=args.alpha, beta=args.beta,
    )
    config = {
        "n": args.n, "k": args.k, "depth_rows": args.depth_rows,
        "trials": args.trials, "seed": args.seed, "alpha": args.alpha,
        "beta": args.beta, "graph": args.graph, "backend": backend_name(),
    }
    metrics = {f: getattr(report, f) for f in report.__dataclass_fields__}
    _emit(
        [_record("plateau", config, metrics)], args.out,
        f"normalized variance {report.normalized_variance:.3e} "
        f"(predicted {report.predicted_normalized:.3e}), "
        f"mean {report.mean:.3e} +- {report.stderr:.3e}",
    )
    return 0


def cmd_bound(args) -> int:
    g = _load_graph(args.graph, args.format)
    if args.alpha == "auto":
        if args.k is None:
            raise _CliError("--alpha auto needs --k to derive the default", code=2)
        alpha = default_alpha(min_qubits(g.num_vertices, args.k), args.k)
    else:
        alpha = float(args.alpha)
    shots = experiments.sample_bound(g, args.eps, args.delta, alpha)
    config = {
        "graph": args.graph, "format": args.format, "eps": args.eps,
        "delta": args.delta, "alpha": alpha, "k": args.k,
    }
    _emit(
        [_record("bound", config, {"shots_per_family": shots})], args.out,
        f"{shots} shots per family for eps={args.eps}, delta={args.delta}, alpha={alpha}",
    )
    return 0


def cmd_parentham(args) -> int:
    g = _load_graph(args.graph, args.format)
    ph = build_parent_hamiltonian(g, args.k)
    m = g.num_vertices
    if args.exhaustive:
        if m > 16:
            raise _CliError("--exhaustive limited to m <= 16", code=2)
        assignments = (
            np.array([1 - 2 * ((c >> v) & 1) for v in range(m)]) for c in range(1 << (m - 1))
        )
    else:
        rng = np.random.default_rng(args.seed)
        assignments = (rng.choice((-1, 1), size=m) for _ in range(args.samples))
    worst = 0.0
    count = 0
    for x in assignments:
        worst = max(worst, verify_parent_hamiltonian(ph, x))
        count += 1
    config = {
        "graph": args.graph, "format": args.format, "k": args.k,
        "exhaustive": args.exhaustive, "samples": args.samples, "seed": args.seed,
    }
    metrics = {
        "num_colors": ph.num_colors,
        "total_qubits": ph.total_qubits,
        "terms": len(ph.terms),
        "assignments_checked": count,
        "worst_discrepancy": worst,
    }
    ok = worst < 1e-9
    _emit(
        [_record("parentham", config, metrics)], args.out,
        f"{ph.num_colors} colors, {ph.total_qubits} qubits, "
        f"worst |Tr[H rho] - cut| = {worst:.3e} over {count} assignments "
        f"({'OK' if ok else 'FAILED'})",
    )
    return 0 if ok else 1


def cmd_gen(args) -> int:
    g = generate_random_instance(args.m, args.deg, args.seed, max_retries=args.retries)
    write_graph(g, args.out)
    print(
        f"summary: wrote {args.out}: m={g.num_vertices}, |E|={g.num_edges}, "
        f"mean degree {2 * g.num_edges / g.num_vertices:.2f}"
    )
    return 0


def cmd_ablate(args) -> int:
    instances = [
        generate_random_instance(
            args.m, args.deg,
            seed=int(np.random.default_rng([args.seed, i]).integers(2**31)),
        )
        for i in range(args.instances)
    ]
    variants = args.variants.split(",")
    results = experiments.ablation_histograms(
        instances, args.k, layers=args.layers, variants=variants,
        inits=args.inits, seed=args.seed, cfg=_train_config(args, seed=0),
    )
    config = {
        "m": args.m, "instances": args.instances, "k": args.k,
        "layers": args.layers, "variants": variants, "inits": args.inits,
        "deg": args.deg, "seed": args.seed, "backend": backend_name(),
    }
    records = []
    parts = []
    for name, res in results.items():
        hist, edges = np.histogram(res.expectations, bins=40, range=(-1.0, 1.0))
        metrics = {
            "variant": name,
            "mean_abs_expectation": res.mean_abs_expectation,
            "mean_ratio_readout": res.mean_ratio_readout,
            "mean_ratio_refined": res.mean_ratio_refined,
            "histogram_counts": hist.tolist(),
            "histogram_edges": edges.tolist(),
        }
        records.append(_record("ablate", config, metrics))
        parts.append(f"{name}: |e|={res.mean_abs_expectation:.3f} r={res.mean_ratio_refined:.3f}")
    _emit(records, args.out, "; ".join(parts))
    return 0


def cmd_sweep(args) -> int:
    m_values = [int(v) for v in args.m_values.split(",")]
    points = experiments.gate_budget_sweep(
        m_values, args.k, args.target_r,
        instances=args.instances, inits=args.inits, seed=args.seed,
        max_layers=args.max_layers, cfg=_train_config(args, seed=0),
    )
    config = {
        "m_values": m_values, "k": args.k, "target_r": args.target_r,
        "instances": args.instances, "inits": args.inits, "seed": args.seed,
        "max_layers": args.max_layers, "backend": backend_name(),
    }
    records = [
        _record("sweep", config, {f: getattr(p, f) for f in p.__dataclass_fields__})
        for p in points
    ]
    summary = "; ".join(
        f"m={p.m}: {p.ms_gates} MS gates ({p.layers} layers"
        + ("" if p.reached else ", censored") + ")"
        for p in points
    )
    _emit(records, args.out, summary)
    return 0


def _add_graph_args(p, required=True):
    p.add_argument("--graph", required=required, help="path to a graph file")
    p.add_argument(
        "--format", default="gset", choices=("gset", "weighted-list"),
        help="input format (same grammar; Gset conventionally unit-weighted)",
    )


def _add_train_args(p):
    p.add_argument("--lr", type=float, default=1e-3, help="Adam learning rate")
    p.add_argument("--max-epochs", type=int, default=20000)
    p.add_argument("--relaxed-stopping", action="store_true",
                   help="stop on 150 non-improving epochs instead of the windowed rule")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="paulicut",
        description="Qubit-efficient MaxCut via Pauli-correlation encodings. "
        "Cut values count each cut edge twice (the 1 - x_i x_j convention); "
        "supply --best-known in the same convention.",
    )
    default_jobs = int(os.environ.get("PAULICUT_JOBS", "1"))
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="train the ansatz on a graph and report cuts")
    _add_graph_args(p)
    p.add_argument("--k", type=int, required=True, help="Pauli weight of the encoding")
    p.add_argument("--layers", type=int, default=None, help="brickwork layers (default ~m/n)")
    p.add_argument("--seeds", type=int, default=1, help="number of independent seeds")
    p.add_argument("--seed-base", type=int, default=0)
    p.add_argument("--alpha", default="auto", help="loss sharpness, or 'auto'")
    p.add_argument("--beta", type=float, default=0.5, help="regularization strength")
    p.add_argument("--shots", type=int, default=0,
                   help="0 = exact expectations; >0 samples per measurement family")
    p.add_argument("--best-known", type=float, default=None,
                   help="reference cut for ratios (doubled convention, user-supplied)")
    p.add_argument("--jobs", type=int, default=default_jobs,
                   help="worker processes (default $PAULICUT_JOBS or 1)")
    p.add_argument("--out", default=None, help="write JSONL records here instead of stdout")
    _add_train_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("plateau", help="loss variance at random parameters")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--depth-rows", type=int, required=True,
                   help="circuit depth in rows (one layer = 2 rows)")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--alpha", type=float, default=1.5)
    p.add_argument("--beta", type=float, default=0.0)
    _add_graph_args(p, required=False)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_plateau)

    p = sub.add_parser("bound", help="shots-per-family bound for a target precision")
    _add_graph_args(p)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--alpha", default="auto")
    p.add_argument("--k", type=int, default=None, help="needed when --alpha auto")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("parentham", help="build a parent Hamiltonian and verify traces")
    _add_graph_args(p)
    p.add_argument("--k", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--exhaustive", action="store_true",
                       help="check every assignment (m <= 16)")
    group.add_argument("--samples", type=int, default=None, help="random assignments to check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_parentham)

    p = sub.add_parser("gen", help="write a post-selected random instance")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--deg", type=float, default=4.0, help="target mean degree (>= 3)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--retries", type=int, default=500)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("ablate", help="compare loss variants on random instances")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--instances", type=int, default=10)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--layers", type=int, required=True)
    p.add_argument("--variants", default="tanh,tanh+reg,quadratic")
    p.add_argument("--inits", type=int, default=3)
    p.add_argument("--deg", type=float, default=4.0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    _add_train_args(p)
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("sweep", help="gate budget needed to reach a target readout ratio")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m-values", required=True, help="comma-separated problem sizes")
    p.add_argument("--target-r", type=float, required=True)
    p.add_argument("--instances", type=int, default=2)
    p.add_argument("--inits", type=int, default=2)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-layers", type=int, default=32)
    p.add_argument("--out", default=None)
    _add_train_args(p)
    p.set_defaults(func=cmd_sweep)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, RuntimeError, FloatingPointError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
