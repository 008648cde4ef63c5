"""Command-line surface: cluster runs, walk dumps, sweeps, and benchmarks.

Reports go to standard output as JSON (or CSV for walk distributions);
diagnostics go to standard error, so outputs pipe cleanly into plotting
tools. Every JSON report carries a schema version and a manifest of the
resolved configuration, the input digest, and the tool version.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .datasets import (
    BENCHMARK_FILES,
    CsvSchema,
    LabeledDataset,
    load_csv,
    normalize_minmax,
)
from .engine import AlgoConfig, run
from .evaluation import (
    SweepGrid,
    accuracy,
    benchmark_report_json,
    benchmark_report_text,
    benchmark_table,
    sweep,
    sweep_report_json,
    sweep_report_text,
)
from .walk import (
    distribution,
    distribution_csv,
    hadamard_walk,
    mcms_walk,
    scms_walk,
    unit_biased_walk,
    unit_multi_coin_walk,
)

__all__ = ["main"]

SCHEMA_VERSION = 1


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")


def _default_seed() -> int:
    env = os.environ.get("QWC_SEED")
    return int(env) if env else 0


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _manifest(subcommand: str, config: dict, input_digest) -> dict:
    return {
        "subcommand": subcommand,
        "config": config,
        "input_digest": input_digest,
        "tool_version": __version__,
    }


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _load_input(args) -> LabeledDataset:
    schema = CsvSchema(label_col=args.label_col, header=args.header)
    dataset = load_csv(args.input, schema, seed=args.seed)
    if args.normalize:
        dataset = normalize_minmax(dataset)
    return dataset


def _config_from_args(args) -> AlgoConfig:
    return AlgoConfig(
        variant=args.variant,
        k=args.k,
        r=args.r,
        epsilon=args.epsilon,
        theta=args.theta,
        seed=args.seed,
        max_iter=args.max_iter,
        target_clusters=args.target_clusters,
    )


def _config_dict(cfg: AlgoConfig, extra: dict | None = None) -> dict:
    out = {
        "variant": cfg.variant,
        "k": cfg.k,
        "r": cfg.r,
        "epsilon": cfg.epsilon,
        "theta": cfg.theta,
        "seed": cfg.seed,
        "max_iter": cfg.max_iter,
        "target_clusters": cfg.target_clusters,
    }
    if extra:
        out.update(extra)
    return out


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="delimited dataset file")
    parser.add_argument("--label-col", type=int, default=None,
                        help="column index of the class label, if any")
    parser.add_argument("--header", action="store_true",
                        help="skip the first row of the input file")
    parser.add_argument("--normalize", action="store_true",
                        help="min-max scale every feature onto [0, 1] before running")
    parser.add_argument("--variant", choices=("scms", "mcms"), default="mcms")
    parser.add_argument("--k", type=int, default=14, help="nearest-neighbor count")
    parser.add_argument("--r", type=int, default=6, help="walk step / coin count")
    parser.add_argument("--epsilon", type=float, default=None,
                        help="convergence threshold on summed travel")
    parser.add_argument("--theta", type=float, default=None,
                        help="linkage radius for cluster extraction")
    parser.add_argument("--seed", type=int, default=_default_seed(),
                        help="RNG seed (falls back to QWC_SEED)")
    parser.add_argument("--max-iter", type=int, default=500)
    parser.add_argument("--target-clusters", type=int, default=None,
                        help="merge down to this many clusters")


def _cmd_cluster(args) -> int:
    dataset = _load_input(args)
    cfg = _config_from_args(args)
    result = run(dataset.features, cfg)
    acc = (
        accuracy(result.labels, dataset.labels)
        if dataset.labels is not None
        else None
    )
    resolved = result.config
    payload = {
        "schema": SCHEMA_VERSION,
        "manifest": _manifest(
            "cluster",
            _config_dict(
                resolved,
                {"normalize": args.normalize, "label_col": args.label_col},
            ),
            _digest(Path(args.input)),
        ),
        "labels": [int(x) for x in result.labels],
        "clusters": result.n_clusters,
        "accuracy": acc,
        "iterations": result.iterations,
        "omega_trace": [float(w) for w in result.omega_trace],
    }
    _emit(payload)
    return 0


def _cmd_walkdist(args) -> int:
    if args.steps < 1:
        raise ValueError(f"--steps must be >= 1, got {args.steps}")
    if args.mode == "hadamard":
        dist = hadamard_walk(args.steps)
    elif args.mode == "scms":
        if args.unit_steps:
            dist = distribution(unit_biased_walk(args.rho, args.steps))
        else:
            dist = distribution(scms_walk(args.rho, 1.0, args.steps))
    else:  # mcms
        if not args.etas:
            raise ValueError("--etas is required for --mode mcms")
        if args.unit_steps:
            dist = distribution(unit_multi_coin_walk(args.etas))
        else:
            dist = distribution(mcms_walk(args.etas, 1.0))
    sys.stdout.write(distribution_csv(dist))
    return 0


def _cmd_sweep(args) -> int:
    if not args.ks or not args.rs or not args.seeds:
        raise ValueError("--ks, --rs and --seeds must be non-empty")
    dataset = _load_input(args)
    if dataset.labels is None:
        raise ValueError("sweep needs --label-col to score accuracy")
    base = _config_from_args(args)
    report = sweep(dataset, args.variant, args.ks, args.rs, args.seeds, base)
    if args.format == "text":
        sys.stdout.write(sweep_report_text(report))
        return 0
    payload = {
        "schema": SCHEMA_VERSION,
        "manifest": _manifest(
            "sweep",
            _config_dict(
                base,
                {
                    "ks": args.ks,
                    "rs": args.rs,
                    "seeds": args.seeds,
                    "normalize": args.normalize,
                    "label_col": args.label_col,
                },
            ),
            _digest(Path(args.input)),
        ),
        "report": sweep_report_json(report),
    }
    _emit(payload)
    return 0


def _cmd_bench(args) -> int:
    directory = Path(args.datasets_dir)
    names = args.datasets or sorted(BENCHMARK_FILES)
    unknown = [n for n in names if n not in BENCHMARK_FILES]
    if unknown:
        raise ValueError(f"unknown datasets: {', '.join(unknown)}")
    paths = {name: directory / BENCHMARK_FILES[name] for name in names}
    missing = [str(p) for p in paths.values() if not p.exists()]
    if missing:
        raise FileNotFoundError("missing dataset files: " + ", ".join(missing))

    loaded = [
        (name, load_csv(paths[name], CsvSchema(label_col=-1), seed=args.seed))
        for name in names
    ]
    grid = SweepGrid(ks=tuple(args.ks), rs=tuple(args.rs), seeds=tuple(args.seeds))
    report = benchmark_table(loaded, grid, variants=args.variants)
    if args.format == "text":
        sys.stdout.write(benchmark_report_text(report))
        return 0
    payload = {
        "schema": SCHEMA_VERSION,
        "manifest": _manifest(
            "bench",
            {
                "datasets": names,
                "ks": args.ks,
                "rs": args.rs,
                "seeds": args.seeds,
                "variants": list(args.variants),
                "seed": args.seed,
            },
            {name: _digest(path) for name, path in paths.items()},
        ),
        "report": benchmark_report_json(report),
    }
    _emit(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwclust",
        description="Quantum-walk particle clustering and walk diagnostics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cluster = sub.add_parser("cluster", help="cluster one dataset, JSON report")
    _add_run_flags(p_cluster)
    p_cluster.set_defaults(func=_cmd_cluster)

    p_walk = sub.add_parser("walkdist", help="exact walk distribution as CSV")
    p_walk.add_argument("--mode", choices=("hadamard", "scms", "mcms"), required=True)
    p_walk.add_argument("--steps", type=int, default=100)
    p_walk.add_argument("--rho", type=float, default=0.8, help="coin bias for scms")
    p_walk.add_argument("--etas", type=_float_list, default=None,
                        help="comma-separated coin biases for mcms")
    p_walk.add_argument("--unit-steps", action="store_true",
                        help="fixed +-1 steps instead of displacement fractions")
    p_walk.set_defaults(func=_cmd_walkdist)

    p_sweep = sub.add_parser("sweep", help="accuracy sweep over k, r, seeds")
    _add_run_flags(p_sweep)
    p_sweep.add_argument("--ks", type=_int_list, required=True)
    p_sweep.add_argument("--rs", type=_int_list, required=True)
    p_sweep.add_argument("--seeds", type=_int_list, required=True)
    p_sweep.add_argument("--format", choices=("json", "text"), default="json")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_bench = sub.add_parser("bench", help="benchmark report over canonical datasets")
    p_bench.add_argument("--datasets-dir", required=True)
    p_bench.add_argument("--datasets", nargs="*", default=None,
                         help=f"names among: {', '.join(sorted(BENCHMARK_FILES))}")
    p_bench.add_argument("--ks", type=_int_list,
                         default=[5, 8, 11, 14, 17, 20, 23, 26, 29])
    p_bench.add_argument("--rs", type=_int_list, default=[5, 6])
    p_bench.add_argument("--seeds", type=_int_list, default=list(range(10)))
    p_bench.add_argument("--variants", nargs="*", choices=("scms", "mcms"),
                         default=["scms", "mcms"])
    p_bench.add_argument("--seed", type=int, default=_default_seed(),
                         help="imputation seed for dataset loading")
    p_bench.add_argument("--format", choices=("json", "text"), default="json")
    p_bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
