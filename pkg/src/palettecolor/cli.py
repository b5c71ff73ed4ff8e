"""Command-line interface.

Subcommands: color, generate, sweep, predict, baseline, validate.
Exit codes: 0 success, 2 input/config error, 3 iteration limit reached,
4 conflict-edge budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

import numpy as np

from . import baseline as baseline_mod
from . import driver, generate, tuner
from . import validation
from .errors import (
    EdgeBudgetExceededError,
    InputError,
    IterationLimitError,
    PaletteColorError,
)
from .graph import graph_view, load_edge_list, load_mtx, pauli_view
from .list_coloring import STRATEGIES
from .pauli import parse_pauli_text

FORMAT_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ITERATION_LIMIT = 3
EXIT_BUDGET = 4


def _default_threads() -> int:
    env = os.environ.get("PALETTECOLOR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _infer_format(path: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    if ext == ".pauli":
        return "pauli"
    if ext == ".mtx":
        return "mtx"
    return "edgelist"


def _load_view(args):
    """Returns (view, pauli_set_or_None)."""
    fmt = args.format or _infer_format(args.input)
    with open(args.input, "r", encoding="utf-8") as f:
        text = f.read()
    if fmt == "pauli":
        if getattr(args, "complement", False):
            raise InputError(
                "--complement is invalid for pauli input (always implicit-complement)"
            )
        ps = parse_pauli_text(text)
        return pauli_view(ps), ps
    if fmt == "mtx":
        g = load_mtx(text)
    elif fmt == "edgelist":
        g = load_edge_list(text)
    else:
        raise InputError(f"unknown format {fmt!r}")
    return graph_view(g, complement=getattr(args, "complement", False)), None


def _write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=2)
        f.write("\n")


def _coloring_payload(color: np.ndarray) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "coloring",
        "n": int(color.size),
        "colors": {str(v): int(c) for v, c in enumerate(color)},
    }


def _stats_payload(result: driver.ColoringResult, mode: str, with_timing: bool) -> dict:
    iterations = []
    for r in result.iterations:
        rec = asdict(r)
        if not with_timing:
            rec.pop("duration_s")
        iterations.append(rec)
    m = result.oracle_edges
    totals = {
        "colors_used": result.total_colors,
        "palette_total": result.palette_total,
        "color_pct": 100.0 * result.total_colors / result.n,
        "oracle_edges": int(m) if m is not None else None,
        "ec_max": result.peak_conflict_edges,
        "ec_max_pct": (100.0 * result.peak_conflict_edges / m) if m else 0.0,
        "peak_memory_proxy_entries": result.peak_memory_proxy,
        "completed": result.completed,
    }
    payload = {
        "format_version": FORMAT_VERSION,
        "kind": "stats",
        "algorithm": "palette",
        "n": result.n,
        "mode": mode,
        "strategy": result.strategy,
        "params": asdict(result.params),
        "iterations": iterations,
        "totals": totals,
    }
    if with_timing:
        payload["timing"] = {"wall_time_s": result.wall_time_s}
    return payload


def _cmd_color(args) -> int:
    view, ps = _load_view(args)
    params = driver.PaletteParams(
        palette_pct=args.palette_pct,
        alpha=args.alpha,
        seed=args.seed,
        max_iterations=args.max_iterations,
    )
    exit_code = EXIT_OK
    try:
        result = driver.run(
            view,
            params,
            strategy=args.conflict_strategy,
            threads=args.threads,
            edge_budget=args.edge_budget,
            block_pairs=args.block_pairs,
        )
    except IterationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        result = exc.partial_result
        exit_code = EXIT_ITERATION_LIMIT
        if result is None:
            return exit_code
    if args.out:
        _write_json(args.out, _coloring_payload(result.color))
    if args.stats_out:
        _write_json(
            args.stats_out, _stats_payload(result, view.mode, not args.no_timing)
        )
    if args.partition_out:
        if ps is None:
            raise InputError("--partition-out requires pauli input")
        with open(args.partition_out, "w", encoding="utf-8") as f:
            f.write(validation.partition_export(result, ps))
    m = result.oracle_edges or 0
    print(
        f"colored {result.n} vertices with {result.total_colors} colors in "
        f"{len(result.iterations)} iterations "
        f"(peak |Ec| {result.peak_conflict_edges}, |E| {m})"
    )
    return exit_code


def _cmd_generate(args) -> int:
    if args.kind == "random-pauli":
        strings = generate.random_pauli_strings(
            args.n, args.num_qubits, seed=args.seed, exclude_identity=args.exclude_identity
        )
        text = generate.pauli_file_text(strings)
    else:
        g = generate.gnp_graph(args.n, args.p, seed=args.seed)
        text = g.to_edge_list_text()
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(text)
    print(f"wrote {args.out}")
    return EXIT_OK


def _parse_grid(text: str) -> list[float]:
    """Comma list ('1,2.5,5') or range 'lo..hi' / 'lo..hi:step' (step 0.5)."""
    text = text.strip()
    if ".." in text:
        rng_part, _, step_part = text.partition(":")
        lo_s, _, hi_s = rng_part.partition("..")
        lo, hi = float(lo_s), float(hi_s)
        step = float(step_part) if step_part else 0.5
        if step <= 0 or hi < lo:
            raise InputError(f"bad grid range {text!r}")
        count = int(round((hi - lo) / step)) + 1
        return [round(lo + k * step, 10) for k in range(count)]
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad grid {text!r}") from None


def _cmd_sweep(args) -> int:
    view, _ = _load_view(args)
    records = tuner.sweep(
        view,
        _parse_grid(args.grid_p),
        _parse_grid(args.grid_a),
        [int(s) for s in args.seeds.split(",")],
        instance=args.instance or os.path.basename(args.input),
        strategy=args.conflict_strategy,
        threads=args.threads,
        max_iterations=args.max_iterations,
    )
    with open(args.out, "w", encoding="utf-8", newline="") as f:
        tuner.write_sweep_csv(records, f)
    print(f"wrote {len(records)} sweep records to {args.out}")
    return EXIT_OK


def _cmd_predict(args) -> int:
    if args.model:
        with open(args.model, "r", encoding="utf-8") as f:
            model = tuner.load_model(f)
    elif args.train:
        with open(args.train, "r", encoding="utf-8") as f:
            records = tuner.read_sweep_csv(f)
        betas = _parse_grid(args.betas) if args.betas else tuner.DEFAULT_BETAS
        points = tuner.build_training_points(records, betas)
        model = tuner.train(
            points,
            grid_p=_parse_grid(args.grid_p) if args.grid_p else tuner.DEFAULT_GRID_P,
            grid_a=_parse_grid(args.grid_a) if args.grid_a else tuner.DEFAULT_GRID_A,
        )
    else:
        raise InputError("predict needs --train sweep.csv or --model model.txt")
    if args.model_out:
        with open(args.model_out, "w", encoding="utf-8") as f:
            tuner.save_model(model, f)
        print(f"wrote model to {args.model_out}")
    if args.beta is not None:
        if args.n is None or args.m is None:
            raise InputError("prediction needs --n and --m")
        p, a = tuner.predict(model, args.beta, args.n, args.m)
        print(json.dumps({"palette_pct": p, "alpha": a}))
    return EXIT_OK


def _cmd_baseline(args) -> int:
    view, _ = _load_view(args)
    result = baseline_mod.greedy_color(view, ordering=args.ordering, seed=args.seed)
    if args.out:
        _write_json(args.out, _coloring_payload(result.color))
    if args.stats_out:
        payload = {
            "format_version": FORMAT_VERSION,
            "kind": "stats",
            "algorithm": "baseline-greedy",
            "n": result.n,
            "strategy": result.ordering,
            "params": {"ordering": result.ordering, "seed": args.seed},
            "iterations": [],
            "totals": {
                "colors_used": result.colors_used,
                "color_pct": 100.0 * result.colors_used / result.n,
                "adjacency_entries": result.adjacency_entries,
            },
        }
        if not args.no_timing:
            payload["timing"] = {"wall_time_s": result.runtime_s}
        _write_json(args.stats_out, payload)
    print(
        f"{result.ordering} greedy colored {result.n} vertices with "
        f"{result.colors_used} colors ({result.adjacency_entries} adjacency entries)"
    )
    return EXIT_OK


def _cmd_validate(args) -> int:
    view, _ = _load_view(args)
    with open(args.coloring, "r", encoding="utf-8") as f:
        payload = json.load(f)
    if payload.get("kind") != "coloring":
        raise InputError(f"{args.coloring} is not a coloring file")
    n = int(payload["n"])
    if n != view.backing.n:
        raise InputError(
            f"coloring has {n} vertices but the input has {view.backing.n}"
        )
    color = np.full(n, driver.UNCOLORED, dtype=np.int64)
    for k, v in payload["colors"].items():
        idx = int(k)
        if not 0 <= idx < n:
            raise InputError(f"coloring names vertex {idx}, out of range for n={n}")
        color[idx] = int(v)
    iterations = []
    if args.stats:
        with open(args.stats, "r", encoding="utf-8") as f:
            stats_payload = json.load(f)
        for rec in stats_payload.get("iterations", []):
            rec = dict(rec)
            rec.setdefault("duration_s", 0.0)
            iterations.append(driver.IterationRecord(**rec))
    result = driver.ColoringResult(
        n=n,
        color=color,
        colored_at=np.zeros(n, dtype=np.int64),
        iterations=iterations,
        params=driver.PaletteParams(),
        strategy="unknown",
        completed=True,
    )
    report = validation.validate(
        view, result, mode=args.mode, sample_pairs=args.sample_pairs, seed=args.seed
    )
    payload = asdict(report)
    payload["format_version"] = FORMAT_VERSION
    payload["kind"] = "validation"
    out = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(out + "\n")
    else:
        print(out)
    print(
        f"proper={report.proper} violations={report.violation_count} "
        f"colors={report.colors_used}",
        file=sys.stderr,
    )
    return EXIT_OK


def _add_input_flags(p: argparse.ArgumentParser, complement: bool = True) -> None:
    p.add_argument("--input", required=True, help="input file")
    p.add_argument(
        "--format",
        choices=["pauli", "edgelist", "mtx"],
        default=None,
        help="input format (default: inferred from extension)",
    )
    if complement:
        p.add_argument(
            "--complement",
            action="store_true",
            help="color the complement of the explicit input graph",
        )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="palettecolor",
        description="Memory-efficient palette-based graph coloring",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("color", help="run the palette coloring engine")
    _add_input_flags(p)
    p.add_argument("--palette-pct", type=float, default=12.5)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iterations", type=int, default=64)
    p.add_argument("--conflict-strategy", choices=STRATEGIES, default="dynamic")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--edge-budget", type=int, default=None)
    p.add_argument(
        "--block-pairs", type=int, default=1 << 20,
        help="pairs per scan block in the conflict builder",
    )
    p.add_argument("--out", help="coloring JSON path")
    p.add_argument("--stats-out", help="stats JSON path")
    p.add_argument("--partition-out", help="partition text path (pauli input only)")
    p.add_argument("--no-timing", action="store_true", help="omit timing fields")
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("generate", help="generate synthetic instances")
    gsub = p.add_subparsers(dest="kind", required=True)
    gp = gsub.add_parser("random-pauli")
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--num-qubits", type=int, required=True)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--exclude-identity", action="store_true")
    gp.add_argument("--out", required=True)
    gp.set_defaults(func=_cmd_generate)
    gg = gsub.add_parser("gnp")
    gg.add_argument("--n", type=int, required=True)
    gg.add_argument("--p", type=float, required=True)
    gg.add_argument("--seed", type=int, default=0)
    gg.add_argument("--out", required=True)
    gg.set_defaults(func=_cmd_generate)

    p = sub.add_parser("sweep", help="grid sweep over (palette_pct, alpha)")
    _add_input_flags(p)
    p.add_argument("--grid-p", default="1,2.5,5,7.5,10,12.5,15,17.5,20")
    p.add_argument("--grid-a", default="0.5..4.5")
    p.add_argument("--seeds", default="0,1,2")
    p.add_argument("--conflict-strategy", choices=STRATEGIES, default="dynamic")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--max-iterations", type=int, default=64)
    p.add_argument("--instance", default=None, help="instance label in the CSV")
    p.add_argument("--out", required=True, help="sweep CSV path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("predict", help="predict (palette_pct, alpha) for a new instance")
    p.add_argument("--train", help="sweep CSV to fit from")
    p.add_argument("--model", help="saved model table to load")
    p.add_argument("--model-out", help="save the fitted model table")
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--betas", default=None, help="beta grid for dataset assembly")
    p.add_argument("--grid-p", default=None)
    p.add_argument("--grid-a", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("baseline", help="full-graph greedy baseline")
    _add_input_flags(p)
    p.add_argument("--ordering", choices=baseline_mod.ORDERINGS, default="LF")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="coloring JSON path")
    p.add_argument("--stats-out", help="stats JSON path")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("validate", help="check a coloring against the input")
    p.add_argument("coloring", help="coloring JSON file")
    _add_input_flags(p)
    p.add_argument("--stats", help="stats JSON from the run, for the conflict-edge metric")
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--sample-pairs", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="report JSON path (default stdout)")
    p.set_defaults(func=_cmd_validate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EdgeBudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except IterationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ITERATION_LIMIT
    except PaletteColorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
