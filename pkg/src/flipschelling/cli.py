"""Command-line entry points.

Subcommands:
    simulate  run the experiment sweep, write records/summary CSVs and,
              optionally, plot data and a rendered figure
    bounds    print the analytic bounds and region measures for parameters
    rw-prob   exact random-walk comparison probabilities
    verify    run the property sweeps; nonzero exit on any violation
    plot      render a figure from an existing summary CSV
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import exactmath, harness, verify
from .graphs import er_probability_for_degree

log = logging.getLogger("flipschelling")


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = _build_parser().parse_args(argv)
    return args.func(args)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flipschelling",
        description="Flip-Schelling segregation experiments and analytic checks",
    )
    sub = parser.add_subparsers(required=True)

    sim = sub.add_parser("simulate", help="run the experiment sweep")
    sim.add_argument("--model", default="rgg,er",
                     help="comma-separated models (rgg, er)")
    sim.add_argument("--n", default="1000,5000,10000",
                     help="comma-separated vertex counts")
    sim.add_argument("--avg-degree", default="4,8,10,16",
                     help="comma-separated expected average degrees")
    sim.add_argument("--trials", type=int, default=1000, help="trials per cell")
    sim.add_argument("--seed", type=int, default=42, help="master seed")
    sim.add_argument("--threads", type=int, default=1, help="worker thread hint")
    sim.add_argument("--out", default="records.csv", help="records CSV path")
    sim.add_argument("--summary-out", default=None, help="summary CSV path")
    sim.add_argument("--plot-data-out", default=None, help="plot-ready text path")
    sim.add_argument("--plot-out", default=None, help="rendered figure path (png/pdf)")
    sim.add_argument("--dump-graphs", default=None, metavar="DIR",
                     help="debug: write every generated graph as an edge list")
    sim.add_argument("--timing", action="store_true",
                     help="record wall time per trial (breaks byte-determinism)")
    sim.set_defaults(func=_cmd_simulate)

    bnd = sub.add_parser("bounds", help="print analytic bounds for parameters")
    bnd.add_argument("--n", type=int, required=True)
    bnd.add_argument("--avg-degree", type=float, required=True)
    bnd.add_argument("--tau", type=float, default=None,
                     help="normalized edge distance for region measures")
    bnd.set_defaults(func=_cmd_bounds)

    rw = sub.add_parser("rw-prob", help="exact random-walk comparison probabilities")
    rw.add_argument("--a", type=int, required=True, help="steps of walk A")
    rw.add_argument("--b", type=int, required=True, help="steps of walk B")
    rw.set_defaults(func=_cmd_rw_prob)

    ver = sub.add_parser("verify", help="run property sweeps")
    ver.add_argument("--seed", type=int, default=42)
    ver.set_defaults(func=_cmd_verify)

    plot = sub.add_parser("plot", help="render a figure from a summary CSV")
    plot.add_argument("--summary", required=True, help="summary CSV path")
    plot.add_argument("--out", required=True, help="figure output path (png/pdf)")
    plot.set_defaults(func=_cmd_plot)
    return parser


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = harness.ExperimentConfig(
        models=tuple(m.strip() for m in args.model.split(",") if m.strip()),
        n_values=tuple(int(x) for x in args.n.split(",") if x.strip()),
        degree_values=tuple(float(x) for x in args.avg_degree.split(",") if x.strip()),
        trials=args.trials,
        master_seed=args.seed,
        thread_count=args.threads,
        records_path=args.out,
        summary_path=args.summary_out,
        plot_data_path=args.plot_data_out,
        figure_path=args.plot_out,
        dump_graphs_dir=args.dump_graphs,
        record_timing=args.timing,
    )
    try:
        config.validate()
    except ValueError as exc:
        log.error("invalid configuration: %s", exc)
        return 2

    cells = len(config.cells())
    log.info("running %d cells x %d trials (seed %d, %d threads)",
             cells, config.trials, config.master_seed, config.thread_count)
    records = harness.run_experiment(config)
    harness.write_records_csv(records, config.records_path)
    log.info("wrote %d records to %s", len(records), config.records_path)

    rows = harness.summarize(records)
    if config.summary_path:
        harness.write_summary_csv(rows, config.summary_path)
        log.info("wrote %d summary rows to %s", len(rows), config.summary_path)
    if config.plot_data_path:
        harness.emit_plot_data(rows, config.plot_data_path)
        log.info("wrote plot data to %s", config.plot_data_path)
    if config.figure_path:
        from .plotting import render_summary_figure

        render_summary_figure(rows, config.figure_path)
        log.info("rendered figure to %s", config.figure_path)
    return 0


def _cmd_bounds(args: argparse.Namespace) -> int:
    lines = [
        ("n", args.n),
        ("avg_degree", args.avg_degree),
        ("theorem1_bound", exactmath.theorem1_bound(args.avg_degree)),
        ("theorem1_caveat", exactmath.THEOREM1_BOUND_CAVEAT),
    ]
    if args.tau is not None:
        rm = exactmath.region_measures(args.n, args.avg_degree, args.tau)
        lines += [
            ("tau", rm.tau),
            ("mu_common", rm.mu_common),
            ("mu_u_exclusive", rm.mu_u_exclusive),
            ("mu_v_exclusive", rm.mu_v_exclusive),
            ("mu_outside", rm.mu_outside),
            ("edge_within_tau_fraction", exactmath.edge_within_tau_fraction(args.tau)
             if args.tau <= 1.0 else None),
        ]
    p = er_probability_for_degree(args.n, args.avg_degree)
    empty, complement_bound = exactmath.er_common_empty_probability(args.n, p)
    lines += [
        ("er_edge_probability", p),
        ("er_common_empty_exact", empty),
        ("er_common_nonempty_bound", complement_bound),
    ]
    width = max(len(k) for k, _ in lines)
    for key, value in lines:
        if value is None:
            continue
        text = f"{value:.12g}" if isinstance(value, float) else str(value)
        print(f"{key:<{width}} = {text}")
    return 0


def _cmd_rw_prob(args: argparse.Namespace) -> int:
    less, equal, greater = exactmath.rw_abs_compare(args.a, args.b)
    lines = [("a", str(args.a)), ("b", str(args.b)),
             ("P(|A|<|B|)", _frac(less)), ("P(|A|=|B|)", _frac(equal)),
             ("P(|A|>|B|)", _frac(greater))]
    if args.a <= args.b:
        lines.append(("lower_bound", _frac(exactmath.rw_lower_bound(args.a, args.b))))
    width = max(len(k) for k, _ in lines)
    for key, value in lines:
        print(f"{key:<{width}} = {value}")
    return 0


def _frac(x: Fraction) -> str:
    return f"{x} ({float(x):.10g})"


def _cmd_verify(args: argparse.Namespace) -> int:
    results = verify.run_all(seed=args.seed)
    failures = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        failures += not res.passed
        print(f"{status} {res.name} — {res.detail}")
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 1 if failures else 0


def _cmd_plot(args: argparse.Namespace) -> int:
    from .plotting import render_summary_figure

    rows = harness.read_summary_csv(args.summary)
    render_summary_figure(rows, args.out)
    log.info("rendered figure to %s", args.out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
