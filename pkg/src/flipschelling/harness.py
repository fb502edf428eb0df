"""Experiment harness: seeded trial sweeps, aggregation, CSV emission.

A sweep runs every (model, n, avg_degree) cell for a fixed number of
trials. Each trial derives its own random streams from the master seed, so
the record list is a pure function of the configuration regardless of
worker count; workers only change wall time. Results are gathered in
deterministic cell-major, trial-minor order.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import fsp, graphs
from .rng import derive_stream

log = logging.getLogger(__name__)

MODELS = ("rgg", "er")

RECORDS_HEADER = (
    "model,n,avg_degree,trial,seed,frac_before,frac_after,"
    "empirical_avg_degree,wall_time_ms"
)
SUMMARY_HEADER = (
    "model,n,avg_degree,trials,mean_before,mean_after,median_after,"
    "q25_after,q75_after"
)

__all__ = [
    "MODELS",
    "RECORDS_HEADER",
    "SUMMARY_HEADER",
    "ExperimentConfig",
    "TrialRecord",
    "SummaryRow",
    "run_experiment",
    "summarize",
    "quartiles",
    "write_records_csv",
    "write_summary_csv",
    "read_records_csv",
    "read_summary_csv",
    "emit_plot_data",
]


# ===================================================================
# CONFIGURATION AND RECORD TYPES
# ===================================================================


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep: models x n_values x degree_values, `trials` runs per cell.

    wall-clock timing is opt-in (record_timing) because timing values are
    inherently nondeterministic and would break the byte-identical-output
    contract of the records CSV.
    """

    models: tuple[str, ...] = MODELS
    n_values: tuple[int, ...] = (1000, 5000, 10000)
    degree_values: tuple[float, ...] = (4.0, 8.0, 10.0, 16.0)
    trials: int = 1000
    master_seed: int = 42
    thread_count: int = 1
    records_path: Optional[str] = None
    summary_path: Optional[str] = None
    plot_data_path: Optional[str] = None
    figure_path: Optional[str] = None
    dump_graphs_dir: Optional[str] = None
    record_timing: bool = False

    def validate(self) -> None:
        """Fail fast on parameter combinations no cell could run with."""
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.thread_count < 1:
            raise ValueError(f"thread_count must be >= 1, got {self.thread_count}")
        unknown = set(self.models) - set(MODELS)
        if unknown:
            raise ValueError(f"unknown models {sorted(unknown)}; choose from {MODELS}")
        if not self.models or not self.n_values or not self.degree_values:
            raise ValueError("models, n_values and degree_values must be non-empty")
        for n in self.n_values:
            for d in self.degree_values:
                if "rgg" in self.models:
                    graphs.radius_for_degree(n, d)
                if "er" in self.models:
                    graphs.er_probability_for_degree(n, d)

    def cells(self) -> list[tuple[str, int, float]]:
        return [
            (model, n, d)
            for model in self.models
            for n in self.n_values
            for d in self.degree_values
        ]


@dataclass(frozen=True)
class TrialRecord:
    """One trial: inputs, derived seed, and monochrome fractions.

    Fraction fields are None when undefined (zero-edge graph) or when the
    cell's parameters were rejected (error row).
    """

    model: str
    n: int
    avg_degree: float
    trial_index: int
    seed: int
    frac_before: Optional[float]
    frac_after: Optional[float]
    empirical_avg_degree: Optional[float]
    wall_time_ms: Optional[float]


@dataclass(frozen=True)
class SummaryRow:
    model: str
    n: int
    avg_degree: float
    trials: int
    mean_before: Optional[float]
    mean_after: Optional[float]
    median_after: Optional[float]
    q25_after: Optional[float]
    q75_after: Optional[float]


# ===================================================================
# EXPERIMENT EXECUTION
# ===================================================================


def run_experiment(config: ExperimentConfig) -> list[TrialRecord]:
    """Run the sweep; returns records in cell-major, trial-minor order.

    Per trial, a graph stream generates the graph and a sibling dynamics
    stream drives the initial types and any tie coins. Cells whose
    parameters are rejected contribute a single error row.
    """
    if config.dump_graphs_dir:
        os.makedirs(config.dump_graphs_dir, exist_ok=True)

    tasks = []
    records: list[Optional[TrialRecord]] = []
    for model, n, d in config.cells():
        try:
            if model == "rgg":
                graphs.radius_for_degree(n, d)
            else:
                graphs.er_probability_for_degree(n, d)
        except ValueError as exc:
            log.warning("skipping cell (%s, n=%d, avg_degree=%g): %s", model, n, d, exc)
            seed = derive_stream(config.master_seed, _context(model, n, d, "graph"), 0).seed64
            records.append(TrialRecord(model, n, d, 0, seed, None, None, None, None))
            continue
        for trial in range(config.trials):
            tasks.append((len(records), model, n, d, trial))
            records.append(None)

    def run(task):
        slot, model, n, d, trial = task
        records[slot] = _run_trial(config, model, n, d, trial)

    if config.thread_count > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=config.thread_count) as pool:
            list(pool.map(run, tasks))
    else:
        for task in tasks:
            run(task)
    assert all(r is not None for r in records)
    return records  # type: ignore[return-value]


def _context(model: str, n: int, avg_degree: float, role: str) -> str:
    return f"{model}|n={n}|deg={avg_degree!r}|{role}"


def _run_trial(config: ExperimentConfig, model: str, n: int,
               avg_degree: float, trial: int) -> TrialRecord:
    graph_stream = derive_stream(config.master_seed, _context(model, n, avg_degree, "graph"), trial)
    dyn_stream = derive_stream(config.master_seed, _context(model, n, avg_degree, "dynamics"), trial)
    started = time.perf_counter()

    if model == "rgg":
        g, _points = graphs.generate_rgg(n, avg_degree, graph_stream)
    else:
        g = graphs.generate_er(n, avg_degree, graph_stream)

    if config.dump_graphs_dir:
        name = f"{model}_n{n}_deg{avg_degree:g}_trial{trial}.txt"
        with open(os.path.join(config.dump_graphs_dir, name), "w", newline="\n") as fp:
            graphs.write_edge_list(g, fp)

    types = fsp.initial_types(n, dyn_stream)
    if g.edge_count > 0:
        frac_before = fsp.monochrome_fraction(g, types)
        after = fsp.fsp_step(g, types, dyn_stream)
        frac_after = fsp.monochrome_fraction(g, after)
    else:
        # monochrome fraction is undefined without edges; record as missing
        frac_before = frac_after = None

    elapsed_ms = (time.perf_counter() - started) * 1000.0
    return TrialRecord(
        model=model,
        n=n,
        avg_degree=avg_degree,
        trial_index=trial,
        seed=graph_stream.seed64,
        frac_before=frac_before,
        frac_after=frac_after,
        empirical_avg_degree=2.0 * g.edge_count / n,
        wall_time_ms=elapsed_ms if config.record_timing else None,
    )


# ===================================================================
# AGGREGATION
# ===================================================================


def quartiles(values: Sequence[float]) -> tuple[float, float, float]:
    """(q25, median, q75) by the median-of-halves (exclusive) convention:
    the median splits the sorted data and, for odd counts, belongs to
    neither half; each quartile is the median of its half."""
    s = sorted(values)
    if not s:
        raise ValueError("quartiles of an empty sequence")
    med = _median_sorted(s)
    half = len(s) // 2
    if half == 0:
        return med, med, med
    return _median_sorted(s[:half]), med, _median_sorted(s[len(s) - half:])


def _median_sorted(s: Sequence[float]) -> float:
    mid = len(s) // 2
    if len(s) % 2:
        return float(s[mid])
    return (s[mid - 1] + s[mid]) / 2.0


def summarize(records: Iterable[TrialRecord]) -> list[SummaryRow]:
    """One row of aggregate statistics per (model, n, avg_degree) cell.

    Records with missing fractions (error rows, zero-edge graphs) do not
    contribute to the statistics; cells with no usable trial are omitted
    with a warning.
    """
    grouped: dict[tuple[str, int, float], list[TrialRecord]] = {}
    for rec in records:
        grouped.setdefault((rec.model, rec.n, rec.avg_degree), []).append(rec)

    rows = []
    for (model, n, d), cell in grouped.items():
        before = [r.frac_before for r in cell if r.frac_before is not None]
        after = [r.frac_after for r in cell if r.frac_after is not None]
        if not after:
            log.warning("cell (%s, n=%d, avg_degree=%g) has no usable trials; omitted",
                        model, n, d)
            continue
        q25, med, q75 = quartiles(after)
        rows.append(SummaryRow(
            model=model,
            n=n,
            avg_degree=d,
            trials=len(after),
            mean_before=sum(before) / len(before) if before else None,
            mean_after=sum(after) / len(after),
            median_after=med,
            q25_after=q25,
            q75_after=q75,
        ))
    return rows


# ===================================================================
# SERIALIZATION
# ===================================================================


def _fmt(value) -> str:
    """Missing -> empty field; floats -> 10 significant digits."""
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def _parse_opt_float(text: str) -> Optional[float]:
    return float(text) if text else None


def write_records_csv(records: Iterable[TrialRecord], path: str) -> None:
    try:
        with open(path, "w", newline="\n") as fp:
            fp.write(RECORDS_HEADER + "\n")
            for r in records:
                fp.write(",".join((
                    r.model, str(r.n), _fmt(float(r.avg_degree)), str(r.trial_index),
                    str(r.seed), _fmt(r.frac_before), _fmt(r.frac_after),
                    _fmt(r.empirical_avg_degree), _fmt(r.wall_time_ms),
                )) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write records CSV to {path!r}: {exc}") from exc


def read_records_csv(path: str) -> list[TrialRecord]:
    """Parse a records CSV back into TrialRecord values.

    Round-trips with write_records_csv up to the 10-significant-digit
    float formatting.
    """
    records = []
    with open(path) as fp:
        header = fp.readline().rstrip("\n")
        if header != RECORDS_HEADER:
            raise ValueError(f"unexpected records header in {path!r}: {header!r}")
        for line in fp:
            f = line.rstrip("\n").split(",")
            records.append(TrialRecord(
                model=f[0], n=int(f[1]), avg_degree=float(f[2]),
                trial_index=int(f[3]), seed=int(f[4]),
                frac_before=_parse_opt_float(f[5]),
                frac_after=_parse_opt_float(f[6]),
                empirical_avg_degree=_parse_opt_float(f[7]),
                wall_time_ms=_parse_opt_float(f[8]),
            ))
    return records


def write_summary_csv(rows: Iterable[SummaryRow], path: str) -> None:
    try:
        with open(path, "w", newline="\n") as fp:
            fp.write(SUMMARY_HEADER + "\n")
            for r in rows:
                fp.write(",".join((
                    r.model, str(r.n), _fmt(float(r.avg_degree)), str(r.trials),
                    _fmt(r.mean_before), _fmt(r.mean_after), _fmt(r.median_after),
                    _fmt(r.q25_after), _fmt(r.q75_after),
                )) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write summary CSV to {path!r}: {exc}") from exc


def read_summary_csv(path: str) -> list[SummaryRow]:
    rows = []
    with open(path) as fp:
        header = fp.readline().rstrip("\n")
        if header != SUMMARY_HEADER:
            raise ValueError(f"unexpected summary header in {path!r}: {header!r}")
        for line in fp:
            f = line.rstrip("\n").split(",")
            rows.append(SummaryRow(
                model=f[0], n=int(f[1]), avg_degree=float(f[2]), trials=int(f[3]),
                mean_before=_parse_opt_float(f[4]), mean_after=_parse_opt_float(f[5]),
                median_after=_parse_opt_float(f[6]), q25_after=_parse_opt_float(f[7]),
                q75_after=_parse_opt_float(f[8]),
            ))
    return rows


def emit_plot_data(rows: Iterable[SummaryRow], path: str) -> None:
    """Plot-ready text: one whitespace-separated block per (model, n)
    series with columns degree, mean, q25, q75; blocks separated by a
    blank line."""
    series: dict[tuple[str, int], list[SummaryRow]] = {}
    for row in rows:
        series.setdefault((row.model, row.n), []).append(row)
    try:
        with open(path, "w", newline="\n") as fp:
            for i, ((model, n), block) in enumerate(series.items()):
                if i:
                    fp.write("\n")
                fp.write(f"# model={model} n={n}\n")
                for row in sorted(block, key=lambda r: r.avg_degree):
                    fp.write(f"{_fmt(float(row.avg_degree))} {_fmt(row.mean_after)} "
                             f"{_fmt(row.q25_after)} {_fmt(row.q75_after)}\n")
    except OSError as exc:
        raise OSError(f"cannot write plot data to {path!r}: {exc}") from exc
