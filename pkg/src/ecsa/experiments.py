"""Experiment harness: benchmark protocol, comparisons and allocation runs.

The default protocol matches the reference setup: both algorithms, all
13 functions at dimension 15, population 50, 500 iterations, 30 trials.
Every (algorithm, function, trial) cell derives its seed from the base
seed plus a SHA-256 hash of the cell labels, so results are reproducible
cell by cell and adding cells never shifts existing streams.

All outputs are flat CSV files plus an aligned text table; convergence
traces are emitted per run and as a per-cell mean so plots can be drawn
with external tools.  Row order is sorted before writing, which keeps
file contents byte-identical whether runs execute serially or on a
worker pool (``ECSA_WORKERS`` environment variable).
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import benchmarks
from .allocation import (
    AllocationInstance,
    AllocationObjective,
    optimal_assignment,
    write_assignment_csv,
)
from .benchmarks import BenchmarkObjective, FUNCTION_IDS
from .optimizer import CuckooSearch, EnhancedCuckooSearch
from .rng import RandomSource, stable_seed
from .stats import decide, rank_sum_p, summarize

ALGORITHMS = ("csa", "ecsa")

RESULT_FIELDS = ("function", "algorithm", "trial", "seed", "best_fitness", "evaluations")
WORKERS_ENV = "ECSA_WORKERS"


@dataclass(frozen=True)
class ExperimentConfig:
    """Benchmark experiment settings (defaults reproduce the full protocol)."""

    functions: tuple = FUNCTION_IDS
    algorithms: tuple = ALGORITHMS
    trials: int = 30
    base_seed: int = 0
    dim: int = benchmarks.DEFAULT_DIM
    population: int = 50
    iterations: int = 500
    pa: float = 0.25
    alpha: float = 0.01
    pa_min: float = 0.25
    pa_max: float = 0.5
    alpha_min: float = 0.01
    alpha_max: float = 0.05
    t0: int = 100
    t_mult: float = 2.0
    update: str = "all_nests"

    def __post_init__(self):
        functions = self.functions
        if isinstance(functions, str):
            functions = (functions,)
        if "all" in functions:
            functions = FUNCTION_IDS
        unknown = [f for f in functions if f not in FUNCTION_IDS]
        if unknown:
            raise ValueError(f"unknown benchmark function ids: {unknown}")
        algorithms = self.algorithms
        if isinstance(algorithms, str):
            algorithms = (algorithms,)
        bad = [a for a in algorithms if a not in ALGORITHMS]
        if bad:
            raise ValueError(f"unknown algorithms: {bad} (choose from {ALGORITHMS})")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        object.__setattr__(self, "functions", tuple(functions))
        object.__setattr__(self, "algorithms", tuple(algorithms))


def trial_seed(base_seed: int, algorithm: str, function: str, trial: int) -> int:
    """Per-cell seed: ``base_seed`` plus a stable hash of the cell labels."""
    return stable_seed(base_seed, algorithm, function, trial)


def make_optimizer(algorithm: str, config: ExperimentConfig, seed):
    """Construct the configured estimator for one run."""
    if algorithm == "csa":
        return CuckooSearch(
            population=config.population,
            iterations=config.iterations,
            pa=config.pa,
            alpha=config.alpha,
            update=config.update,
            seed=seed,
        )
    if algorithm == "ecsa":
        return EnhancedCuckooSearch(
            population=config.population,
            iterations=config.iterations,
            pa_min=config.pa_min,
            pa_max=config.pa_max,
            alpha_min=config.alpha_min,
            alpha_max=config.alpha_max,
            t0=config.t0,
            t_mult=config.t_mult,
            update=config.update,
            seed=seed,
        )
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _run_cell(args):
    """One (function, algorithm, trial) run; top level so pools can pickle it."""
    config, function_id, algorithm, trial = args
    seed = trial_seed(config.base_seed, algorithm, function_id, trial)
    rng = RandomSource(seed)
    spec = benchmarks.get_spec(function_id, config.dim)
    objective = BenchmarkObjective(spec, rng)
    optimizer = make_optimizer(algorithm, config, rng)
    optimizer.fit(objective, spec.box)
    row = {
        "function": function_id,
        "algorithm": algorithm,
        "trial": trial,
        "seed": seed,
        "best_fitness": optimizer.best_fitness_,
        "evaluations": optimizer.n_evaluations_,
    }
    return row, optimizer.trace_


def worker_count() -> int:
    """Worker-pool size from the environment (defaults to serial)."""
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        count = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}")
    return max(count, 1)


def run_benchmark(config: ExperimentConfig):
    """Run the protocol; returns (rows, traces) sorted by cell.

    ``rows`` is a list of result dicts; ``traces`` maps
    ``(function, algorithm, trial)`` to the per-iteration best-fitness
    array.
    """
    tasks = [
        (config, function_id, algorithm, trial)
        for function_id in config.functions
        for algorithm in config.algorithms
        for trial in range(config.trials)
    ]
    workers = worker_count()
    if workers > 1 and len(tasks) > 1:
        import multiprocessing

        with multiprocessing.Pool(workers) as pool:
            outcomes = pool.map(_run_cell, tasks)
    else:
        outcomes = [_run_cell(task) for task in tasks]
    order = {fid: i for i, fid in enumerate(FUNCTION_IDS)}
    outcomes.sort(key=lambda item: (order[item[0]["function"]], item[0]["algorithm"], item[0]["trial"]))
    rows = [row for row, _ in outcomes]
    traces = {
        (row["function"], row["algorithm"], row["trial"]): trace
        for row, trace in outcomes
    }
    return rows, traces


# -- file output --------------------------------------------------------------


def write_results_csv(rows, path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(RESULT_FIELDS)
        for row in rows:
            writer.writerow(
                [
                    row["function"],
                    row["algorithm"],
                    row["trial"],
                    row["seed"],
                    repr(float(row["best_fitness"])),
                    row["evaluations"],
                ]
            )


def read_results_csv(path):
    rows = []
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        missing = set(RESULT_FIELDS) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing result columns {sorted(missing)}")
        for record in reader:
            rows.append(
                {
                    "function": record["function"],
                    "algorithm": record["algorithm"],
                    "trial": int(record["trial"]),
                    "seed": int(record["seed"]),
                    "best_fitness": float(record["best_fitness"]),
                    "evaluations": int(record["evaluations"]),
                }
            )
    return rows


def write_trace_csv(trace, path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["iteration", "best_fitness"])
        for iteration, value in enumerate(trace):
            writer.writerow([iteration, repr(float(value))])


def write_traces(traces, out_dir: Path) -> None:
    """Per-run traces plus a mean-over-trials trace per cell."""
    out_dir.mkdir(parents=True, exist_ok=True)
    cells = {}
    for (function_id, algorithm, trial), trace in traces.items():
        write_trace_csv(trace, out_dir / f"{function_id}_{algorithm}_trial{trial:03d}.csv")
        cells.setdefault((function_id, algorithm), []).append(trace)
    for (function_id, algorithm), cell_traces in cells.items():
        mean_trace = np.mean(np.vstack(cell_traces), axis=0)
        write_trace_csv(mean_trace, out_dir / f"{function_id}_{algorithm}_mean.csv")


def summarize_rows(rows):
    """Wide per-function summary mirroring the result-table layout."""
    grouped = {}
    for row in rows:
        grouped.setdefault((row["function"], row["algorithm"]), []).append(row["best_fitness"])
    functions = sorted({f for f, _ in grouped}, key=FUNCTION_IDS.index)
    algorithms = [a for a in ALGORITHMS if any(k[1] == a for k in grouped)]
    summary = []
    for function_id in functions:
        entry = {"function": function_id}
        for algorithm in algorithms:
            values = grouped.get((function_id, algorithm))
            if values:
                mean, std = summarize(np.asarray(values))
                entry[f"{algorithm}_mean"] = mean
                entry[f"{algorithm}_std"] = std
        summary.append(entry)
    return summary, algorithms


def write_summary_csv(rows, path) -> None:
    summary, algorithms = summarize_rows(rows)
    columns = ["function"]
    for algorithm in algorithms:
        columns += [f"{algorithm}_mean", f"{algorithm}_std"]
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for entry in summary:
            writer.writerow(
                [entry["function"]]
                + [repr(float(entry[c])) if c in entry else "" for c in columns[1:]]
            )


def write_benchmark_outputs(rows, traces, out_dir) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_results_csv(rows, out_dir / "results.csv")
    write_summary_csv(rows, out_dir / "summary.csv")
    write_traces(traces, out_dir / "traces")


# -- comparison ---------------------------------------------------------------


def compare_rows(rows, level: float = 0.05):
    """Per-function comparison of both algorithms.

    Returns a list of dicts with means, stds, the rank-sum p-value, the
    verdict at ``level`` and the winner flag (lower mean, ``tie`` on an
    exact mean tie).
    """
    grouped = {}
    for row in rows:
        grouped.setdefault(row["function"], {}).setdefault(row["algorithm"], []).append(
            row["best_fitness"]
        )
    comparison = []
    for function_id in sorted(grouped, key=FUNCTION_IDS.index):
        cells = grouped[function_id]
        missing = [a for a in ALGORITHMS if a not in cells]
        if missing:
            raise ValueError(
                f"comparison for {function_id} needs both algorithms; missing {missing}"
            )
        csa = np.asarray(cells["csa"], dtype=float)
        ecsa = np.asarray(cells["ecsa"], dtype=float)
        csa_mean, csa_std = summarize(csa)
        ecsa_mean, ecsa_std = summarize(ecsa)
        p = rank_sum_p(csa, ecsa)
        if csa_mean == ecsa_mean:
            winner = "tie"
        else:
            winner = "ecsa" if ecsa_mean < csa_mean else "csa"
        comparison.append(
            {
                "function": function_id,
                "csa_mean": csa_mean,
                "csa_std": csa_std,
                "ecsa_mean": ecsa_mean,
                "ecsa_std": ecsa_std,
                "p_value": p,
                "verdict": decide(p, level),
                "winner": winner,
            }
        )
    return comparison


COMPARISON_FIELDS = (
    "function",
    "csa_mean",
    "csa_std",
    "ecsa_mean",
    "ecsa_std",
    "p_value",
    "verdict",
    "winner",
)


def write_comparison_csv(comparison, path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(COMPARISON_FIELDS)
        for entry in comparison:
            writer.writerow(
                [
                    entry["function"],
                    repr(entry["csa_mean"]),
                    repr(entry["csa_std"]),
                    repr(entry["ecsa_mean"]),
                    repr(entry["ecsa_std"]),
                    repr(entry["p_value"]),
                    entry["verdict"],
                    entry["winner"],
                ]
            )


def comparison_table(comparison) -> str:
    """Aligned, human-readable comparison table."""
    header = f"{'func':<5} {'csa_mean':>12} {'csa_std':>10} {'ecsa_mean':>12} {'ecsa_std':>10} {'p_value':>10} {'verdict':<24} {'winner':<6}"
    lines = [header, "-" * len(header)]
    for e in comparison:
        lines.append(
            f"{e['function']:<5} {e['csa_mean']:>12.4e} {e['csa_std']:>10.3e} "
            f"{e['ecsa_mean']:>12.4e} {e['ecsa_std']:>10.3e} {e['p_value']:>10.3g} "
            f"{e['verdict']:<24} {e['winner']:<6}"
        )
    return "\n".join(lines)


# -- allocation experiment -----------------------------------------------------


@dataclass
class AllocationReport:
    """Results of one allocation experiment for a single algorithm."""

    algorithm: str
    oracle_fitness: float
    rows: list
    traces: dict
    best_trial: int
    best_fitness: float
    mean_fitness: float
    std_fitness: float
    mean_gap: float
    best_gap: float


def run_allocation(
    instance: AllocationInstance,
    algorithm: str,
    config: ExperimentConfig,
) -> AllocationReport:
    """Run the discretized optimizer over the one-hot cube for one algorithm."""
    objective = AllocationObjective(instance)
    _, oracle_fitness = optimal_assignment(instance)
    rows, traces = [], {}
    best_trial, best_fitness = -1, np.inf
    for trial in range(config.trials):
        seed = trial_seed(config.base_seed, algorithm, "LA", trial)
        optimizer = make_optimizer(algorithm, config, RandomSource(seed))
        optimizer.fit(objective, objective.box)
        gap = (optimizer.best_fitness_ - oracle_fitness) / oracle_fitness
        rows.append(
            {
                "algorithm": algorithm,
                "trial": trial,
                "seed": seed,
                "best_fitness": optimizer.best_fitness_,
                "gap_to_oracle": gap,
                "evaluations": optimizer.n_evaluations_,
                "best_position": optimizer.best_position_,
            }
        )
        traces[trial] = optimizer.trace_
        if optimizer.best_fitness_ < best_fitness:
            best_fitness = optimizer.best_fitness_
            best_trial = trial
    values = np.array([row["best_fitness"] for row in rows])
    mean, std = summarize(values) if values.size > 1 else (float(values[0]), 0.0)
    return AllocationReport(
        algorithm=algorithm,
        oracle_fitness=oracle_fitness,
        rows=rows,
        traces=traces,
        best_trial=best_trial,
        best_fitness=float(best_fitness),
        mean_fitness=mean,
        std_fitness=std,
        mean_gap=float(np.mean([row["gap_to_oracle"] for row in rows])),
        best_gap=float((best_fitness - oracle_fitness) / oracle_fitness),
    )


def write_allocation_outputs(instance, report: AllocationReport, out_dir) -> None:
    from .allocation import decode

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / f"allocation_{report.algorithm}.csv", "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["algorithm", "trial", "seed", "best_fitness", "gap_to_oracle", "evaluations"]
        )
        for row in report.rows:
            writer.writerow(
                [
                    row["algorithm"],
                    row["trial"],
                    row["seed"],
                    repr(row["best_fitness"]),
                    repr(row["gap_to_oracle"]),
                    row["evaluations"],
                ]
            )
    trace_dir = out_dir / "traces"
    trace_dir.mkdir(exist_ok=True)
    for trial, trace in report.traces.items():
        write_trace_csv(trace, trace_dir / f"LA_{report.algorithm}_trial{trial:03d}.csv")
    mean_trace = np.mean(np.vstack(list(report.traces.values())), axis=0)
    write_trace_csv(mean_trace, trace_dir / f"LA_{report.algorithm}_mean.csv")
    best = next(r for r in report.rows if r["trial"] == report.best_trial)
    assignment = decode(best["best_position"], instance)
    write_assignment_csv(instance, assignment, out_dir / f"assignment_{report.algorithm}.csv")
