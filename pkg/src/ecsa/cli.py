"""Command-line interface: bench, compare, allocate, sobol, schedule."""

from __future__ import annotations

import json
import sys
from dataclasses import fields as dataclass_fields
from pathlib import Path

import click

from . import benchmarks, experiments
from .allocation import load_instance, load_instance_csv, synth_instance
from .experiments import ExperimentConfig
from .schedule import ScheduleState, advance, cosine_value
from .sobol import SobolSequence


@click.group()
def main():
    """Cuckoo-search optimization toolkit: benchmark protocol, statistical
    comparison and the discretized location-allocation experiment."""


def _config_value(ctx, config_data, name, flag_value):
    """Flag wins; otherwise config-file value; otherwise the click default."""
    source = ctx.get_parameter_source(name)
    if source is not None and source.name != "DEFAULT":
        return flag_value
    if name in config_data:
        return config_data[name]
    return flag_value


def _experiment_config(ctx, config_path, **flags) -> ExperimentConfig:
    config_data = {}
    if config_path:
        try:
            config_data = json.loads(Path(config_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise click.ClickException(f"cannot read config file: {exc}")
        known = {f.name for f in dataclass_fields(ExperimentConfig)}
        unknown = set(config_data) - known
        if unknown:
            raise click.ClickException(f"unknown config keys: {sorted(unknown)}")
    resolved = {
        name: _config_value(ctx, config_data, name, value) for name, value in flags.items()
    }
    functions = resolved.pop("functions")
    if isinstance(functions, str):
        functions = tuple(part.strip() for part in functions.split(",") if part.strip())
    algorithms = resolved.pop("algorithms")
    if isinstance(algorithms, str):
        algorithms = tuple(part.strip() for part in algorithms.split(",") if part.strip())
    try:
        return ExperimentConfig(functions=functions, algorithms=algorithms, **resolved)
    except ValueError as exc:
        raise click.ClickException(str(exc))


@main.group(invoke_without_command=True)
@click.option("--functions", default="all", show_default=True,
              help="Comma-separated function ids (F1..F13) or 'all'.")
@click.option("--algorithms", default="csa,ecsa", show_default=True)
@click.option("--trials", default=30, show_default=True, type=int)
@click.option("--seed", "base_seed", default=0, show_default=True, type=int)
@click.option("--dim", default=benchmarks.DEFAULT_DIM, show_default=True, type=int)
@click.option("--population", default=50, show_default=True, type=int)
@click.option("--iterations", default=500, show_default=True, type=int)
@click.option("--pa", default=0.25, show_default=True, type=float)
@click.option("--alpha", default=0.01, show_default=True, type=float)
@click.option("--pa-min", default=0.25, show_default=True, type=float)
@click.option("--pa-max", default=0.5, show_default=True, type=float)
@click.option("--alpha-min", default=0.01, show_default=True, type=float)
@click.option("--alpha-max", default=0.05, show_default=True, type=float)
@click.option("--t0", default=100, show_default=True, type=int)
@click.option("--t-mult", default=2.0, show_default=True, type=float)
@click.option("--config", "config_path", default=None, type=click.Path(exists=True),
              help="JSON config file; explicit flags override its values.")
@click.option("--out", "out_dir", default="results", show_default=True,
              type=click.Path(file_okay=False))
@click.pass_context
def bench(ctx, config_path, out_dir, **flags):
    """Run the benchmark protocol and write results, summary and traces."""
    if ctx.invoked_subcommand is not None:
        return
    config = _experiment_config(ctx, config_path, **flags)
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise click.ClickException(f"output directory not writable: {exc}")
    total = len(config.functions) * len(config.algorithms) * config.trials
    click.echo(f"running {total} optimization runs -> {out}", err=True)
    rows, traces = experiments.run_benchmark(config)
    experiments.write_benchmark_outputs(rows, traces, out)
    click.echo(f"wrote {out / 'results.csv'}", err=True)


@bench.command("list")
def bench_list():
    """Print the benchmark suite table."""
    header = f"{'id':<4} {'name':<26} {'dim':>3} {'lower':>8} {'upper':>8} {'optimum':>12}"
    click.echo(header)
    click.echo("-" * len(header))
    for spec in benchmarks.suite():
        click.echo(
            f"{spec.id:<4} {spec.name:<26} {spec.dim:>3} "
            f"{spec.box.lower[0]:>8.2f} {spec.box.upper[0]:>8.2f} "
            f"{spec.known_optimum_value:>12.4f}"
        )


@main.command()
@click.option("--results", "results_path", required=True, type=click.Path(exists=True))
@click.option("--level", default=0.05, show_default=True, type=float)
@click.option("--out", "out_dir", default=None, type=click.Path(file_okay=False))
def compare(results_path, level, out_dir):
    """Compare both algorithms per function on a bench results file."""
    rows = experiments.read_results_csv(results_path)
    try:
        comparison = experiments.compare_rows(rows, level=level)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    click.echo(experiments.comparison_table(comparison))
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        experiments.write_comparison_csv(comparison, out / "comparison.csv")
        (out / "comparison.txt").write_text(experiments.comparison_table(comparison) + "\n")
        click.echo(f"wrote {out / 'comparison.csv'}", err=True)


@main.command()
@click.option("--instance", "instance_path", default=None, type=click.Path(exists=True),
              help="JSON instance file with blocks/areas records.")
@click.option("--blocks", "blocks_path", default=None, type=click.Path(exists=True),
              help="CSV of block records (id,x,y); requires --areas.")
@click.option("--areas", "areas_path", default=None, type=click.Path(exists=True))
@click.option("--synthetic", is_flag=True, help="Use a seeded synthetic instance.")
@click.option("--blocks-count", default=50, show_default=True, type=int)
@click.option("--areas-count", default=11, show_default=True, type=int)
@click.option("--algorithm", default="ecsa", show_default=True,
              type=click.Choice(experiments.ALGORITHMS))
@click.option("--trials", default=30, show_default=True, type=int)
@click.option("--seed", "base_seed", default=0, show_default=True, type=int)
@click.option("--population", default=50, show_default=True, type=int)
@click.option("--iterations", default=500, show_default=True, type=int)
@click.option("--out", "out_dir", default="allocation_results", show_default=True,
              type=click.Path(file_okay=False))
def allocate(instance_path, blocks_path, areas_path, synthetic, blocks_count,
             areas_count, algorithm, trials, base_seed, population, iterations, out_dir):
    """Optimize block-to-area assignment and report the oracle gap."""
    sources = sum([instance_path is not None, blocks_path is not None, synthetic])
    if sources != 1:
        raise click.UsageError(
            "choose exactly one instance source: --instance, --blocks/--areas or --synthetic"
        )
    if trials < 1:
        raise click.UsageError(f"--trials must be >= 1, got {trials}")
    try:
        if instance_path:
            instance = load_instance(instance_path)
        elif blocks_path:
            if not areas_path:
                raise click.UsageError("--blocks requires --areas")
            instance = load_instance_csv(blocks_path, areas_path)
        else:
            instance = synth_instance(blocks_count, areas_count, seed=base_seed)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    config = ExperimentConfig(
        functions=("F1",),  # unused by the allocation path
        algorithms=(algorithm,),
        trials=trials,
        base_seed=base_seed,
        population=population,
        iterations=iterations,
    )
    report = experiments.run_allocation(instance, algorithm, config)
    out = Path(out_dir)
    experiments.write_allocation_outputs(instance, report, out)
    click.echo(
        f"{algorithm}: oracle {report.oracle_fitness:.6f}  "
        f"mean {report.mean_fitness:.6f} (std {report.std_fitness:.6f})  "
        f"best {report.best_fitness:.6f}  mean gap {report.mean_gap:.2%}  "
        f"best gap {report.best_gap:.2%}"
    )
    click.echo(f"wrote {out / f'allocation_{algorithm}.csv'}", err=True)


@main.command()
@click.option("--dim", required=True, type=int)
@click.option("--count", required=True, type=int)
def sobol(dim, count):
    """Emit Sobol points as CSV on standard output."""
    if count < 1:
        raise click.UsageError(f"--count must be >= 1, got {count}")
    try:
        sequence = SobolSequence(dim)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    for _ in range(count):
        click.echo(",".join(repr(float(v)) for v in sequence.next_point()))


@main.command()
@click.option("--t0", default=100, show_default=True, type=int)
@click.option("--tmult", default=2.0, show_default=True, type=float)
@click.option("--iters", default=500, show_default=True, type=int)
@click.option("--pa-min", default=0.25, show_default=True, type=float)
@click.option("--pa-max", default=0.5, show_default=True, type=float)
@click.option("--alpha-min", default=0.01, show_default=True, type=float)
@click.option("--alpha-max", default=0.05, show_default=True, type=float)
def schedule(t0, tmult, iters, pa_min, pa_max, alpha_min, alpha_max):
    """Emit the (iteration, discovery rate, step size) annealing table."""
    if t0 < 1 or tmult < 1.0 or iters < 0:
        raise click.UsageError("need t0 >= 1, tmult >= 1 and iters >= 0")
    try:
        pa_state = ScheduleState(pa_min, pa_max, t0, 0, tmult)
        alpha_state = ScheduleState(alpha_min, alpha_max, t0, 0, tmult)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    click.echo("iteration,pa,alpha")
    for iteration in range(iters + 1):
        click.echo(f"{iteration},{cosine_value(pa_state)!r},{cosine_value(alpha_state)!r}")
        pa_state = advance(pa_state)
        alpha_state = advance(alpha_state)


if __name__ == "__main__":
    sys.exit(main())
