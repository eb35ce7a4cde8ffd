from __future__ import annotations

import argparse
import dataclasses
from json import JSONDecodeError, dumps, loads
import logging
from pathlib import Path
import sys
from typing import NoReturn, Sequence
import warnings

import altair as alt
import pandas as pd

from .. import __about__
from .._typing import DensityCurve, FloatArray
from .._util import save_svg
from ..baselines import (
    METHODS,
    BaselineConfig,
    BaselineResult,
    DampingFitError,
    run_baseline,
)
from ..density import DegenerateKnotsError, FitFailureError, InsufficientDataError
from ..distributions import DistributionSpec, ParameterError, UnsupportedFamilyError
from ..fourier import WindowError
from ..npfd import (
    DataQualityWarning,
    LengthMismatchError,
    NpfdResult,
    VarianceOrderError,
    npfd_deconvolve,
    npfd_known_error,
    npfd_replicates,
    plot_density,
    plot_fourier,
)
from ..simbench import (
    ScenarioSpec,
    SummaryTable,
    UnknownScenarioError,
    builtin_scenarios,
    get_scenario,
    plot_boxplot,
    plot_representative,
    run_scenario,
)
from ._csv import CsvParseError, detect_layout, read_columns
from ._job import THREADS_ENV, JobConfig, UsageError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VARIANCE_ORDER = 2
EXIT_INPUT = 3
EXIT_UNKNOWN_SCENARIO = 4
EXIT_NUMERICAL = 5
EXIT_USAGE = 64

# baselines that can run on each input layout
_LAYOUT_BASELINES = {
    ("x", "z"): ("fdd", "mcd"),
    ("z1", "z2"): ("rmd",),
    ("z",): ("dkm",),
}


class InputError(ValueError):
    """An input file exists but holds nothing we can use."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_npfd_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("NPFD settings")
    group.add_argument("--epsilon", type=float, help="threshold on |φ̂_Ỹ|")
    group.add_argument("--n-max", type=int, help="largest power N to try")
    group.add_argument("--df", type=int, help="spline degrees of freedom")
    group.add_argument(
        "--empirical-ft",
        action="store_true",
        default=None,
        help="use empirical instead of Monte Carlo Fourier transforms",
    )
    group.add_argument(
        "--clip-negative",
        action="store_true",
        default=None,
        help="set negative density values to 0",
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="output directory (default: .)")
    parser.add_argument("--config", help="JSON file of settings; flags override it")
    parser.add_argument(
        "--plot", action="store_true", default=None, help="also write SVG plots"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="deconvkit",
        description="Density deconvolution with N-power Fourier deconvolution.",
    )
    parser.add_argument("--version", action="version", version=__about__.__version__)
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="more logging, repeatable"
    )
    parser.add_argument("-q", "--quiet", action="count", default=0, help="less logging")
    commands = parser.add_subparsers(dest="command", required=True)

    deconvolve = commands.add_parser(
        "deconvolve",
        help="estimate the density of Y from data",
        description=(
            "INPUT is a CSV with columns x,z (two samples), z1,z2 (two "
            "replicate measurements per unit) or z together with --error-dist."
        ),
    )
    deconvolve.add_argument("input", help="CSV file")
    deconvolve.add_argument("--error-dist", help="JSON distribution of the known error")
    deconvolve.add_argument(
        "--baseline",
        dest="baselines",
        action="append",
        choices=METHODS,
        help="also run this comparison method, repeatable",
    )
    _add_common(deconvolve)
    _add_npfd_flags(deconvolve)

    simulate = commands.add_parser("simulate", help="run a simulation scenario")
    source = simulate.add_mutually_exclusive_group(required=True)
    source.add_argument("--scenario", help="built-in scenario id")
    source.add_argument("--scenario-file", help="JSON scenario")
    source.add_argument(
        "--list", action="store_true", help="list the built-in scenarios and exit"
    )
    simulate.add_argument("--reps", type=int, help="number of replicates")
    simulate.add_argument("--seed", type=int, help="base seed")
    simulate.add_argument(
        "--threads",
        type=int,
        help=f"worker processes (default: ${THREADS_ENV}, else all cores)",
    )
    _add_common(simulate)
    _add_npfd_flags(simulate)

    plot = commands.add_parser("plot", help="render a result file as SVG")
    plot.add_argument("input", help="result JSON or density CSV")
    plot.add_argument("--compare", help="a second result to overlay")
    plot.add_argument("--out", help="output directory (default: .)")
    return parser


def _configure_logging(verbose: int, quiet: int) -> None:
    level = logging.WARNING - 10 * verbose + 10 * quiet
    logging.basicConfig(
        level=max(level, logging.DEBUG),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _write_json(d: dict, path: Path) -> None:
    path.write_text(dumps(d, indent=2), encoding="utf-8")
    logger.info("Wrote %s", path)


def _write_csv(frame: pd.DataFrame, path: Path) -> None:
    frame.to_csv(path, index=False)
    logger.info("Wrote %s", path)


def _write_svg(chart: alt.TopLevelMixin, path: Path) -> None:
    save_svg(chart, path)
    logger.info("Wrote %s", path)


def cmd_deconvolve(job: JobConfig) -> int:
    """Deconvolve one CSV file and write result.json and density.csv."""
    (path,) = job.inputs
    columns = read_columns(path)
    config = job.npfd_config()
    if job.error_dist is not None:
        if "z" not in columns:
            raise CsvParseError("Expected a z column", 1, path)
        layout: tuple[str, ...] = ("z",)
        error: DistributionSpec | None = DistributionSpec.from_json(job.error_dist)
    else:
        layout = detect_layout(columns, path)
        error = None
        if layout == ("z",):
            raise UsageError("A lone z column needs --error-dist")
    incompatible = set(job.baselines) - set(_LAYOUT_BASELINES[layout])
    if incompatible:
        raise UsageError(
            f"Cannot run {sorted(incompatible)} on columns {','.join(layout)}"
        )
    data = {name: columns[name] for name in layout}

    result: NpfdResult
    if layout == ("x", "z"):
        result = npfd_deconvolve(data["x"], data["z"], config)
    elif layout == ("z1", "z2"):
        result = npfd_replicates(data["z1"], data["z2"], config)
    else:
        assert error is not None
        result = npfd_known_error(data["z"], error, config)
    print(repr(result))

    out = job.prepare_out()
    _write_json(result.to_json(), out / "result.json")
    _write_csv(result.to_frame(), out / "density.csv")
    curves: dict[str, DensityCurve] = {"NPFD": result}
    for method in job.baselines:
        baseline = run_baseline(
            BaselineConfig(method=method, error=error),  # type: ignore[arg-type]
            result.ygrid,
            **data,
        )
        _write_json(baseline.to_json(), out / f"{method}.json")
        _write_csv(baseline.to_frame(), out / f"{method}.csv")
        curves[method.upper()] = baseline
    if job.plot:
        _write_svg(plot_density(curves), out / "density.svg")
        _write_svg(plot_fourier(result), out / "fourier.svg")
    return EXIT_OK


def _load_scenario(job: JobConfig) -> ScenarioSpec:
    if job.scenario_file is not None:
        if not job.scenario_file.is_file():
            raise FileNotFoundError(f"No such scenario file: {job.scenario_file}")
        try:
            spec = ScenarioSpec.from_json(job.scenario_file)
        except (KeyError, TypeError) as e:
            raise InputError(f"{job.scenario_file} is not a scenario: {e}") from None
    else:
        assert job.scenario is not None
        spec = get_scenario(job.scenario)
    return spec.with_overrides(
        replicates=job.reps,
        base_seed=job.seed,
        npfd=job.npfd_config(spec.npfd),
    )


def cmd_simulate(job: JobConfig) -> int:
    """Run a scenario and write its summary, raw values and representative run."""
    spec = _load_scenario(job)
    out = job.prepare_out()
    summary = run_scenario(spec, n_jobs=job.threads)
    print(f"{spec.id}: {summary.headline()}")
    summary.to_csv(out / "summary.csv")
    _write_json(summary.to_json(), out / "summary.json")
    _write_csv(summary.replicates_frame(), out / "replicates.csv")
    representative = summary.representative
    if representative is not None:
        _write_csv(representative.to_frame(), out / "representative.csv")
    if job.plot:
        _write_svg(plot_boxplot(summary), out / "boxplot.svg")
        if representative is not None:
            _write_svg(
                plot_representative(representative, spec.target),
                out / "representative.svg",
            )
    return EXIT_OK


def list_scenarios() -> int:
    for spec in builtin_scenarios():
        print(f"{spec.id}\t{spec.description}")
    return EXIT_OK


@dataclasses.dataclass(frozen=True)
class _TabulatedDensity:
    ygrid: FloatArray
    density: FloatArray

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"y": self.ygrid, "fhat": self.density})


def _load_curves(path: Path) -> dict[str, DensityCurve] | SummaryTable:
    if not path.is_file():
        raise FileNotFoundError(f"No such input file: {path}")
    if path.suffix.lower() == ".csv":
        columns = read_columns(path)
        if "y" not in columns or len(columns) < 2:
            raise CsvParseError("Expected a y column and density columns", 1, path)
        y = columns.pop("y")
        if any(v.size != y.size for v in columns.values()):
            raise CsvParseError("Density columns must match the y column", None, path)
        return {
            name: _TabulatedDensity(y, v)
            for name, v in columns.items()
        }
    try:
        d = loads(path.read_text(encoding="utf-8"))
    except (JSONDecodeError, UnicodeDecodeError) as e:
        raise InputError(f"{path} is not a JSON file: {e}") from None
    if not isinstance(d, dict):
        raise InputError(f"{path} holds no result")
    if "scenario" in d and "values" in d:
        return SummaryTable.from_json(d)
    if "N" in d and "density" in d:
        return {"NPFD": NpfdResult.from_json(d)}
    if "method" in d and "density" in d:
        return {d["method"].upper(): BaselineResult.from_json(d)}
    raise InputError(f"{path} holds no result")


def _source_labels(paths: Sequence[Path]) -> list[str]:
    stems = [p.stem for p in paths]
    if len(set(stems)) == len(stems):
        return stems
    return [f"{p.parent.name}/{p.stem}" for p in paths]


def cmd_plot(job: JobConfig) -> int:
    """Render a result, a density CSV or a summary as plot.svg."""
    loaded = [_load_curves(p) for p in job.inputs]
    if any(isinstance(x, SummaryTable) for x in loaded):
        if len(loaded) > 1:
            raise UsageError("--compare does not work with summaries")
        chart = plot_boxplot(loaded[0])  # type: ignore[arg-type]
    else:
        curves: dict[str, DensityCurve] = {}
        sources = _source_labels(job.inputs)
        for source, found in zip(sources, loaded):
            assert isinstance(found, dict)
            for name, curve in found.items():
                label = source if name == "fhat" else name
                if len(loaded) > 1 and name != "fhat":
                    label = f"{source}: {name}"
                curves[label] = curve
        chart = plot_density(curves)
    _write_svg(chart, job.prepare_out() / "plot.svg")
    return EXIT_OK


def run(job: JobConfig) -> int:
    if job.command == "deconvolve":
        return cmd_deconvolve(job)
    if job.command == "simulate":
        return cmd_simulate(job)
    return cmd_plot(job)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line tool and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help, --version and usage errors
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    _configure_logging(args.verbose, args.quiet)
    try:
        if args.command == "simulate" and args.list:
            return list_scenarios()
        job = JobConfig.from_args(args)
        with warnings.catch_warnings():
            # report each data-quality problem once, on stderr
            warnings.simplefilter("default", DataQualityWarning)
            return run(job)
    except VarianceOrderError as e:
        return _fail(e, EXIT_VARIANCE_ORDER)
    except UnknownScenarioError as e:
        return _fail(e, EXIT_UNKNOWN_SCENARIO)
    except (DampingFitError, WindowError, FitFailureError) as e:
        return _fail(e, EXIT_NUMERICAL)
    except (
        CsvParseError,
        InputError,
        FileNotFoundError,
        ParameterError,
        UnsupportedFamilyError,
        JSONDecodeError,
        LengthMismatchError,
        InsufficientDataError,
        DegenerateKnotsError,
    ) as e:
        return _fail(e, EXIT_INPUT)
    except (UsageError, ValueError) as e:
        return _fail(e, EXIT_USAGE)


def _fail(e: Exception, code: int) -> int:
    print(f"deconvkit: error: {e}", file=sys.stderr)
    return code
