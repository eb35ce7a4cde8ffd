from __future__ import annotations

import argparse
import dataclasses
from json import JSONDecodeError, loads
import logging
import os
from pathlib import Path
from typing import Any, Literal, Mapping

import joblib

from .._typing import Self
from ..npfd import NpfdConfig

logger = logging.getLogger(__name__)

Command = Literal["deconvolve", "simulate", "plot"]
THREADS_ENV = "DECONVKIT_THREADS"

# NpfdConfig fields settable from the command line, by flag destination
NPFD_FLAGS = {
    "epsilon": "epsilon",
    "n_max": "n_max",
    "df": "df",
    "empirical_ft": "use_empirical_ft",
    "clip_negative": "clip_negative",
}
CONFIG_KEYS = frozenset(
    {"npfd", "reps", "seed", "threads", "plot", "baselines", "out"}
)


class UsageError(ValueError):
    """Bad arguments or settings; the CLI exits with status 64."""


def resolve_threads(flag: int | None) -> int:
    """--threads, else $DECONVKIT_THREADS, else the number of logical cores."""
    if flag is not None:
        threads = flag
    elif os.environ.get(THREADS_ENV):
        raw = os.environ[THREADS_ENV]
        try:
            threads = int(raw)
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    else:
        return joblib.cpu_count()
    if threads < 1:
        raise UsageError(f"The thread count must be >= 1, got {threads}")
    return threads


def read_config_file(path: str | Path | None) -> dict[str, Any]:
    """The settings in a --config JSON file, {} if there is none.

    Raises
    ------
    FileNotFoundError
        If the file is missing.
    UsageError
        If it is not a JSON object.
    """
    if path is None:
        return {}
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"No such config file: {path}")
    try:
        settings = loads(path.read_text(encoding="utf-8"))
    except JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from None
    if not isinstance(settings, dict):
        raise UsageError(f"{path} must hold a JSON object")
    return settings


@dataclasses.dataclass(frozen=True)
class JobConfig:
    """One invocation of the command line tool, after merging flags and --config.

    `npfd` holds NpfdConfig overrides only; fields left unset fall back to the
    scenario's configuration, then to the NpfdConfig defaults.
    """

    command: Command
    inputs: tuple[Path, ...] = ()
    out: Path = Path(".")
    npfd: Mapping[str, Any] = dataclasses.field(default_factory=dict)
    baselines: tuple[str, ...] = ()
    error_dist: Path | None = None
    scenario: str | None = None
    scenario_file: Path | None = None
    reps: int | None = None
    seed: int | None = None
    threads: int = 1
    plot: bool = False

    def __post_init__(self) -> None:
        if self.reps is not None and self.reps < 1:
            raise UsageError(f"--reps must be >= 1, got {self.reps}")
        unknown = set(self.npfd) - {f.name for f in dataclasses.fields(NpfdConfig)}
        if unknown:
            raise UsageError(f"Unknown NPFD settings: {sorted(unknown)}")
        object.__setattr__(self, "npfd", dict(self.npfd))

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> Self:
        """Merge parsed flags over the settings of `args.config`.

        Flags win over the file. The file may set "npfd" (a dict of NpfdConfig
        fields), "reps", "seed", "threads", "plot", "baselines" and "out".
        """
        settings = read_config_file(getattr(args, "config", None))
        unknown = set(settings) - CONFIG_KEYS
        if unknown:
            raise UsageError(f"Unknown config file settings: {sorted(unknown)}")
        npfd = dict(settings.get("npfd", {}))
        for flag, field in NPFD_FLAGS.items():
            value = getattr(args, flag, None)
            if value is not None:
                npfd[field] = value

        def pick(name: str, default: Any = None) -> Any:
            value = getattr(args, name, None)
            return settings.get(name, default) if value is None else value

        inputs = [args.input] if getattr(args, "input", None) else []
        if getattr(args, "compare", None):
            inputs.append(args.compare)
        return cls(
            command=args.command,
            inputs=tuple(Path(p) for p in inputs),
            out=Path(pick("out", ".")),
            npfd=npfd,
            baselines=tuple(pick("baselines", ())),
            error_dist=_path(getattr(args, "error_dist", None)),
            scenario=getattr(args, "scenario", None),
            scenario_file=_path(getattr(args, "scenario_file", None)),
            reps=pick("reps"),
            seed=pick("seed"),
            threads=resolve_threads(pick("threads")),
            plot=bool(pick("plot", False)),
        )

    def npfd_config(self, base: NpfdConfig | None = None) -> NpfdConfig:
        """`base` (default NpfdConfig()) with this job's overrides applied."""
        return (base or NpfdConfig()).with_overrides(**self.npfd)

    def prepare_out(self) -> Path:
        """Create the output directory if needed and return it."""
        self.out.mkdir(parents=True, exist_ok=True)
        if not os.access(self.out, os.W_OK):
            raise UsageError(f"Cannot write to {self.out}")
        return self.out


def _path(value: str | None) -> Path | None:
    return None if value is None else Path(value)
