"""The deconvkit command line tool."""

from __future__ import annotations

from ._csv import CsvParseError as CsvParseError
from ._csv import detect_layout as detect_layout
from ._csv import read_columns as read_columns
from ._job import JobConfig as JobConfig
from ._job import UsageError as UsageError
from ._job import resolve_threads as resolve_threads
from ._main import build_parser as build_parser
from ._main import cmd_deconvolve as cmd_deconvolve
from ._main import cmd_plot as cmd_plot
from ._main import cmd_simulate as cmd_simulate
from ._main import main as main
