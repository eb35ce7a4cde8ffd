"""Simulation benchmarks: built-in scenarios, replicated runs and their summaries."""

from __future__ import annotations

from ._ise import GridTooCoarseError as GridTooCoarseError
from ._ise import count_turning_points as count_turning_points
from ._ise import ise as ise
from ._plot import plot_boxplot as plot_boxplot
from ._plot import plot_representative as plot_representative
from ._registry import builtin_scenarios as builtin_scenarios
from ._registry import get_scenario as get_scenario
from ._run import MAX_ATTEMPTS as MAX_ATTEMPTS
from ._run import ReplicateOutcome as ReplicateOutcome
from ._run import ScenarioInfeasibleError as ScenarioInfeasibleError
from ._run import draw_samples as draw_samples
from ._run import replicate_rng as replicate_rng
from ._run import run_replicate as run_replicate
from ._run import run_scenario as run_scenario
from ._scenario import MODES as MODES
from ._scenario import ScenarioSpec as ScenarioSpec
from ._scenario import UnknownScenarioError as UnknownScenarioError
from ._summary import SummaryTable as SummaryTable
from ._summary import median_of_halves as median_of_halves
