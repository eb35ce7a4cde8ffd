"""Histogram-based Poisson spline density estimation."""

from __future__ import annotations

from ._fit import DensityFit as DensityFit
from ._fit import FitFailureError as FitFailureError
from ._fit import eval_density as eval_density
from ._fit import fit_density as fit_density
from ._fit import fit_poisson_spline as fit_poisson_spline
from ._histogram import Histogram as Histogram
from ._histogram import InsufficientDataError as InsufficientDataError
from ._histogram import build_histogram as build_histogram
from ._histogram import select_bin_count as select_bin_count
from ._knots import DegenerateKnotsError as DegenerateKnotsError
from ._knots import knot_levels as knot_levels
from ._knots import mode_fraction as mode_fraction
from ._knots import place_knots as place_knots
from ._spline import NaturalSplineBasis as NaturalSplineBasis
