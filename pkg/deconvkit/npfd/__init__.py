"""N-power Fourier deconvolution."""

from __future__ import annotations

from ._config import NpfdConfig as NpfdConfig
from ._deconvolve import npfd_deconvolve as npfd_deconvolve
from ._deconvolve import npfd_known_error as npfd_known_error
from ._deconvolve import known_error_output_grid as known_error_output_grid
from ._deconvolve import npfd_output_grid as npfd_output_grid
from ._ft_pair import FourierPair as FourierPair
from ._ft_pair import estimate_ft_pair as estimate_ft_pair
from ._ft_pair import known_error_pair as known_error_pair
from ._plot import plot_density as plot_density
from ._plot import plot_fourier as plot_fourier
from ._power import PowerSelection as PowerSelection
from ._power import select_power as select_power
from ._quality import DataQualityWarning as DataQualityWarning
from ._quality import VarianceOrderError as VarianceOrderError
from ._quality import check_variance_order as check_variance_order
from ._replicates import LengthMismatchError as LengthMismatchError
from ._replicates import npfd_replicates as npfd_replicates
from ._replicates import pooled_replicates as pooled_replicates
from ._replicates import replicates_to_error_sample as replicates_to_error_sample
from ._result import NpfdResult as NpfdResult
from ._transform import TransformConstants as TransformConstants
from ._transform import power_constants as power_constants
from ._transform import transform_inputs as transform_inputs
