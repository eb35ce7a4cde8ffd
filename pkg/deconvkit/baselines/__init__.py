"""Comparison deconvolution methods: FDD, MCD, DKM and RMD."""

from __future__ import annotations

from ._config import METHODS as METHODS
from ._config import BaselineConfig as BaselineConfig
from ._config import run_baseline as run_baseline
from ._dkm import dkm_bandwidth as dkm_bandwidth
from ._dkm import dkm_deconvolve as dkm_deconvolve
from ._dkm import dkm_kernel as dkm_kernel
from ._fdd import DampingFit as DampingFit
from ._fdd import DampingFitError as DampingFitError
from ._fdd import DecayFit as DecayFit
from ._fdd import estimate_damping as estimate_damping
from ._fdd import fdd_deconvolve as fdd_deconvolve
from ._fdd import fit_decay as fit_decay
from ._kernels import KERNELS as KERNELS
from ._kernels import bartlett_damping as bartlett_damping
from ._kernels import cutoff_frequency as cutoff_frequency
from ._kernels import kernel_ft as kernel_ft
from ._mcd import mcd_bandwidth as mcd_bandwidth
from ._mcd import mcd_deconvolve as mcd_deconvolve
from ._result import BaselineResult as BaselineResult
from ._rmd import replicate_error_ft as replicate_error_ft
from ._rmd import rmd_deconvolve as rmd_deconvolve
