from __future__ import annotations

from deconvkit import baselines as baselines
from deconvkit import density as density
from deconvkit import distributions as distributions
from deconvkit import fourier as fourier
from deconvkit import npfd as npfd
from deconvkit import simbench as simbench
from deconvkit.__about__ import __version__ as __version__
from deconvkit.npfd import NpfdConfig as NpfdConfig
from deconvkit.npfd import npfd_deconvolve as npfd_deconvolve
from deconvkit.npfd import npfd_known_error as npfd_known_error
from deconvkit.npfd import npfd_replicates as npfd_replicates
