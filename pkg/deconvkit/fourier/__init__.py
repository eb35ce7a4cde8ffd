"""Fourier transforms of densities and samples, and their inversion."""

from __future__ import annotations

from ._estimate import FourierEstimate as FourierEstimate
from ._grid import TGrid as TGrid
from ._grid import WindowError as WindowError
from ._inverse import InversionResult as InversionResult
from ._inverse import mc_inverse as mc_inverse
from ._transform import empirical_ft as empirical_ft
from ._transform import evaluate_empirical as evaluate_empirical
from ._transform import evaluate_mc as evaluate_mc
from ._transform import mc_fourier as mc_fourier
