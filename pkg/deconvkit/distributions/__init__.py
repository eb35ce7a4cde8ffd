"""Parametric distributions: sampling, densities and characteristic functions."""

from __future__ import annotations

from ._cf import cf as cf
from ._cf import has_closed_form_cf as has_closed_form_cf
from ._density import pdf as pdf
from ._density import standard_laplace_kfold_pdf as standard_laplace_kfold_pdf
from ._family import Family as Family
from ._family import ParameterError as ParameterError
from ._family import UnsupportedFamilyError as UnsupportedFamilyError
from ._sampling import sample as sample
from ._sampling import stratified_counts as stratified_counts
from ._spec import DistributionSpec as DistributionSpec
