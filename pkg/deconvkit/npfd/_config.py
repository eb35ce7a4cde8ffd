from __future__ import annotations

import dataclasses
from typing import Any, Literal, Mapping

from .._typing import Self
from ..fourier._inverse import NORMALIZATIONS, Normalization

DEFAULT_EPSILON = 0.001
SMALL_SAMPLE_EPSILON = 0.1


@dataclasses.dataclass(frozen=True)
class NpfdConfig:
    """Tuning parameters of an NPFD deconvolution.

    Parameters
    ----------
    epsilon
        ε, the threshold |φ̂_Ỹ|^N must fall below. None picks 0.001, or
        max(0.1, n_x^{-1/2}) when the smaller sample has at most
        `empirical_threshold` observations.
    delta
        δ, the margin at which the threshold is checked a second time.
        None means two spacings of the scan grid.
    n_max
        The largest power tried.
    n_points
        ℓ, the number of points of the Monte Carlo Fourier integrals.
    K
        The number of points of the scan and inversion grids; odd.
    df, df_x
        Degrees of freedom of the spline density fits of z and x.
        `df_x` defaults to `df`.
    use_empirical_ft
        Always use empirical Fourier transforms, whatever the sample sizes.
    clip_negative
        Set negative density values to 0.
    rescale_at_zero
        Divide the quotient by its value at t = 0 before powering it.
    n_y
        The number of points of the output grid.
    power
        Use this N instead of searching for one.
    """

    epsilon: float | None = None
    delta: float | None = None
    n_max: int = 30
    n_points: int = 100
    K: int = 401
    df: int = 5
    df_x: int | None = None
    use_empirical_ft: bool = False
    clip_negative: bool = False
    rescale_at_zero: bool = True
    n_y: int = 512
    power: int | None = None
    t_max: float = 32.0
    max_grid_doublings: int = 3
    anchor: Literal["mode", "median"] = "mode"
    normalization: Normalization = "padded"
    empirical_threshold: int = 200
    rescale_tolerance: float = 0.1

    def __post_init__(self) -> None:
        if self.epsilon is not None and not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if self.delta is not None and not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        if self.power is not None and self.power < 1:
            raise ValueError(f"power must be >= 1, got {self.power}")
        if self.K < 3 or self.K % 2 != 1:
            raise ValueError(f"K must be odd and >= 3, got {self.K}")
        if self.n_points < 10:
            raise ValueError(f"n_points must be >= 10, got {self.n_points}")
        for name in ("df", "df_x"):
            value = getattr(self, name)
            if value is not None and value < 3:
                raise ValueError(f"{name} must be >= 3, got {value}")
        if self.n_y < 2:
            raise ValueError(f"n_y must be >= 2, got {self.n_y}")
        if not self.t_max > 0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.max_grid_doublings < 0:
            raise ValueError("max_grid_doublings must be >= 0")
        if self.anchor not in ("mode", "median"):
            raise ValueError(f"anchor must be 'mode' or 'median', got {self.anchor!r}")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(
                f"normalization must be one of {NORMALIZATIONS}, "
                f"got {self.normalization!r}"
            )

    @property
    def x_df(self) -> int:
        return self.df if self.df_x is None else self.df_x

    def uses_empirical(self, n_x: int, n_z: int) -> bool:
        """Whether the empirical Fourier transforms replace the spline fits."""
        return self.use_empirical_ft or min(n_x, n_z) <= self.empirical_threshold

    def resolve_epsilon(self, n_x: int, n_z: int) -> float:
        if self.epsilon is not None:
            return self.epsilon
        if min(n_x, n_z) <= self.empirical_threshold:
            return max(SMALL_SAMPLE_EPSILON, n_x**-0.5)
        return DEFAULT_EPSILON

    def with_overrides(self, **overrides: Any) -> Self:
        """A copy with the given fields replaced; None values are ignored."""
        return dataclasses.replace(
            self, **{k: v for k, v in overrides.items() if v is not None}
        )

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> Self:
        """Build from a dict, rejecting unknown keys."""
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"Unknown NpfdConfig fields: {sorted(unknown)}")
        return cls(**d)
