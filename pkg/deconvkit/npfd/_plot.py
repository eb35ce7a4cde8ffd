from __future__ import annotations

from typing import Mapping

import altair as alt
import pandas as pd

from .._typing import DensityCurve
from ..distributions import DistributionSpec
from ._result import NpfdResult


def plot_density(
    result: DensityCurve | Mapping[str, DensityCurve],
    truth: DistributionSpec | None = None,
) -> alt.Chart:
    """Plot one or more density estimates, optionally against the truth.

    Parameters
    ----------
    result
        A single result, or a mapping from labels to results to overlay.
        Baseline results work as well as NPFD ones.
    truth
        If given, its density is drawn dashed on the grid of the first result.

    Returns
    -------
    alt.Chart
        The plot.
    """
    if isinstance(result, Mapping):
        results = dict(result)
    else:
        results = {getattr(result, "method", "npfd").upper(): result}
    frames = []
    for label, r in results.items():
        frame = r.to_frame()
        frame["curve"] = label
        frames.append(frame)
    data = pd.concat(frames, ignore_index=True)
    x = alt.X("y:Q", title="y")
    y = alt.Y("fhat:Q", title="density")
    chart = (
        alt.Chart(data, width=480, height=300)
        .mark_line()
        .encode(x=x, y=y, color=alt.Color("curve:N", title=None))
    )
    if truth is None:
        return chart
    grid = next(iter(results.values())).ygrid
    true_curve = (
        alt.Chart(pd.DataFrame({"y": grid, "fhat": truth.pdf(grid)}))
        .mark_line(color="black", strokeDash=[5, 3])
        .encode(x=x, y=y)
    )
    return chart + true_curve


def plot_fourier(result: NpfdResult) -> alt.Chart:
    """Plot |φ̂_Ỹ| and |φ̂_Ỹ|^N over [-γ, γ], with the threshold ε.

    Use this to see how much damping the chosen N adds, and whether the
    powered quotient really vanishes at the window edges.
    """
    window = result.window.to_frame()
    powered = result.quotient.to_frame()
    data = pd.concat(
        [
            pd.DataFrame(
                {"t": window["t"], "modulus": window["modulus"], "curve": "|φ̂|"}
            ),
            pd.DataFrame(
                {
                    "t": powered["t"],
                    "modulus": powered["modulus"],
                    "curve": f"|φ̂|^{result.N}",
                }
            ),
        ],
        ignore_index=True,
    )
    lines = (
        alt.Chart(data, width=480, height=300)
        .mark_line()
        .encode(
            x=alt.X("t:Q", title="t"),
            y=alt.Y("modulus:Q", title="modulus"),
            color=alt.Color("curve:N", title=None),
        )
    )
    threshold = (
        alt.Chart(pd.DataFrame({"epsilon": [result.epsilon]}))
        .mark_rule(strokeDash=[4, 4], color="gray")
        .encode(y="epsilon:Q")
    )
    title = f"N = {result.N}, γ = {result.gamma:.3g}"
    return (lines + threshold).properties(title=title)


