from __future__ import annotations

import altair as alt
import pandas as pd

from ..distributions import DistributionSpec
from ..npfd import plot_density
from ._run import ReplicateOutcome
from ._summary import SummaryTable


def plot_boxplot(summary: SummaryTable) -> alt.Chart:
    """Box plots of 10×ISE per method, outliers left out."""
    frames = [
        pd.DataFrame({"method": m.upper(), "ise10": summary.inliers(m)})
        for m in summary.methods
    ]
    data = pd.concat(frames, ignore_index=True)
    return (
        alt.Chart(data, width=60 * len(summary.methods) + 120, height=300)
        .mark_boxplot(extent="min-max")
        .encode(
            x=alt.X("method:N", title=None, sort=[m.upper() for m in summary.methods]),
            y=alt.Y("ise10:Q", title="10 × ISE"),
            color=alt.Color("method:N", legend=None),
        )
        .properties(title=summary.scenario_id)
    )


def plot_representative(
    outcome: ReplicateOutcome, truth: DistributionSpec | None = None
) -> alt.Chart:
    """Overlay the density estimates of one replicate, with the true density dashed."""
    curves = {m.upper(): r for m, r in outcome.results.items() if r is not None}
    if not curves:
        raise ValueError(f"Every method failed in replicate {outcome.index}")
    return plot_density(curves, truth)
