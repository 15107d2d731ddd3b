"""Plot-ready score-distribution data: histograms and smoothed densities.

No rendering happens here; the output feeds whatever plotting tool the
caller prefers. Histogram bins share integer-aligned unit-width edges
across the groups of a component so the groups are directly comparable.
Densities are Gaussian kernel estimates with Silverman's rule-of-thumb
bandwidth 0.9 * min(sd, IQR/1.34) * n^(-1/5) (the IQR candidate is ignored
when zero); a group whose bandwidth degenerates to zero gets a histogram
only, plus a warning.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from . import __version__, kernels
from .dataset import Dataset, Diagnostic
from .errors import ConfigError

FORMATS = ("json", "csv")

#: Density grids extend this many bandwidths past the sample extremes,
#: keeping the trapezoidal integral within ~0.3% of one.
_GRID_PAD = 3.0


def silverman_bandwidth(values: np.ndarray) -> float:
    """Rule-of-thumb KDE bandwidth; 0.0 when the sample is degenerate."""
    n = values.size
    if n < 2:
        return 0.0
    sd = float(np.std(values, ddof=1))
    q1, q3 = np.quantile(values, [0.25, 0.75])
    iqr = float(q3 - q1)
    spread = min(sd, iqr / 1.34) if iqr > 0 else sd
    if spread <= 0:
        return 0.0
    return 0.9 * spread * n ** (-0.2)


def histogram_edges(lo: float, hi: float, bin_width: float = 1.0) -> np.ndarray:
    """Integer-aligned bin edges of the given width covering [lo, hi]."""
    if bin_width <= 0:
        raise ConfigError(f"bin width must be positive, got {bin_width}")
    start = math.floor(lo)
    nbins = max(1, math.ceil((hi - start) / bin_width - 1e-9))
    return start + bin_width * np.arange(nbins + 1)


@dataclass
class GroupPlot:
    label: str
    count: int
    counts: list[int]
    density: dict | None  # {"x": [...], "y": [...], "bandwidth": h}


@dataclass
class ComponentPlot:
    component: str
    bin_edges: list[float]
    groups: list[GroupPlot]


@dataclass
class PlotData:
    metadata: dict
    components: list[ComponentPlot]
    warnings: list[Diagnostic]


def build_plotdata(
    dataset: Dataset,
    bin_width: float = 1.0,
    grid_points: int = 256,
    bandwidth: float | None = None,
) -> PlotData:
    """Histogram and density series for every (component, group)."""
    if grid_points < 2:
        raise ConfigError(f"grid_points must be >= 2, got {grid_points}")
    if bandwidth is not None and bandwidth <= 0:
        raise ConfigError(f"bandwidth must be positive, got {bandwidth}")
    components = []
    warnings: list[Diagnostic] = []
    for cid, grouped in dataset.components.items():
        pooled = grouped.union()
        edges = histogram_edges(float(pooled.min()), float(pooled.max()), bin_width)
        groups = []
        for label, values in grouped.groups.items():
            counts, _ = np.histogram(values, bins=edges)
            h = bandwidth if bandwidth is not None else silverman_bandwidth(values)
            density = None
            if h > 0:
                x = np.linspace(
                    float(values.min()) - _GRID_PAD * h,
                    float(values.max()) + _GRID_PAD * h,
                    grid_points,
                )
                y = kernels.kde_gaussian(values, x, h)
                density = {"x": x.tolist(), "y": y.tolist(), "bandwidth": h}
            else:
                warnings.append(
                    Diagnostic(
                        "warning",
                        "degenerate bandwidth (single-valued or singleton group),"
                        " density omitted",
                        f"component '{cid}' group '{label}'",
                    )
                )
            groups.append(GroupPlot(label, int(values.size), counts.tolist(), density))
        components.append(ComponentPlot(cid, edges.tolist(), groups))
    metadata = {
        "tool": f"sqfr {__version__}",
        "input": dataset.provenance.source,
        "bin_width": bin_width,
        "grid_points": grid_points,
        "bandwidth": bandwidth if bandwidth is not None else "silverman",
    }
    return PlotData(metadata, components, warnings)


def to_json(plot: PlotData) -> str:
    doc = {
        "metadata": plot.metadata,
        "components": [
            {
                "component": c.component,
                "bin_edges": c.bin_edges,
                "groups": [
                    {
                        "label": g.label,
                        "count": g.count,
                        "counts": g.counts,
                        "density": g.density,
                    }
                    for g in c.groups
                ],
            }
            for c in plot.components
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def to_csv(plot: PlotData) -> str:
    """Long-format rows: histogram bins (x0, x1) and density points (x0 == x1)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["component", "group", "series", "x0", "x1", "value"])
    for c in plot.components:
        for g in c.groups:
            for k, count in enumerate(g.counts):
                writer.writerow(
                    [c.component, g.label, "histogram",
                     repr(c.bin_edges[k]), repr(c.bin_edges[k + 1]), count]
                )
            if g.density is not None:
                for x, y in zip(g.density["x"], g.density["y"]):
                    writer.writerow([c.component, g.label, "density", repr(x), repr(x), repr(y)])
    return buf.getvalue()


def render(plot: PlotData, fmt: str) -> str:
    if fmt == "json":
        return to_json(plot)
    if fmt == "csv":
        return to_csv(plot)
    raise ConfigError(f"unknown plot-data format {fmt!r}; expected one of {FORMATS}")
