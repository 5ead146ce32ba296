"""Figure recipes over the simulator's CSV study artifacts.

Each figure id names a fixed layout: which CSV roles it consumes, which
columns those CSVs must carry, and how rows are grouped into plotted
series. No quantity is recomputed here; every plotted value appears
verbatim in an input CSV (axis unit changes aside).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence


class RecipeError(ValueError):
    """Invalid recipe: unknown figure id, missing role, or empty selection."""


class MissingInputError(RecipeError):
    """A referenced input CSV does not exist."""


class SchemaError(RecipeError):
    """An input CSV lacks a column the figure requires."""


@dataclass(frozen=True)
class FigureRecipe:
    """One renderable figure: id, role -> CSV path map, image output path."""

    figure_id: str
    inputs: Mapping[str, str]
    output: str


@dataclass(frozen=True)
class Series:
    label: str
    x: tuple
    y: tuple
    yerr: tuple | None = None
    # "line" for analytic curves, "markers" for empirical points
    style: str = "line"


@dataclass(frozen=True)
class Axes:
    xlabel: str
    ylabel: str
    yscale: str = "linear"
    xscale: str = "linear"


@dataclass(frozen=True)
class FigureSpec:
    title: str
    axes: Axes
    # role -> columns that must be present in that CSV
    inputs: Mapping[str, tuple]
    build: Callable[[dict], list]


CURVE_COLS = ("threshold_db", "value", "stderr", "kind", "source", "conditioning")
SWEEP_COLS = ("sweep_var", "value", "lambda_eps", "ase", "valid", "residual")


def _group(rows: Sequence[dict], keys: Sequence[str]) -> dict:
    out: dict = {}
    for row in rows:
        out.setdefault(tuple(row[k] for k in keys), []).append(row)
    return out


def _curve_series(rows: Sequence[dict], label: str, source: str) -> Series:
    rows = sorted(rows, key=lambda r: float(r["threshold_db"]))
    x = tuple(float(r["threshold_db"]) for r in rows)
    y = tuple(float(r["value"]) for r in rows)
    if source == "empirical":
        yerr = tuple(float(r["stderr"]) if r["stderr"] else 0.0 for r in rows)
        return Series(label=label, x=x, y=y, yerr=yerr, style="markers")
    return Series(label=label, x=x, y=y)


def _xy_series(rows: Sequence[dict], xcol: str, ycol: str, label: str,
               xscale: float = 1.0) -> Series:
    rows = sorted(rows, key=lambda r: float(r[xcol]))
    return Series(label=label,
                  x=tuple(float(r[xcol]) * xscale for r in rows),
                  y=tuple(float(r[ycol]) for r in rows))


def _sinr_by_distance(tables: dict) -> list:
    rows = [r for r in tables["sinr"]
            if r["conditioning"] == "overall"
            and r.get("distance_law", "fixed") == "fixed"]
    series = []
    for (r_m,), grp in sorted(_group(rows, ("dipole_distance",)).items(),
                              key=lambda kv: float(kv[0][0])):
        for (src,), sub in sorted(_group(grp, ("source",)).items()):
            series.append(_curve_series(sub, f"r = {float(r_m):g} m ({src})", src))
    return series


def _sinr_by_conditioning(tables: dict) -> list:
    rows = [r for r in tables["sinr"]
            if r.get("distance_law", "fixed") == "fixed"
            and r["conditioning"] in ("overall", "los_only")]
    series = []
    for (cond, src), sub in sorted(_group(rows, ("conditioning", "source")).items()):
        name = "LOS protocol" if cond == "los_only" else "unconditioned"
        series.append(_curve_series(sub, f"{name} ({src})", src))
    return series


def _sinr_by_distance_law(tables: dict) -> list:
    rows = [r for r in tables["sinr"] if r["source"] == "analytic"
            and r["conditioning"] == "overall"]
    series = []
    for (law, r_m), sub in sorted(_group(rows, ("distance_law", "dipole_distance")).items()):
        series.append(_curve_series(
            sub, f"{law} link length, mean {float(r_m):g} m", "analytic"))
    return series


def _inr_by_beamwidth(tables: dict) -> list:
    rows = [r for r in tables["inr"] if r["conditioning"] == "overall"]
    series = []
    for (bw,), grp in sorted(_group(rows, ("beamwidth_deg",)).items(),
                             key=lambda kv: float(kv[0][0])):
        for (src,), sub in sorted(_group(grp, ("source",)).items()):
            series.append(_curve_series(sub, f"{float(bw):g} deg beams ({src})", src))
    return series


def _inr_full_vs_los(tables: dict) -> list:
    series = []
    groups = _group(tables["inr"], ("beamwidth_deg", "conditioning", "source"))
    for (bw, cond, src), sub in sorted(groups.items(),
                                       key=lambda kv: (float(kv[0][0]), kv[0][1], kv[0][2])):
        name = "LOS interference only" if cond == "los_only" else "all interference"
        series.append(_curve_series(sub, f"{float(bw):g} deg, {name} ({src})", src))
    return series


def _txcap_vs_threshold(tables: dict) -> list:
    rows = [r for r in tables["sweep"] if r["valid"] == "true"]
    return [_xy_series(rows, "value", "lambda_eps", "transmission capacity")]


def _ase_vs_outage(tables: dict) -> list:
    return [_xy_series(tables["sweep"], "value", "ase", "peak area spectral efficiency")]


def _rate_by_distance(tables: dict) -> list:
    series = []
    for (r_m,), sub in sorted(_group(tables["rate"], ("dipole_distance",)).items(),
                              key=lambda kv: float(kv[0][0])):
        series.append(_xy_series(sub, "rate_bps", "coverage",
                                 f"r = {float(r_m):g} m", xscale=1e-9))
    return series


def _twoway_by_outage(tables: dict) -> list:
    series = []
    for (eps,), sub in sorted(_group(tables["twoway"], ("epsilon",)).items(),
                              key=lambda kv: float(kv[0][0])):
        series.append(_xy_series(sub, "forward_fraction", "lambda_tw",
                                 f"outage target {float(eps):g}"))
    return series


_SINR_AXES = Axes("SINR threshold (dB)", "coverage probability P[SINR > T]",
                  yscale="log")
_INR_AXES = Axes("INR threshold (dB)", "P[INR < T]")

FIGURE_SPECS: dict[str, FigureSpec] = {
    "fig4a": FigureSpec(
        title="SINR distribution vs link length, sparse network",
        axes=_SINR_AXES,
        inputs={"sinr": CURVE_COLS + ("dipole_distance", "distance_law")},
        build=_sinr_by_distance),
    "fig4b": FigureSpec(
        title="SINR distribution vs link length, dense network",
        axes=_SINR_AXES,
        inputs={"sinr": CURVE_COLS + ("dipole_distance", "distance_law")},
        build=_sinr_by_distance),
    "fig5": FigureSpec(
        title="Coverage gain from a LOS-restricted protocol",
        axes=_SINR_AXES,
        inputs={"sinr": CURVE_COLS + ("dipole_distance", "distance_law")},
        build=_sinr_by_conditioning),
    "fig6": FigureSpec(
        title="Coverage under random link-length distributions",
        axes=_SINR_AXES,
        inputs={"sinr": CURVE_COLS + ("dipole_distance", "distance_law")},
        build=_sinr_by_distance_law),
    "fig7": FigureSpec(
        title="Transmission capacity vs SINR threshold",
        axes=Axes("SINR threshold (dB)", "max density (transmitters/m^2)",
                  yscale="log"),
        inputs={"sweep": SWEEP_COLS},
        build=_txcap_vs_threshold),
    "fig8": FigureSpec(
        title="Peak area spectral efficiency vs outage target",
        axes=Axes("outage target", "ASE (bits/s/Hz/m^2)"),
        inputs={"sweep": SWEEP_COLS},
        build=_ase_vs_outage),
    "fig10": FigureSpec(
        title="Rate coverage",
        axes=Axes("rate (Gb/s)", "P[rate achievable]"),
        inputs={"rate": ("rate_bps", "bandwidth_hz", "dipole_distance",
                         "threshold_db", "coverage")},
        build=_rate_by_distance),
    "fig13": FigureSpec(
        title="INR distribution vs antenna beamwidth",
        axes=_INR_AXES,
        inputs={"inr": CURVE_COLS + ("beamwidth_deg",)},
        build=_inr_by_beamwidth),
    "fig14": FigureSpec(
        title="INR: full vs LOS-only interference",
        axes=_INR_AXES,
        inputs={"inr": CURVE_COLS + ("beamwidth_deg",)},
        build=_inr_full_vs_los),
    "fig15": FigureSpec(
        title="Two-way capacity vs forward bandwidth fraction",
        axes=Axes("forward bandwidth fraction", "two-way capacity (1/m^2)"),
        inputs={"twoway": ("forward_fraction", "epsilon", "lambda_tw",
                           "ase_tw", "valid", "residual")},
        build=_twoway_by_outage),
}

FIGURE_IDS = tuple(sorted(FIGURE_SPECS))
