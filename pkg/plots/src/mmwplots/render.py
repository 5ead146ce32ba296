"""Render figure recipes to image files.

Pure CSV consumer: tables are read with the stdlib csv module, validated
against the figure's required columns, and drawn with matplotlib (Agg).
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .recipes import (  # noqa: E402
    FIGURE_SPECS,
    FigureRecipe,
    MissingInputError,
    RecipeError,
    SchemaError,
)

MARKERS = ("o", "s", "^", "v", "D", "x", "*", "P")


def load_table(path: str, required: tuple) -> list[dict]:
    """Rows of one CSV artifact, after checking the required columns."""
    if not os.path.exists(path):
        raise MissingInputError(f"input CSV not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or ()
        for col in required:
            if col not in header:
                raise SchemaError(f"{path}: missing required column '{col}'")
        return list(reader)


def build_figure(recipe: FigureRecipe):
    """Assemble the matplotlib Figure for a recipe without saving it."""
    spec = FIGURE_SPECS.get(recipe.figure_id)
    if spec is None:
        raise RecipeError(f"unknown figure id '{recipe.figure_id}'; "
                          f"known ids: {', '.join(sorted(FIGURE_SPECS))}")
    tables = {}
    for role, columns in spec.inputs.items():
        if role not in recipe.inputs:
            raise RecipeError(f"{recipe.figure_id} requires an input CSV for "
                              f"role '{role}'")
        tables[role] = load_table(recipe.inputs[role], columns)
    series = spec.build(tables)
    if not series:
        raise RecipeError(f"{recipe.figure_id}: no rows matched the figure's "
                          "series selection")
    fig, ax = plt.subplots(figsize=(6.4, 4.8), constrained_layout=True)
    marker_idx = 0
    for s in series:
        if s.style == "markers":
            ax.errorbar(s.x, s.y, yerr=s.yerr, linestyle="none",
                        marker=MARKERS[marker_idx % len(MARKERS)],
                        markersize=4, capsize=2, label=s.label)
            marker_idx += 1
        else:
            ax.plot(s.x, s.y, label=s.label)
    ax.set_xscale(spec.axes.xscale)
    ax.set_yscale(spec.axes.yscale)
    ax.set_xlabel(spec.axes.xlabel)
    ax.set_ylabel(spec.axes.ylabel)
    ax.set_title(spec.title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    return fig, ax


def render(recipe: FigureRecipe, dpi: int = 150) -> str:
    """Render one recipe to its output path (format from the extension)."""
    fig, _ = build_figure(recipe)
    out_dir = os.path.dirname(os.path.abspath(recipe.output))
    os.makedirs(out_dir, exist_ok=True)
    try:
        fig.savefig(recipe.output, dpi=dpi)
    finally:
        plt.close(fig)
    return recipe.output
