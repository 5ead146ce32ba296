"""Figure rendering for the mmwadhoc simulator's CSV study artifacts."""

from .recipes import (
    FIGURE_IDS,
    FIGURE_SPECS,
    Axes,
    FigureRecipe,
    FigureSpec,
    MissingInputError,
    RecipeError,
    SchemaError,
    Series,
)
from .render import build_figure, load_table, render

__all__ = [
    "Axes",
    "FIGURE_IDS",
    "FIGURE_SPECS",
    "FigureRecipe",
    "FigureSpec",
    "MissingInputError",
    "RecipeError",
    "SchemaError",
    "Series",
    "build_figure",
    "load_table",
    "render",
]

__version__ = "0.1.0"
