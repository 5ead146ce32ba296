"""Command line entry point: render figures from a TOML recipe file.

Recipe format:

    [[figure]]
    id = "fig4a"
    output = "fig4a.png"
    [figure.inputs]
    sinr = "sinr_sparse.csv"

Relative CSV and output paths resolve against the recipe file's directory.
"""

from __future__ import annotations

import argparse
import os
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .recipes import FigureRecipe, RecipeError
from .render import render


def load_recipes(path: str) -> list[FigureRecipe]:
    if not os.path.exists(path):
        raise RecipeError(f"recipe file not found: {path}")
    with open(path, "rb") as fh:
        try:
            doc = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise RecipeError(f"{path}: invalid TOML: {exc}") from exc
    figures = doc.get("figure")
    if not figures:
        raise RecipeError(f"{path}: no [[figure]] tables found")
    base = os.path.dirname(os.path.abspath(path))
    recipes = []
    for i, fig in enumerate(figures):
        for key in ("id", "output", "inputs"):
            if key not in fig:
                raise RecipeError(f"{path}: figure #{i + 1} is missing '{key}'")
        inputs = {role: os.path.join(base, str(p))
                  for role, p in fig["inputs"].items()}
        recipes.append(FigureRecipe(figure_id=str(fig["id"]),
                                    inputs=inputs,
                                    output=os.path.join(base, str(fig["output"]))))
    return recipes


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mmwplots", description="Render figures from simulator CSV artifacts")
    parser.add_argument("recipe", help="TOML recipe file")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        for recipe in load_recipes(args.recipe):
            print(render(recipe, dpi=args.dpi))
    except RecipeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
