import pytest
from matplotlib.container import ErrorbarContainer

from mmwplots import (
    FIGURE_IDS,
    FigureRecipe,
    MissingInputError,
    RecipeError,
    SchemaError,
    build_figure,
    render,
)

FIGURE_INPUTS = {
    "fig4a": {"sinr": "sinr_sparse.csv"},
    "fig4b": {"sinr": "sinr_dense.csv"},
    "fig5": {"sinr": "sinr_sparse.csv"},
    "fig6": {"sinr": "sinr_sparse.csv"},
    "fig7": {"sweep": "txcap.csv"},
    "fig8": {"sweep": "ase.csv"},
    "fig10": {"rate": "rate.csv"},
    "fig13": {"inr": "inr.csv"},
    "fig14": {"inr": "inr.csv"},
    "fig15": {"twoway": "twoway.csv"},
}

# figures whose inputs carry simulated points alongside the analytic curves
WITH_EMPIRICAL = ("fig4a", "fig4b", "fig5", "fig13", "fig14")


def _recipe(artifact_dir, fig_id, out_name=None):
    inputs = {role: str(artifact_dir / name)
              for role, name in FIGURE_INPUTS[fig_id].items()}
    return FigureRecipe(figure_id=fig_id, inputs=inputs,
                        output=str(artifact_dir / (out_name or f"{fig_id}.png")))


def test_inputs_cover_every_known_figure():
    assert tuple(sorted(FIGURE_INPUTS)) == FIGURE_IDS


@pytest.mark.parametrize("fig_id", sorted(FIGURE_INPUTS))
def test_render_smoke(artifact_dir, fig_id, tmp_path):
    recipe = _recipe(artifact_dir, fig_id)
    out = render(recipe)
    assert out == recipe.output
    assert (artifact_dir / f"{fig_id}.png").stat().st_size > 0


@pytest.mark.parametrize("fig_id", sorted(FIGURE_INPUTS))
def test_series_styles(artifact_dir, fig_id):
    import matplotlib.pyplot as plt

    fig, ax = build_figure(_recipe(artifact_dir, fig_id))
    try:
        assert len(ax.lines) > 0
        bars = [c for c in ax.containers if isinstance(c, ErrorbarContainer)]
        if fig_id in WITH_EMPIRICAL:
            assert bars, "empirical series must carry error bars"
        assert ax.get_legend() is not None
    finally:
        plt.close(fig)


def test_svg_output(artifact_dir):
    out = render(_recipe(artifact_dir, "fig7", out_name="fig7.svg"))
    assert out.endswith(".svg")
    assert b"<svg" in (artifact_dir / "fig7.svg").read_bytes()[:500]


def test_rendering_does_not_mutate_inputs(artifact_dir):
    csv_path = artifact_dir / "sinr_sparse.csv"
    before = csv_path.read_bytes()
    render(_recipe(artifact_dir, "fig4a"))
    render(_recipe(artifact_dir, "fig4a"))
    assert csv_path.read_bytes() == before


def test_missing_csv_names_path(tmp_path):
    missing = tmp_path / "nope.csv"
    recipe = FigureRecipe(figure_id="fig7", inputs={"sweep": str(missing)},
                          output=str(tmp_path / "x.png"))
    with pytest.raises(MissingInputError, match="nope.csv"):
        render(recipe)


def test_schema_mismatch_names_column(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("sweep_var,value,ase,valid,residual\nthreshold_db,0,0,true,0\n")
    recipe = FigureRecipe(figure_id="fig7", inputs={"sweep": str(bad)},
                          output=str(tmp_path / "x.png"))
    with pytest.raises(SchemaError, match="lambda_eps"):
        render(recipe)


def test_unknown_figure_id(tmp_path):
    recipe = FigureRecipe(figure_id="fig99", inputs={}, output=str(tmp_path / "x.png"))
    with pytest.raises(RecipeError, match="fig99"):
        render(recipe)


def test_missing_role(tmp_path):
    recipe = FigureRecipe(figure_id="fig7", inputs={}, output=str(tmp_path / "x.png"))
    with pytest.raises(RecipeError, match="sweep"):
        render(recipe)


class TestCli:
    def test_recipe_file_end_to_end(self, artifact_dir, capsys):
        from mmwplots.cli import main

        recipe_file = artifact_dir / "figures.toml"
        recipe_file.write_text(
            '[[figure]]\nid = "fig4a"\noutput = "cli_fig4a.png"\n'
            '[figure.inputs]\nsinr = "sinr_sparse.csv"\n\n'
            '[[figure]]\nid = "fig15"\noutput = "cli_fig15.png"\n'
            '[figure.inputs]\ntwoway = "twoway.csv"\n')
        assert main([str(recipe_file)]) == 0
        assert (artifact_dir / "cli_fig4a.png").stat().st_size > 0
        assert (artifact_dir / "cli_fig15.png").stat().st_size > 0
        assert capsys.readouterr().out.count(".png") == 2

    def test_bad_recipe_reports_error(self, tmp_path, capsys):
        from mmwplots.cli import main

        recipe_file = tmp_path / "broken.toml"
        recipe_file.write_text('[[figure]]\nid = "fig4a"\n')
        assert main([str(recipe_file)]) == 2
        assert "output" in capsys.readouterr().err

    def test_missing_recipe_file(self, tmp_path, capsys):
        from mmwplots.cli import main

        assert main([str(tmp_path / "absent.toml")]) == 2
        assert "absent.toml" in capsys.readouterr().err
