import pandas as pd

from airoas.harness import plot_ablation


def test_plot_ablation_writes_the_chart(tmp_path):
    table = pd.DataFrame(
        {
            "domain": ["tag"] * 4,
            "solver": ["airoas", "no_air", "airoas", "no_air"],
            "particles": [100, 100, 1000, 1000],
            "mean_return": [-8.0, -9.5, -6.1, -7.0],
            "sem": [0.4, 0.5, 0.3, 0.3],
        }
    )
    path = plot_ablation(table, tmp_path / "ablation.svg")
    assert path.exists()
    assert path.read_text().lstrip().startswith("<?xml")
