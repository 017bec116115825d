import networkx as nx

from burkhardt_core.fibration import P0, cubic_family, fiber_of
from burkhardt_core.plots import (
    ACCENT,
    fiber_centrality,
    fibration_graph_figure,
    height_growth_figure,
    rst_index_figure,
    rst_index_grid,
    write_figure,
)


def test_rst_index_grid():
    grid = rst_index_grid()
    assert grid.shape == (4, 4)
    assert grid[0, 0] == 1
    assert (grid == 4).sum() == 4
    assert (grid == 2).sum() == 11


def test_rst_index_figure():
    fig = rst_index_figure()
    assert len(fig.data) == 1
    template = fig.layout.template
    assert template.layout.font.color == "#f0f3ff"
    assert template.data.heatmap[0].zmax == 4
    assert template.layout.colorway[0] == ACCENT


def test_height_growth_figure():
    u, v, base = fiber_of(P0)
    fig = height_growth_figure(cubic_family(u, v), base, n=4)
    assert list(fig.data[0].x) == [1, 2, 3, 4]


def _small_graph():
    g = nx.Graph()
    g.add_node("L345:3/5,4", kind="fiber")
    for name in ("(1:0)", "(0:1)", "(1:1)"):
        g.add_node(name, kind="point")
        g.add_edge(name, "L345:3/5,4")
    return g


def test_fiber_centrality_picks_the_hub():
    degree, betweenness = fiber_centrality(_small_graph())
    assert max(degree, key=degree.get) == "L345:3/5,4"
    assert betweenness["L345:3/5,4"] == 1.0


def test_graph_figure_and_html(tmp_path):
    fig = fibration_graph_figure(_small_graph())
    assert [t.name for t in fig.data] == ["Edges", "fiber", "point"]
    out = write_figure(fig, tmp_path / "graph.html")
    assert out.exists()
    assert "plotly" in out.read_text(encoding="utf-8")
