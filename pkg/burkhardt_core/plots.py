# burkhardt_core/plots.py

from pathlib import Path

import networkx as nx
import numpy as np
import plotly.graph_objects as go
import plotly.io as pio

from .brauer import all_classes, rst_index_classify
from .fibration import height_bits, multiples

ACCENT = "#00e5ff"
INDEX_COLORS = {1: "#1f2a44", 2: "#2979ff", 4: "#ff1744"}
INDEX_COLORSCALE = [[0.0, INDEX_COLORS[1]], [0.34, INDEX_COLORS[2]], [1.0, INDEX_COLORS[4]]]


# ------------------------------------------
# PLOTLY THEME
# ------------------------------------------

def make_plotly_template(accent: str = ACCENT):
    """Dark transparent theme for the index grid, height growth and fiber graph."""
    grid = dict(gridcolor="rgba(255,255,255,0.1)", zeroline=False)
    pio.templates["burkhardt"] = go.layout.Template(
        layout=dict(
            paper_bgcolor="rgba(0,0,0,0)",
            plot_bgcolor="rgba(0,0,0,0)",
            font=dict(color="#f0f3ff", family="monospace"),
            colorway=[accent, "#ffd54f", INDEX_COLORS[4]],
            hoverlabel=dict(bordercolor=accent),
            xaxis=grid,
            yaxis=grid,
        ),
        # index 1, 2, 4 cells of the Br(R)[2] grid
        data=dict(
            heatmap=[go.Heatmap(colorscale=INDEX_COLORSCALE, zmin=1, zmax=4, showscale=False)],
        ),
    )
    pio.templates.default = "burkhardt"

def get_figure(accent: str = ACCENT):
    make_plotly_template(accent)
    return go.Figure()


# ------------------------------------------
# FIGURES
# ------------------------------------------

def height_growth_figure(C, P, n: int = 12, accent: str = ACCENT):
    """Bit size of kP for k = 1..n on one fiber; roughly quadratic for a non-torsion P."""
    pts = multiples(C, P, n)
    ks = list(range(1, len(pts) + 1))
    bits = [height_bits(q) for q in pts]

    fig = get_figure(accent)
    fig.add_trace(
        go.Scatter(
            x=ks,
            y=bits,
            mode="lines+markers",
            line=dict(width=2, color=accent),
            text=[str(q) for q in pts],
            hovertemplate="k=%{x}<br>bits=%{y}<br>%{text}<extra></extra>",
            name="height",
        )
    )
    fig.update_layout(title=f"Height growth of kP on {C}", xaxis_title="k", yaxis_title="bits")
    return fig


def rst_index_grid() -> np.ndarray:
    """Index of each class of Br(R)[2] laid out by (e1,e2) rows and (e3,e4) columns."""
    grid = np.zeros((4, 4), dtype=int)
    for c in all_classes():
        b = c.bits
        grid[2 * b[0] + b[1], 2 * b[2] + b[3]] = rst_index_classify(c)
    return grid


def rst_index_figure(accent: str = ACCENT):
    grid = rst_index_grid()
    labels = ["00", "01", "10", "11"]
    names = [[None] * 4 for _ in range(4)]
    for c in all_classes():
        b = c.bits
        names[2 * b[0] + b[1]][2 * b[2] + b[3]] = str(c)

    fig = get_figure(accent)
    fig.add_trace(
        go.Heatmap(
            z=grid,
            x=[f"e3e4={x}" for x in labels],
            y=[f"e1e2={y}" for y in labels],
            text=names,
            texttemplate="%{text}<br>index %{z}",
        )
    )
    fig.update_layout(title="Index of classes in Br(R)[2], R = R(s,t)")
    return fig


def fiber_centrality(graph: nx.Graph):
    """Degree and betweenness centrality of the fiber/point graph."""
    return nx.degree_centrality(graph), nx.betweenness_centrality(graph)


def fibration_graph_figure(graph: nx.Graph, accent: str = ACCENT):
    degree_c, _ = fiber_centrality(graph)
    pos = nx.spring_layout(graph, seed=42)
    nodes = list(graph.nodes())

    edge_x = []
    edge_y = []
    for u, v in graph.edges():
        x0, y0 = pos[u]
        x1, y1 = pos[v]
        edge_x += [x0, x1, None]
        edge_y += [y0, y1, None]

    fig = get_figure(accent)
    fig.add_trace(
        go.Scatter(
            x=edge_x,
            y=edge_y,
            mode="lines",
            line=dict(width=1, color=accent),
            hoverinfo="none",
            name="Edges",
        )
    )
    for kind, symbol in (("fiber", "diamond"), ("point", "circle")):
        members = [n for n in nodes if graph.nodes[n].get("kind") == kind]
        fig.add_trace(
            go.Scatter(
                x=[pos[n][0] for n in members],
                y=[pos[n][1] for n in members],
                mode="markers",
                text=members,
                marker=dict(
                    symbol=symbol,
                    size=[8 + 30 * degree_c[n] for n in members],
                    color="rgba(10,10,20,0.9)",
                    line=dict(color=accent if kind == "fiber" else "#ffd54f", width=2),
                ),
                hovertemplate="<b>%{text}</b><extra></extra>",
                name=kind,
            )
        )
    fig.update_layout(
        title="Fibers and points on B'",
        showlegend=True,
        xaxis=dict(showticklabels=False),
        yaxis=dict(showticklabels=False),
    )
    return fig


def write_figure(fig, path) -> Path:
    path = Path(path)
    fig.write_html(str(path), include_plotlyjs="cdn")
    return path
