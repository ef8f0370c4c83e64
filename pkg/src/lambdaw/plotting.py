"""Figures for the command line report: cluster tilting graph, Cartan matrices, dimensions."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    return path


def plot_ct_graph(graph, path: Path, seed: int = 0) -> Path:
    """Nodes of the explored graph; marked nodes and the mutation path in red."""
    G = nx.Graph()
    G.add_nodes_from(range(len(graph.nodes)))
    G.add_edges_from(graph.undirected_edges())
    pos = nx.spring_layout(G, seed=seed)
    marked = set(graph.marks.values())
    on_path = {(min(a, b), max(a, b)) for a, b in zip(graph.path, graph.path[1:])}
    fig, ax = plt.subplots(figsize=(6, 5))
    nx.draw_networkx_edges(G, pos, ax=ax, edge_color="0.75")
    nx.draw_networkx_edges(G, pos, ax=ax, edgelist=sorted(on_path), edge_color="tab:red", width=2)
    colors = ["tab:red" if n in marked else ("0.4" if graph.expanded[n] else "0.8")
              for n in G.nodes]
    nx.draw_networkx_nodes(G, pos, ax=ax, node_size=40, node_color=colors)
    labels = {n: name for name, n in graph.marks.items()}
    nx.draw_networkx_labels(G, pos, labels, ax=ax, font_size=8)
    ax.set_title(f"{len(graph.nodes)} objects, {len(on_path)}-step path"
                 + (" (partial)" if graph.partial else ""))
    ax.set_axis_off()
    return _save(fig, path)


def plot_cartan(matrices: dict[str, list[list[int]]], path: Path) -> Path:
    """Side-by-side heatmaps of Cartan matrices (entries annotated)."""
    n = len(matrices)
    fig, axes = plt.subplots(1, n, figsize=(3.2 * n, 3.2), squeeze=False)
    for ax, (title, C) in zip(axes[0], matrices.items()):
        ax.imshow(C, cmap="Blues")
        for i, row in enumerate(C):
            for j, x in enumerate(row):
                ax.text(j, i, str(x), ha="center", va="center", fontsize=7)
        ax.set_xticks(range(len(C)), [str(k + 1) for k in range(len(C))], fontsize=7)
        ax.set_yticks(range(len(C)), [str(k + 1) for k in range(len(C))], fontsize=7)
        ax.set_title(title, fontsize=9)
    return _save(fig, path)


def plot_dimension_vectors(rows: dict[str, list[list[int]]], path: Path) -> Path:
    """Grouped bars of dimension vectors per summand, one panel per family."""
    n = len(rows)
    fig, axes = plt.subplots(n, 1, figsize=(6, 2.2 * n), squeeze=False)
    for ax, (title, dims) in zip(axes[:, 0], rows.items()):
        k = len(dims[0]) if dims else 0
        width = 0.8 / max(k, 1)
        for v in range(k):
            ax.bar([j + v * width for j in range(len(dims))], [d[v] for d in dims], width,
                   label=f"vertex {v + 1}")
        ax.set_xticks([j + 0.4 - width / 2 for j in range(len(dims))],
                      [str(j + 1) for j in range(len(dims))])
        ax.set_title(title, fontsize=9)
    axes[0, 0].legend(fontsize=7, ncol=max(k, 1))
    return _save(fig, path)
