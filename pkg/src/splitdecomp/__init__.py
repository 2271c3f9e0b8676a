"""Split (1-join) decomposition of undirected graphs, layer by layer from a BFS root."""
from .graph import Graph, bfs_layering, load_graph, parse_edge_list
from .split import split_decomposition
from .splittree import SplitTree

__all__ = ["Graph", "SplitTree", "bfs_layering", "load_graph", "parse_edge_list", "split_decomposition"]
