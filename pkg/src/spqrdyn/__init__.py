"""Dynamic SPQR-trees over extended skeleton decompositions."""

from .decomposition import DecompositionError, ExtendedSkeletonDecomposition, dump, trivial_decomposition, validate
from .embedding_tree import admissible_rotations, embedding_tree
from .graph import GraphError, Multigraph, graph_from_edges, read_graph, write_graph
from .planarity import NonPlanarError, is_planar, rotation, three_paths
from .spqr import build_spqr, canonical_form, insert_graph_spqr, merge_spqr

__all__ = [
    "DecompositionError",
    "ExtendedSkeletonDecomposition",
    "GraphError",
    "Multigraph",
    "NonPlanarError",
    "admissible_rotations",
    "build_spqr",
    "canonical_form",
    "dump",
    "embedding_tree",
    "graph_from_edges",
    "insert_graph_spqr",
    "is_planar",
    "merge_spqr",
    "read_graph",
    "rotation",
    "three_paths",
    "trivial_decomposition",
    "validate",
    "write_graph",
]
