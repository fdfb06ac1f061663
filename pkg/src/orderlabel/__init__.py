"""Bit-level comparability and reachability labelling for posets and digraphs."""
from .graph_core import Digraph, StrictOrder, random_digraph, random_poset

__version__ = "0.1.0"

__all__ = ["Digraph", "StrictOrder", "random_digraph", "random_poset", "__version__"]
