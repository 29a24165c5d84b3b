"""Hard graph-isomorphism instances from 3XOR and Additive-CSP, with checkers."""
from .graphs import (
    Graph,
    Hypergraph,
    Permutation,
    Score,
    VertexMap,
    aut_score,
    edge_diff,
    gi_score,
    incident_edge_count,
    is_degree_bounded,
    sample_gnm,
    sample_gnm_hyper,
)
from .xor import ThreeXorInstance, brute_force_val, homogenize, plant, sample_random_3xor, val
from .reduction import completeness_map, decode, encode, gadget_graph, gadget_parity, reduce

__version__ = "0.1.0"
