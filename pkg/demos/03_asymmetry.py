# How symmetric are sparse random graphs?
#
# A graph is (beta, gamma)-asymmetric when every permutation fixing at most
# (1 - beta) n vertices breaks more than a gamma fraction of the edges.

from fractions import Fraction

from giso_forge.asymmetry import (
    edge_permutation_bins,
    half_full_count,
    is_asymmetric_bruteforce,
    monte_carlo_asymmetry,
    refine_bins,
)
from giso_forge.graphs import Graph, VertexMap, edge_diff, sample_gnm

# %% a 4-cycle is never asymmetric: rotation keeps every edge
C4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
print(is_asymmetric_bruteforce(C4, 1, Fraction(1, 100)))

# %% a graph on 6 vertices whose only automorphism is the identity
G = Graph(6, [(0, 2), (0, 3), (0, 5), (1, 2), (1, 4), (2, 3)])
print("(1/6, 0)-asymmetric:", is_asymmetric_bruteforce(G, Fraction(1, 6), 0)[0])

# %% the bins a permutation induces on pairs of vertices
pi = VertexMap([1, 2, 0, 4, 3, 5])
d = refine_bins(edge_permutation_bins(pi, 6))
print("cycle lengths:", sorted(len(b) for b in d.bins))
print("refined pieces:", sorted(len(p) for p in d.refined))
print("half-full pieces", half_full_count(G, pi, d), "<= |diff|", len(edge_diff(G, pi)))

# %% Monte Carlo: violations found among sparse random graphs on 8 vertices
for m in (8, 12, 16):
    rep = monte_carlo_asymmetry(8, m, Fraction(1, 8), 0, trials=30, search_budget=3, seed=m,
                                fallback="bruteforce")
    print(f"m={m:2d}: {rep['violations_found']}/30 graphs have a nontrivial automorphism")

# %% larger graphs: only the hill-climb, so a miss is not a certificate
for m in (60, 150, 300):
    rep = monte_carlo_asymmetry(40, m, Fraction(1, 2), Fraction(1, 20), trials=10, search_budget=2, seed=m)
    print(f"n=40 m={m}: hill-climb found {rep['violations_found']}/10 violations")
