from fractions import Fraction
from itertools import combinations, product

import networkx as nx
import numpy as np
import pytest

from giso_forge.baseline import exact_iso
from giso_forge.graphs import VertexMap, gi_score
from giso_forge.reduction import (
    ClaimViolation,
    completeness_map,
    constraint_hypergraph,
    decode,
    encode,
    extend_without_fixed_points,
    gadget_graph,
    gadget_parity,
    parity_prediction,
    reduce,
    satisfying_assignments,
)
from giso_forge.xor import ThreeXorInstance, homogenize, plant, sample_random_3xor, satisfies, val


def test_gadget_graph_examples():
    g = gadget_graph((0, 1, 2, 0))
    assert g.N == 10 and g.M == 21
    alphas = sorted(a for (_, a) in g.constraint_vertices)
    assert alphas == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
    g1 = gadget_graph((0, 1, 2, 1))
    assert g1.N == 10 and g1.M == 21
    assert exact_iso(g1.graph, g.graph) is not None
    assert nx.is_isomorphic(g1.graph.to_networkx(), g.graph.to_networkx())


def test_gadget_structure():
    inst = sample_random_3xor(7, 9, 0)
    G = encode(inst)
    adj = G.graph.adjacency
    for i, (j1, j2, j3, b) in enumerate(inst.constraints):
        block = G.constraint_block(i)
        assert len(block) == 4
        for u, v in combinations(block, 2):
            assert v in adj[u]
        for a, v in zip(satisfying_assignments(b), block):
            var_nbrs = {w for w in adj[v] if w < 2 * inst.n}
            assert var_nbrs == {2 * j1 + a[0], 2 * j2 + a[1], 2 * j3 + a[2]}
    for j in range(inst.n):
        assert 2 * j + 1 in adj[2 * j]


def test_only_four_cliques_are_constraint_blocks():
    for seed in range(10):
        inst = sample_random_3xor(6, 8, seed)
        G = encode(inst)
        four = {frozenset(c) for c in nx.enumerate_all_cliques(G.graph.to_networkx()) if len(c) == 4}
        assert four == {frozenset(G.constraint_block(i)) for i in range(inst.m)}


@pytest.mark.parametrize("n,m,N,M", [(3, 1, 10, 21), (6, 4, 28, 78), (2, 0, 4, 2)])
def test_encode_counts_examples(n, m, N, M):
    inst = sample_random_3xor(n, m, 1) if n >= 3 else ThreeXorInstance(n)
    G = encode(inst)
    assert (G.N, G.M) == (N, M)


def test_encode_counts_random():
    rng = np.random.default_rng(0)
    for t in range(100):
        n, m = int(rng.integers(3, 51)), int(rng.integers(1, 201))
        G = encode(sample_random_3xor(n, m, t))
        assert (G.N, G.M) == (4 * m + 2 * n, 18 * m + n)


def test_reduce_examples():
    inst = homogenize(sample_random_3xor(6, 5, 3))
    G, Gh = reduce(inst)
    assert G.graph == Gh.graph
    inst, tau = plant(6, 7, 0, 2)
    G, Gh = reduce(inst)
    pi = exact_iso(G.graph, Gh.graph)
    assert pi is not None and gi_score(G.graph, Gh.graph, pi).ratio == 1
    one = ThreeXorInstance(3, [(0, 1, 2, 1)])
    G, Gh = reduce(one)
    assert exact_iso(G.graph, Gh.graph) is not None


def test_completeness_single_unsatisfied():
    inst = ThreeXorInstance(3, [(0, 1, 2, 1)])
    G, Gh = reduce(inst)
    s = gi_score(G.graph, Gh.graph, completeness_map(inst, (0, 0, 0)))
    assert s.ratio == Fraction(3, 7)
    # the rank-preserving alternative keeps more edges, so it cannot give "exactly 12 lost"
    s2 = gi_score(G.graph, Gh.graph, completeness_map(inst, (0, 0, 0), unsatisfied="sorted"))
    assert s2.ratio == Fraction(17, 21)


def test_completeness_exact_formula():
    for seed in range(60):
        eps = (0, 0.05, 0.1, 0.2, 0.5)[seed % 5]
        inst, tau = plant(12, 25, eps, seed)
        G, Gh = reduce(inst)
        pi = completeness_map(inst, tau)
        u = sum(1 for c in inst.constraints if not satisfies(c, tau))
        assert gi_score(G.graph, Gh.graph, pi).ratio == Fraction(G.M - 12 * u, G.M)
        assert gi_score(G.graph, Gh.graph, completeness_map(inst, tau, "sorted")).ratio >= \
            Fraction(G.M - 12 * u, G.M)


def test_completeness_planted_bound():
    inst, tau = plant(30, 100, 0.1, 9)
    G, Gh = reduce(inst)
    assert gi_score(G.graph, Gh.graph, completeness_map(inst, tau)).ratio >= Fraction(14, 15)


def test_parity_canonical_fixture():
    g = gadget_graph((0, 1, 2, 0))
    v = g.constraint_vertices[(0, (0, 0, 0))]
    assert gadget_parity(g, v, 0, 0, 0) == 1
    assert parity_prediction(0, 0, 0, 0) == 1
    assert gadget_parity(g, v, 1, 1, 1) == 0


def test_parity_exhaustive_per_template():
    for template in [(0, 1, 2), (0, 2, 5), (1, 3, 4)]:
        cases = literal = 0
        for b in (0, 1):
            inst = ThreeXorInstance(6, [template + (b,)])
            G = encode(inst)
            for alpha in satisfying_assignments(b):
                v = G.constraint_vertices[(0, alpha)]
                for bits in product((0, 1), repeat=3):
                    got = gadget_parity(G, v, *bits)
                    agree = sum(1 for a, q in zip(alpha, bits) if a == q)
                    assert got == agree % 2
                    assert got == parity_prediction(b, *bits)
                    literal += got == (b ^ bits[0] ^ bits[1] ^ bits[2])
                    cases += 1
        assert cases == 64
        # the unshifted form b + b1 + b2 + b3 is off by one in every case
        assert literal == 0


def test_extend_without_fixed_points():
    assert list(extend_without_fixed_points(4, {})) == [1, 2, 3, 0]
    s = extend_without_fixed_points(5, {0: 1, 1: 0})
    assert all(s[j] != j for j in (2, 3, 4))
    # a single leftover element equal on both sides is forced
    assert extend_without_fixed_points(3, {0: 1, 1: 0})[2] == 2
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(1, 9))
        dom = rng.permutation(n)[: int(rng.integers(0, n + 1))]
        cod = rng.permutation(n)[: len(dom)]
        partial = {int(a): int(b) for a, b in zip(dom, cod)}
        s = extend_without_fixed_points(n, partial)
        assert all(s[a] == b for a, b in partial.items())
        free = [j for j in range(n) if j not in partial]
        fixed = sum(1 for j in free if s[j] == j)
        forced = len(free) == 1 and free[0] not in partial.values()
        assert fixed == (1 if forced else 0)


def test_decode_round_trip():
    for seed in range(30):
        inst, tau = plant(9, 14, 0, seed)
        pair = reduce(inst)
        rep = decode(pair, completeness_map(inst, tau), 0.01, 0.2, 0.5)
        assert rep.val_tau == 1
        used = {j for c in inst.constraints for j in c[:3]}
        assert all(rep.tau[j] == tau[j] for j in used)
        assert rep.A == set(range(inst.m)) and rep.B == set(range(inst.n))


def test_decode_random_map_is_report_only():
    inst = sample_random_3xor(8, 12, 1)
    pair = reduce(inst)
    pi = VertexMap(np.random.default_rng(2).permutation(pair[0].N))
    rep = decode(pair, pi, 0.01, 0.2, 0.5)
    assert not rep.asserted
    assert rep.gi.ratio < 1 - rep.delta
    with pytest.raises(ValueError):
        decode(pair, VertexMap.identity(pair[0].N - 1), 0.01, 0.2, 0.5)


def _a_set_oracle(pair, pi):
    """Constraints whose block is sent onto some 4-clique of G_homog, by clique enumeration."""
    G, Gh = pair
    adj = Gh.graph.adjacency
    cliques = set()
    for q in combinations(range(Gh.N), 4):
        if all(b in adj[a] for a, b in combinations(q, 2)):
            cliques.add(frozenset(q))
    return {i for i in range(G.instance.m) if frozenset(pi[v] for v in G.constraint_block(i)) in cliques}


def test_decode_a_set_against_clique_oracle():
    rng = np.random.default_rng(3)
    for seed in range(12):
        inst, tau = plant(5, int(rng.integers(1, 7)), 0.2, seed)
        pair = reduce(inst)
        base = list(completeness_map(inst, tau))
        for _ in range(3):
            pi = list(base)
            for _ in range(int(rng.integers(0, 4))):
                a, b = rng.choice(len(pi), 2, replace=False)
                pi[a], pi[b] = pi[b], pi[a]
            pi = VertexMap(pi)
            assert decode(pair, pi, 0.01, 0.2, 0.5).A == _a_set_oracle(pair, pi)


def test_decode_claims_under_preconditions():
    # distinct-triple instances whose constraint hypergraph is certified (beta, gamma)-asymmetric
    checked = 0
    for seed in range(40):
        inst, tau = plant(7, 10, 0, seed, replacement=False)
        pair = reduce(inst)
        eps, beta, gamma = Fraction(1, 2000), Fraction(1, 2), Fraction(1, 10)
        for pi in (completeness_map(inst, tau), exact_iso(pair[0].graph, pair[1].graph)):
            rep = decode(pair, pi, eps, beta, gamma)  # raises ClaimViolation on failure
            if rep.asserted:
                checked += 1
                assert all(h for (_, _, h) in rep.claims.values())
                assert rep.val_tau >= Fraction(9, 10) - 100 * (eps + beta)
    assert checked > 0


def test_claim_violation_is_assertion_error():
    assert issubclass(ClaimViolation, AssertionError)


def test_constraint_hypergraph_uses_distinct_triples():
    inst = ThreeXorInstance(4, [(0, 1, 2, 0), (0, 1, 2, 1), (1, 2, 3, 0)])
    assert constraint_hypergraph(inst).m == 2
