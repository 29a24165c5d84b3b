"""Weisfeiler-Lehman refinement, a small exact isomorphism solver and a
transposition hill-climb for GI(G, H)."""
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .graphs import VertexMap, gi_score
from .guards import check_guard

EXACT_MAX_N = 60


class SearchBudgetExceeded(RuntimeError):
    """exact_iso gave up; this is not a proof that no isomorphism exists."""


@dataclass(frozen=True)
class Coloring:
    colors: tuple
    histogram: dict
    rounds: int
    stable: bool = True


def _relabel(sigs):
    table = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [table[s] for s in sigs]


def _refine_vertices(adj, colors):
    """Iterate signature (own colour, sorted neighbour colours) to a fixed point."""
    rounds = 0
    k = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        new = _relabel(sigs)
        rounds += 1
        k2 = len(set(new))
        colors = new
        if k2 == k:
            return colors, rounds
        k = k2


def _refine_pairs(adj, n, offsets):
    """2-dimensional refinement on ordered pairs inside each block [lo, hi)."""
    pairs = []
    for lo, hi in offsets:
        pairs += [(a, b) for a in range(lo, hi) for b in range(lo, hi)]
    idx = {p: i for i, p in enumerate(pairs)}
    colors = _relabel([(a == b, b in adj[a]) for a, b in pairs])
    nbrs = [
        [idx[(u, b)] for u in adj[a]] + [len(pairs) + idx[(a, u)] for u in adj[b]]
        for a, b in pairs
    ]
    rounds = 0
    k = len(set(colors))
    while True:
        P = len(pairs)
        sigs = []
        for p in range(P):
            left = sorted(colors[q] for q in nbrs[p] if q < P)
            right = sorted(colors[q - P] for q in nbrs[p] if q >= P)
            sigs.append((colors[p], tuple(left), tuple(right)))
        colors = _relabel(sigs)
        rounds += 1
        k2 = len(set(colors))
        if k2 == k:
            return pairs, colors, rounds
        k = k2


def wl_refine(G, k=1):
    """Stable WL colouring: of vertices (k=1) or of ordered vertex pairs (k=2)."""
    if k not in (1, 2):
        raise ValueError("only k = 1 and k = 2 are supported")
    if k == 1:
        colors, rounds = _refine_vertices(G.adjacency, [0] * G.n)
    else:
        _, colors, rounds = _refine_pairs(G.adjacency, G.n, [(0, G.n)])
    return Coloring(tuple(colors), dict(Counter(colors)), rounds)


def _union_adj(G, H):
    n = G.n
    return list(G.adjacency) + [frozenset(u + n for u in a) for a in H.adjacency]


def wl_distinguish(G, H, k=1):
    """'not_isomorphic' if the jointly refined colourings have different histograms, else 'maybe'."""
    if G.n != H.n:
        raise ValueError("graphs have different vertex counts")
    n = G.n
    adj = _union_adj(G, H)
    if k == 1:
        colors, _ = _refine_vertices(adj, [0] * (2 * n))
        left, right = Counter(colors[:n]), Counter(colors[n:])
    elif k == 2:
        pairs, colors, _ = _refine_pairs(adj, 2 * n, [(0, n), (n, 2 * n)])
        half = n * n
        left, right = Counter(colors[:half]), Counter(colors[half:])
    else:
        raise ValueError("only k = 1 and k = 2 are supported")
    return "maybe" if left == right else "not_isomorphic"


def exact_iso(G, H, max_n=EXACT_MAX_N, node_budget=200000):
    """An isomorphism G -> H, or None if there is none.

    Individualization-refinement over the disjoint union; raises
    SearchBudgetExceeded when more than node_budget search nodes are used.
    """
    if G.n != H.n:
        return None
    check_guard("n", G.n, max_n)
    if G.m != H.m or sorted(G.degrees) != sorted(H.degrees):
        return None
    n = G.n
    adj = _union_adj(G, H)
    nodes = [0]

    def search(colors):
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise SearchBudgetExceeded(f"more than {node_budget} search nodes")
        colors, _ = _refine_vertices(adj, colors)
        if Counter(colors[:n]) != Counter(colors[n:]):
            return None
        cells = {}
        for v in range(n):
            cells.setdefault(colors[v], []).append(v)
        target = min((c for c in cells.values() if len(c) > 1), key=len, default=None)
        if target is None:
            where = {colors[w]: w - n for w in range(n, 2 * n)}
            pi = VertexMap([where[colors[v]] for v in range(n)])
            return pi if gi_score(G, H, pi).ratio == 1 else None
        v = target[0]
        fresh = max(colors) + 1
        for w in range(n, 2 * n):
            if colors[w] != colors[v]:
                continue
            c2 = list(colors)
            c2[v] = fresh
            c2[w] = fresh
            found = search(c2)
            if found is not None:
                return found
        return None

    if n == 0:
        return VertexMap([])
    if G.m == 0:
        return VertexMap.identity(n)
    return search([0] * (2 * n))


def swap_gains(A, Bp):
    """gain[i, j] = change in preserved edges when the images of i and j are swapped."""
    D = A @ Bp
    d = np.diag(D)
    return D + D.T - d[:, None] - d[None, :] + 2 * A * Bp


def best_iso_local_search(G, H, restarts=10, seed=0, init=None, max_steps=None):
    """Steepest-ascent over transpositions of the map, with random restarts.

    Returns the best VertexMap found; its score is only a lower bound on GI(G, H).
    """
    if G.n != H.n:
        raise ValueError("graphs have different vertex counts")
    n = G.n
    rng = np.random.default_rng(seed)
    A = G.adjacency_matrix().astype(np.int64)
    B = H.adjacency_matrix().astype(np.int64)
    starts = []
    if init is not None:
        starts.append(np.array(list(VertexMap(init)), dtype=np.int64))
    starts += [rng.permutation(n) for _ in range(restarts)]
    best, best_val = None, -1
    steps = max_steps or 10 * n * n
    for p in starts:
        p = p.copy()
        for _ in range(steps):
            Bp = B[np.ix_(p, p)]
            g = swap_gains(A, Bp)
            i, j = np.unravel_index(np.argmax(g), g.shape)
            if g[i, j] <= 0:
                break
            p[i], p[j] = p[j], p[i]
        v = int((A * B[np.ix_(p, p)]).sum()) // 2
        if v > best_val:
            best, best_val = p.copy(), v
    if best is None:
        return VertexMap.identity(n)
    return VertexMap(best)
