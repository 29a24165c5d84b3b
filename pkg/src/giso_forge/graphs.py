"""Graphs, hypergraphs, vertex bijections and the edge-preservation scores."""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, comb

import numpy as np

from .guards import as_fraction

ROLES = ("variable", "constraint", "auxiliary")


def _normalize_edges(edges, n, k):
    out = set()
    if k == 2:
        count = 0
        for e in edges:
            u, v = e
            u, v = int(u), int(v)
            if u > v:
                u, v = v, u
            if u == v or u < 0 or v >= n:
                raise ValueError(f"edge {e!r} is a loop or has an endpoint outside [0, {n})")
            out.add((u, v))
            count += 1
            if len(out) != count:
                raise ValueError(f"duplicate edge {(u, v)}")
        return frozenset(out)
    for e in edges:
        t = tuple(sorted(int(v) for v in e))
        if len(t) != k or len(set(t)) != k:
            raise ValueError(f"edge {e!r} does not have {k} distinct vertices")
        if t[0] < 0 or t[-1] >= n:
            raise ValueError(f"edge {e!r} has an endpoint outside [0, {n})")
        if t in out:
            raise ValueError(f"duplicate edge {t}")
        out.add(t)
    return frozenset(out)


class Hypergraph:
    """A simple k-uniform hypergraph on vertices 0..n-1.

    Edges are stored as sorted k-tuples.  Instances are immutable.
    """

    def __init__(self, n, k, edges=()):
        if n < 0 or k < 1:
            raise ValueError("need n >= 0 and k >= 1")
        self.n = int(n)
        self.k = int(k)
        self.edges = _normalize_edges(edges, self.n, self.k)

    def __eq__(self, other):
        return (
            isinstance(other, Hypergraph)
            and (self.n, self.k, self.edges) == (other.n, other.k, other.edges)
        )

    def __hash__(self):
        return hash((self.n, self.k, self.edges))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, k={self.k}, |E|={len(self.edges)})"

    @property
    def m(self):
        return len(self.edges)

    @cached_property
    def edge_list(self):
        return sorted(self.edges)

    @cached_property
    def degrees(self):
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    def has_edge(self, e):
        return tuple(sorted(e)) in self.edges


class Graph(Hypergraph):
    """Simple undirected graph with optional per-vertex role tags and names."""

    def __init__(self, n, edges=(), roles=None, names=None):
        super().__init__(n, 2, edges)
        if roles is not None:
            roles = tuple(roles)
            if len(roles) != self.n or any(r not in ROLES for r in roles):
                raise ValueError("roles must give one of %s per vertex" % (ROLES,))
        if names is not None:
            names = tuple(names)
            if len(names) != self.n:
                raise ValueError("names must have one entry per vertex")
        self.roles = roles
        self.names = names

    @cached_property
    def adjacency(self):
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def adjacency_matrix(self):
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    def relabel(self, pi):
        """Image graph pi(G); labels travel with their vertices."""
        pi = VertexMap(pi)
        inv = pi.inverse().forward
        roles = None if self.roles is None else [self.roles[inv[v]] for v in range(self.n)]
        names = None if self.names is None else [self.names[inv[v]] for v in range(self.n)]
        return Graph(self.n, (image_edge(e, pi) for e in self.edges), roles, names)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


class VertexMap:
    """A bijection of {0..n-1} onto {0..n-1}, given by its forward table."""

    __slots__ = ("forward",)

    def __init__(self, forward):
        if isinstance(forward, VertexMap):
            forward = forward.forward
        fw = tuple(int(x) for x in forward)
        if sorted(fw) != list(range(len(fw))):
            raise ValueError("vertex map is not a bijection of 0..n-1")
        self.forward = fw

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    def __call__(self, v):
        return self.forward[v]

    def __getitem__(self, v):
        return self.forward[v]

    def __len__(self):
        return len(self.forward)

    def __iter__(self):
        return iter(self.forward)

    def __eq__(self, other):
        if isinstance(other, VertexMap):
            return self.forward == other.forward
        return NotImplemented

    def __hash__(self):
        return hash(self.forward)

    def __repr__(self):
        return f"VertexMap({list(self.forward)})"

    def inverse(self):
        inv = [0] * len(self.forward)
        for i, j in enumerate(self.forward):
            inv[j] = i
        return VertexMap(inv)

    def compose(self, other):
        """self after other: v -> self(other(v))."""
        return VertexMap(self.forward[j] for j in other.forward)

    def fixed_points(self):
        return [i for i, j in enumerate(self.forward) if i == j]

    def num_fixed_points(self):
        return sum(1 for i, j in enumerate(self.forward) if i == j)


Permutation = VertexMap


def image_edge(e, pi):
    return tuple(sorted(pi[v] for v in e))


@dataclass(frozen=True)
class Score:
    satisfied: int
    denominator: int

    @property
    def ratio(self):
        return Fraction(self.satisfied, self.denominator)

    def __float__(self):
        return self.satisfied / self.denominator


def gi_score(G, H, pi):
    """Fraction of edges of G mapped onto edges of H by pi, over max(|E(G)|, |E(H)|)."""
    if G.n != H.n:
        raise ValueError(f"vertex counts differ: {G.n} != {H.n}")
    if G.k != H.k:
        raise ValueError("uniformity differs")
    pi = VertexMap(pi)
    if len(pi) != G.n:
        raise ValueError("map size does not match the graphs")
    denom = max(G.m, H.m)
    if denom == 0:
        raise ValueError("both edge sets are empty; the score is undefined")
    target = H.edges
    sat = sum(1 for e in G.edges if image_edge(e, pi) in target)
    return Score(sat, denom)


def aut_score(G, pi):
    return gi_score(G, G, pi)


def edge_diff(G, pi):
    """Potential edges whose membership in E changes under pi.

    Returns {e in E : pi(e) not in E} | {e not in E : pi(e) in E}.
    """
    pi = VertexMap(pi)
    inv = pi.inverse()
    E = G.edges
    leaving = {e for e in E if image_edge(e, pi) not in E}
    entering = set()
    for f in E:
        pre = image_edge(f, inv)
        if pre not in E:
            entering.add(pre)
    return leaving | entering


def is_degree_bounded(G, eps, D):
    """True iff every set of ceil(eps*n) vertices has average degree <= D.

    The set of largest degrees maximizes the average, so only it is checked.
    """
    eps = as_fraction(eps)
    D = as_fraction(D)
    if eps <= 0 or eps > 1:
        raise ValueError("eps must lie in (0, 1]")
    if G.n == 0:
        return True
    size = ceil(eps * G.n)
    top = sorted(G.degrees, reverse=True)[:size]
    return Fraction(sum(top), size) <= D


def incident_edge_count(G, T):
    T = set(T)
    return sum(1 for e in G.edges if any(v in T for v in e))


def unrank_combination(r, k):
    """Inverse of the colex rank sum_i C(c_i, i+1) for c_0 < ... < c_{k-1}."""
    out = []
    for i in range(k, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= r:
            c += 1
        r -= comb(c, i)
        out.append(c)
    return tuple(reversed(out))


def rank_combination(c):
    return sum(comb(v, i + 1) for i, v in enumerate(sorted(c)))


def _sample_ksets(n, k, m, rng):
    total = comb(n, k)
    if m > total:
        raise ValueError(f"m = {m} exceeds C({n},{k}) = {total}")
    if m == 0:
        return []
    idx = rng.choice(total, size=m, replace=False)
    return [unrank_combination(int(r), k) for r in idx]


def sample_gnm(n, m, seed):
    """Uniform simple graph with n vertices and exactly m edges."""
    rng = np.random.default_rng(seed)
    return Graph(n, _sample_ksets(n, 2, m, rng))


def sample_gnm_hyper(n, k, m, seed):
    """Uniform simple k-uniform hypergraph with n vertices and exactly m edges."""
    rng = np.random.default_rng(seed)
    return Hypergraph(n, k, _sample_ksets(n, k, m, rng))
