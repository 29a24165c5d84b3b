"""Edge-permutation bins and (beta, gamma)-asymmetry checks.

A permutation pi of [n] acts on the k-subsets of [n]; the cycles of that
action are the bins.  Asymmetry: every permutation with at most
floor((1 - beta) n) fixed points preserves fewer than (1 - gamma) of the edges.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, floor

import numpy as np

from .graphs import Graph, Hypergraph, VertexMap, sample_gnm, sample_gnm_hyper
from .guards import as_fraction, check_guard

BRUTE_FORCE_MAX_N = 9


# -- bins ---------------------------------------------------------------------

@lru_cache(maxsize=64)
def _ksets(n, k):
    c = np.array(list(combinations(range(n), k)), dtype=np.int64).reshape(-1, k)
    binom = np.array([[comb(v, i + 1) for i in range(k)] for v in range(n)], dtype=np.int64)
    return c, binom


def _colex_rank(rows, binom):
    rows = np.sort(rows, axis=1)
    k = rows.shape[1]
    return sum(binom[rows[:, i], i] for i in range(k))


@dataclass
class BinDecomposition:
    n: int
    k: int
    fixed_points: int
    bins: list
    size1_type1: int
    size1_type2: int
    size1_type3: int
    refined: list = None

    def sizes(self):
        return [len(b) for b in self.bins]


def size1_caps(n, k, fixed):
    """Upper bounds on the size-1 bin counts of each type for id(pi) = fixed."""
    moved = n - fixed
    if k == 2:
        return {1: comb(fixed, 2), 2: Fraction(moved, 2), 3: 0}
    if k == 3:
        return {1: comb(fixed, 3), 2: Fraction(fixed * moved, 2), 3: Fraction(moved, 3)}
    raise ValueError("bin typing is defined for k in {2, 3}")


def edge_permutation_bins(pi, n, k=2):
    """Cycle decomposition of e -> pi(e) over all k-subsets of [n]."""
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    pi = VertexMap(pi)
    if len(pi) != n:
        raise ValueError("permutation size does not match n")
    sets, binom = _ksets(n, k)
    p = np.asarray(pi.forward, dtype=np.int64)
    # colex order of combinations() output is not lexicographic, so map ranks to rows
    rank_of_row = _colex_rank(sets, binom)
    row_of_rank = np.empty_like(rank_of_row)
    row_of_rank[rank_of_row] = np.arange(len(sets))
    nxt = row_of_rank[_colex_rank(p[sets], binom)].tolist()
    seen = [False] * len(nxt)
    tuples = [tuple(r) for r in sets.tolist()]
    bins = []
    t1 = t2 = t3 = 0
    for start in range(len(nxt)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(tuples[x])
            x = nxt[x]
        bins.append(tuple(cyc))
        if len(cyc) == 1:
            e = cyc[0]
            moved = sum(1 for v in e if pi[v] != v)
            if moved == 0:
                t1 += 1
            elif moved == 2:
                t2 += 1
            else:
                t3 += 1
    return BinDecomposition(n, k, pi.num_fixed_points(), bins, t1, t2, t3)


def split_cycle(cycle):
    """Consecutive pairs along the cycle; an odd length ends with one triple."""
    L = len(cycle)
    if L <= 3:
        return [tuple(cycle)]
    out = [tuple(cycle[i:i + 2]) for i in range(0, L - 3 if L % 2 else L, 2)]
    if L % 2:
        out.append(tuple(cycle[L - 3:]))
    return out


def refine_bins(b):
    """Fill b.refined with the size-2/3 pieces of every bin of size >= 2."""
    refined = []
    for cyc in b.bins:
        if len(cyc) >= 2:
            refined.extend(split_cycle(cyc))
    b.refined = refined
    return b


def half_full_count(G, pi, decomposition=None):
    """Number of refined bins holding both an edge and a non-edge of G."""
    d = decomposition or refine_bins(edge_permutation_bins(pi, G.n, G.k))
    if d.refined is None:
        refine_bins(d)
    E = G.edges
    s = 0
    for piece in d.refined:
        hits = sum(1 for e in piece if e in E)
        if 0 < hits < len(piece):
            s += 1
    return s


# -- brute force --------------------------------------------------------------

def _fixed_threshold(n, beta):
    return floor((1 - as_fraction(beta)) * n)


def _violation_budget(m, gamma):
    # aut >= 1 - gamma  <=>  violated <= gamma * m
    return floor(as_fraction(gamma) * m)


def _require_edges(G):
    if G.m == 0:
        raise ValueError("asymmetry is undefined for a graph without edges")


def is_asymmetric_bruteforce(G, beta, gamma):
    """(True, None) if G is (beta, gamma)-asymmetric, else (False, witness).

    Backtracking over images of 0, 1, ..., n-1, pruning on the number of
    violated edges and the number of fixed points so far.
    """
    n = G.n
    check_guard("n", n, BRUTE_FORCE_MAX_N)
    _require_edges(G)
    f = _fixed_threshold(n, beta)
    budget = _violation_budget(G.m, gamma)
    E = G.edges
    closing = [[] for _ in range(n)]
    for e in G.edges:
        closing[e[-1]].append(e)
    img = [None] * n
    used = [False] * n

    def rec(v, fixed, bad):
        if v == n:
            return True
        for w in range(n):
            if used[w]:
                continue
            fx = fixed + (w == v)
            if fx > f:
                continue
            img[v] = w
            nb = bad
            for e in closing[v]:
                if tuple(sorted(img[u] for u in e)) not in E:
                    nb += 1
            if nb <= budget:
                used[w] = True
                if rec(v + 1, fx, nb):
                    return True
                used[w] = False
        img[v] = None
        return False

    if rec(0, 0, 0):
        return False, VertexMap(img)
    return True, None


def is_asymmetric_naive(G, beta, gamma):
    """Definition-level double loop over all permutations and all edges."""
    n = G.n
    check_guard("n", n, 7)
    _require_edges(G)
    beta, gamma = as_fraction(beta), as_fraction(gamma)
    for p in permutations(range(n)):
        if sum(1 for i in range(n) if p[i] == i) > (1 - beta) * n:
            continue
        sat = 0
        for e in G.edges:
            if tuple(sorted(p[v] for v in e)) in G.edges:
                sat += 1
        if Fraction(sat, G.m) >= 1 - gamma:
            return False, VertexMap(p)
    return True, None


@lru_cache(maxsize=16)
def _all_perms(n):
    return np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, n)


def is_asymmetric_vectorized(G, beta, gamma, chunk=50000):
    """Same decision as is_asymmetric_bruteforce, scoring all n! maps with numpy."""
    n = G.n
    check_guard("n", n, BRUTE_FORCE_MAX_N)
    f = _fixed_threshold(n, beta)
    budget = _violation_budget(G.m, gamma)
    _require_edges(G)
    P = _all_perms(n)
    member = np.zeros((n,) * G.k, dtype=bool)
    for e in G.edges:
        for q in permutations(e):
            member[q] = True
    edges = np.array(G.edge_list, dtype=np.int64)
    for lo in range(0, len(P), chunk):
        Pc = P[lo:lo + chunk].astype(np.int64)
        fixed = (Pc == np.arange(n)).sum(axis=1)
        images = Pc[:, edges]
        sat = member[tuple(images[:, :, i] for i in range(G.k))].sum(axis=1)
        ok = (fixed <= f) & (G.m - sat <= budget)
        idx = np.flatnonzero(ok)
        if idx.size:
            return False, VertexMap(Pc[idx[0]])
    return True, None


# -- Monte Carlo --------------------------------------------------------------

def _violations(E, incident, img, verts):
    bad = 0
    seen = set()
    for v in verts:
        for e in incident[v]:
            if e in seen:
                continue
            seen.add(e)
            if tuple(sorted(img[u] for u in e)) not in E:
                bad += 1
    return bad


def find_violation(G, beta, gamma, restarts, rng, max_steps=None):
    """Hill-climb for a permutation with <= floor((1-beta)n) fixed points and
    aut >= 1 - gamma.  Returns a witness or None (None certifies nothing)."""
    n = G.n
    _require_edges(G)
    f = _fixed_threshold(n, beta)
    budget = _violation_budget(G.m, gamma)
    E = G.edges
    incident = [[] for _ in range(n)]
    for e in G.edge_list:
        for v in e:
            incident[v].append(e)
    all_edges = list(range(n))

    if n >= 2 and n - 2 <= f:
        img = list(range(n))
        for u in range(n):
            for v in range(u + 1, n):
                img[u], img[v] = v, u
                if _violations(E, incident, img, (u, v)) <= budget:
                    return VertexMap(img)
                img[u], img[v] = u, v

    steps = max_steps or 4 * n * n
    for _ in range(restarts):
        img = [int(x) for x in rng.permutation(n)]
        # repair fixed points above the threshold by swapping with a random vertex
        fixed = [v for v in range(n) if img[v] == v]
        while len(fixed) > f:
            u = fixed[0]
            w = int(rng.integers(n))
            if w != u:
                img[u], img[w] = img[w], img[u]
            fixed = [v for v in range(n) if img[v] == v]
        bad = _violations(E, incident, img, all_edges)
        nfix = len(fixed)
        for _ in range(steps):
            if bad <= budget:
                return VertexMap(img)
            u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
            before = _violations(E, incident, img, (u, v))
            img[u], img[v] = img[v], img[u]
            nf = nfix - (img[v] == u) - (img[u] == v) + (img[u] == u) + (img[v] == v)
            after = _violations(E, incident, img, (u, v))
            if nf <= f and after <= before:
                bad += after - before
                nfix = nf
            else:
                img[u], img[v] = img[v], img[u]
        if bad <= budget:
            return VertexMap(img)
    return None


def monte_carlo_asymmetry(n, m, beta, gamma, trials, search_budget, seed, k=2,
                          fallback=None, on_trial=None):
    """Sample `trials` uniform graphs (or k-uniform hypergraphs) and search each
    for a (beta, gamma)-violation.

    fallback="bruteforce" decides the samples the hill-climb leaves open by
    exhaustive scoring (n <= 9), making the result exact.  on_trial receives
    one record per trial.
    """
    beta, gamma = as_fraction(beta), as_fraction(gamma)
    seeds = np.random.SeedSequence(seed).spawn(trials)
    found = 0
    witnesses = []
    records = []
    for t, ss in enumerate(seeds):
        rng = np.random.default_rng(ss)
        gseed = int(rng.integers(2**63))
        G = sample_gnm(n, m, gseed) if k == 2 else sample_gnm_hyper(n, k, m, gseed)
        w = find_violation(G, beta, gamma, search_budget, rng)
        method = "hill_climb"
        if w is None and fallback == "bruteforce":
            _, w = is_asymmetric_vectorized(G, beta, gamma)
            method = "bruteforce"
        rec = {
            "trial": t,
            "graph_seed": gseed,
            "violation": w is not None,
            "method": method,
            "witness": None if w is None else list(w),
        }
        records.append(rec)
        if on_trial:
            on_trial(rec)
        if w is not None:
            found += 1
            witnesses.append(list(w))
    return {
        "n": n,
        "m": m,
        "beta": str(beta),
        "gamma": str(gamma),
        "trials": trials,
        "violations_found": found,
        "witnesses": witnesses,
        "records": records,
    }


def monte_carlo_report_json(report):
    return json.dumps({k: v for k, v in report.items() if k != "records"})
