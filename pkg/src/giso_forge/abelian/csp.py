"""Additive-CSP(psi) instances and their reduction to graph isomorphism.

A constraint (vars, shifts) holds under tau iff (tau[j_1] + a_1, ..., tau[j_k] + a_k)
lies in psi, so its satisfying local assignments are psi - a.

Layout of encode_additive: variable j owns the block [j*N2, (j+1)*N2) holding
its |H| group vertices and then the gadget's auxiliary vertices; constraint i
owns [n*N2 + i*|psi|, ...), one vertex per satisfying assignment in sorted order.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, floor

import numpy as np

from ..graphs import Graph, Hypergraph, VertexMap, aut_score, gi_score
from ..guards import as_fraction
from ..reduction import ClaimViolation, check_hypergraph_preconditions, extend_without_fixed_points
from .gadget import variable_gadget
from .groups import AbelianGroup, SubgroupPredicate, xor3_predicate


class AdditiveCspInstance:
    def __init__(self, n, psi, constraints=()):
        self.n = int(n)
        self.psi = psi
        self.group = psi.group
        self.k = psi.k
        H = self.group
        cs = []
        for vars_, shifts in constraints:
            vars_ = tuple(int(j) for j in vars_)
            if len(vars_) != self.k or len(set(vars_)) != self.k:
                raise ValueError(f"constraint needs {self.k} distinct variables: {vars_}")
            if min(vars_) < 0 or max(vars_) >= self.n:
                raise ValueError(f"variable out of range in {vars_}")
            shifts = tuple(H.sub(_elem(H, a), H.zero) for a in shifts)
            if len(shifts) != self.k:
                raise ValueError("one shift per variable is required")
            cs.append((vars_, shifts))
        self.constraints = tuple(cs)

    @property
    def m(self):
        return len(self.constraints)

    def __eq__(self, other):
        return (
            isinstance(other, AdditiveCspInstance)
            and (self.n, self.psi, self.constraints) == (other.n, other.psi, other.constraints)
        )

    def __hash__(self):
        return hash((self.n, self.psi, self.constraints))

    def satisfying(self, i):
        _, shifts = self.constraints[i]
        return sorted(self.group.sub_k(p, shifts) for p in self.psi.elements)

    def is_satisfied(self, i, tau):
        vars_, shifts = self.constraints[i]
        return self.group.add_k(tuple(tau[j] for j in vars_), shifts) in self.psi

    def to_json(self):
        return json.dumps({
            "n": self.n,
            "moduli": list(self.group.moduli),
            "k": self.k,
            "predicate": [[list(a) for a in tup] for tup in self.psi.sorted_elements],
            "constraints": [
                {"vars": list(v), "shifts": [list(a) for a in s]} for v, s in self.constraints
            ],
        })

    @classmethod
    def from_json(cls, text):
        d = json.loads(text) if isinstance(text, str) else text
        psi = SubgroupPredicate(AbelianGroup(d["moduli"]), d["k"], d["predicate"])
        return cls(d["n"], psi, [(c["vars"], c["shifts"]) for c in d["constraints"]])


def _elem(H, a):
    if isinstance(a, int):
        a = (a,)
    return tuple(int(x) % p for x, p in zip(a, H.moduli))


def homogenize_additive(inst):
    z = inst.group.zero
    return AdditiveCspInstance(inst.n, inst.psi, [(v, (z,) * inst.k) for v, _ in inst.constraints])


def val_additive(inst, tau):
    tau = [_elem(inst.group, a) for a in tau]
    if len(tau) != inst.n:
        raise ValueError("assignment length mismatch")
    if inst.m == 0:
        return Fraction(1)
    return Fraction(sum(1 for i in range(inst.m) if inst.is_satisfied(i, tau)), inst.m)


def from_3xor(inst):
    """x1 + x2 + x3 = b as the shifted predicate (x1 + b) + x2 + x3 = 0."""
    psi = xor3_predicate()
    return AdditiveCspInstance(
        inst.n, psi, [((j1, j2, j3), ((b,), (0,), (0,))) for j1, j2, j3, b in inst.constraints]
    )


def sample_random_additive(n, m, psi, seed):
    """Ordered distinct variable tuples and uniform shifts."""
    rng = np.random.default_rng(seed)
    H = psi.group
    els = H.elements()
    cs = []
    for _ in range(m):
        vars_ = tuple(int(j) for j in rng.choice(n, size=psi.k, replace=False))
        shifts = tuple(els[int(x)] for x in rng.integers(0, H.order, size=psi.k))
        cs.append((vars_, shifts))
    return AdditiveCspInstance(n, psi, cs)


def plant_additive(n, m, psi, eps, seed):
    """Instance and tau with exactly floor(eps*m) constraints violated by tau."""
    eps = as_fraction(eps)
    rng = np.random.default_rng(seed)
    H = psi.group
    els = H.elements()
    tau = tuple(els[int(x)] for x in rng.integers(0, H.order, size=n))
    inside = psi.sorted_elements
    outside = [q for q in product(els, repeat=psi.k) if q not in psi.elements]
    flips = floor(eps * m)
    flipped = set(int(i) for i in rng.choice(m, size=flips, replace=False)) if flips else set()
    cs = []
    for i in range(m):
        vars_ = tuple(int(j) for j in rng.choice(n, size=psi.k, replace=False))
        pool = outside if i in flipped else inside
        target = pool[int(rng.integers(len(pool)))]
        cs.append((vars_, H.sub_k(target, tuple(tau[j] for j in vars_))))
    return AdditiveCspInstance(n, psi, cs), tau


def label_extended_graph(vars_, shifts, psi):
    """Group vertices of the k variables (local blocks of |H|) plus one vertex per
    satisfying assignment, joined to its k consistent group vertices."""
    H = psi.group
    h, k = H.order, psi.k
    sats = sorted(H.sub_k(p, shifts) for p in psi.elements)
    names = [f"x{j}->{_fmt(b)}" for j in vars_ for b in H.elements()]
    edges = []
    for r, alpha in enumerate(sats):
        v = k * h + r
        names.append("C:" + ",".join(_fmt(a) for a in alpha))
        for t, a in enumerate(alpha):
            edges.append((v, t * h + H.index(a)))
    roles = ["variable"] * (k * h) + ["constraint"] * len(sats)
    return Graph(k * h + len(sats), edges, roles, names)


def _fmt(a):
    return "".join(map(str, a))


@dataclass(frozen=True)
class AdditiveGadgetGraph:
    graph: Graph
    instance: AdditiveCspInstance
    gadget: object
    N1: int
    N2: int
    M1: int
    M2: int

    @property
    def N(self):
        return self.graph.n

    @property
    def M(self):
        return self.graph.m

    def variable_vertex(self, j, b):
        return j * self.N2 + self.instance.group.index(b)

    def block(self, j):
        return range(j * self.N2, (j + 1) * self.N2)

    def constraint_block(self, i):
        base = self.instance.n * self.N2 + i * self.N1
        return range(base, base + self.N1)

    def sidecar(self):
        return {"n": self.instance.n, "m": self.instance.m, "N1": self.N1, "N2": self.N2,
                "M1": self.M1, "M2": self.M2,
                "vertex_roles": list(self.graph.roles), "names": list(self.graph.names)}


def encode_additive(inst):
    H = inst.group
    gad = variable_gadget(H)
    N2 = gad.graph.n
    N1 = len(inst.psi)
    k = inst.k
    M1 = comb(N1, 2) + N1 * k
    M2 = gad.graph.m
    n, m = inst.n, inst.m
    roles, names, edges = [], [], []
    for j in range(n):
        base = j * N2
        roles += list(gad.graph.roles)
        names += [f"x{j}:{nm}" for nm in gad.graph.names]
        edges += [(base + u, base + v) for u, v in gad.graph.edges]
    for i in range(m):
        vars_, _ = inst.constraints[i]
        base = n * N2 + i * N1
        for r, alpha in enumerate(inst.satisfying(i)):
            roles.append("constraint")
            names.append(f"C{i}:" + ",".join(_fmt(a) for a in alpha))
            for j, a in zip(vars_, alpha):
                edges.append((base + r, j * N2 + H.index(a)))
        for p in range(N1):
            for q in range(p + 1, N1):
                edges.append((base + p, base + q))
    G = Graph(N1 * m + N2 * n, edges, roles, names)
    return AdditiveGadgetGraph(G, inst, gad, N1, N2, M1, M2)


def reduce_additive(inst):
    return encode_additive(inst), encode_additive(homogenize_additive(inst))


def additive_completeness_map(inst, tau):
    """Gadget shift by -tau(x_j) on each variable block; alpha -> alpha - tau on
    satisfied constraints; rank-preserving on the others."""
    H = inst.group
    tau = [_elem(H, a) for a in tau]
    gad = variable_gadget(H)
    N2, N1 = gad.graph.n, len(inst.psi)
    n = inst.n
    fw = [0] * (N1 * inst.m + N2 * n)
    shifts = {}
    for j in range(n):
        a = H.neg(tau[j])
        if a not in shifts:
            shifts[a] = gad.shift(a)
        f = shifts[a]
        for v in range(N2):
            fw[j * N2 + v] = j * N2 + f[v]
    homog_rank = {alpha: r for r, alpha in enumerate(inst.psi.sorted_elements)}
    for i in range(inst.m):
        vars_, _ = inst.constraints[i]
        base = n * N2 + i * N1
        ok = inst.is_satisfied(i, tau)
        loc = tuple(tau[j] for j in vars_)
        for r, alpha in enumerate(inst.satisfying(i)):
            img = homog_rank[H.sub_k(alpha, loc)] if ok else r
            fw[base + r] = base + img
    return VertexMap(fw)


@dataclass
class AdditiveDecodeReport:
    A: set
    B: set
    B_shift: set
    sigma: VertexMap
    tau: tuple
    aut_sigma: object
    val_tau: Fraction
    gi: object
    delta: Fraction
    preconditions_held: dict
    claims: dict
    asserted: bool

    def to_dict(self):
        def num(x):
            return None if x is None else str(x)

        return {
            "A": sorted(self.A),
            "B": sorted(self.B),
            "B_shift": sorted(self.B_shift),
            "sigma": list(self.sigma),
            "tau": [list(a) for a in self.tau],
            "aut_sigma": None if self.aut_sigma is None else num(self.aut_sigma.ratio),
            "val_tau": num(self.val_tau),
            "gi": num(self.gi.ratio),
            "delta": num(self.delta),
            "preconditions_held": self.preconditions_held,
            "claims": {k: {"lhs": num(l), "rhs": num(r), "holds": h} for k, (l, r, h) in self.claims.items()},
            "asserted": self.asserted,
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def additive_decode(pair, pi, eps, beta, gamma, c=None):
    G, Gh = pair
    inst = G.instance
    H = inst.group
    n, m, k = inst.n, inst.m, inst.k
    pi = VertexMap(pi)
    if len(pi) != G.N or G.N != Gh.N:
        raise ValueError("pi must biject the two vertex sets")
    eps, beta, gamma = as_fraction(eps), as_fraction(beta), as_fraction(gamma)
    c = Fraction(m, n) if c is None else as_fraction(c)
    N1, N2, M12 = G.N1, G.N2, G.M1 + G.M2
    h = H.order

    homog_blocks = {frozenset(Gh.constraint_block(i)): i for i in range(m)}
    A = {i for i in range(m) if frozenset(pi[v] for v in G.constraint_block(i)) in homog_blocks}

    var_limit = n * N2
    B, B_shift, partial, amount = set(), set(), {}, {}
    for j in range(n):
        img = [pi[v] for v in G.block(j)]
        j2 = img[0] // N2
        if img[0] < var_limit and set(img) == set(Gh.block(j2)):
            B.add(j)
        gv = [pi[G.variable_vertex(j, b)] for b in H.elements()]
        j2 = gv[0] // N2
        if gv[0] >= var_limit or any(w // N2 != j2 or w % N2 >= h for w in gv):
            continue
        images = [H.elements()[w % N2] for w in gv]
        a = H.sub(H.elements()[0], images[0])
        if all(img_b == H.sub(b, a) for b, img_b in zip(H.elements(), images)):
            B_shift.add(j)
            partial[j] = j2
            amount[j] = a
    sigma = extend_without_fixed_points(n, partial)
    tau = tuple(amount[j] if (j in B_shift and sigma[j] == j) else H.zero for j in range(n))

    hyper = Hypergraph(n, k, {tuple(sorted(v)) for v, _ in inst.constraints})
    aut = aut_score(hyper, sigma) if hyper.m else None
    v = val_additive(inst, tau)
    gi = gi_score(G.graph, Gh.graph, pi)

    cands = [Fraction(1, 10 * M12), gamma / (4 * M12)]
    if c:
        cands.append(eps / (3 * M12 * N1 * c))
    delta = min(cands)
    flags = check_hypergraph_preconditions(hyper, eps, beta, gamma, 100 * c, 200 * k * eps)
    flags["simple_hypergraph"] = hyper.m == m

    claims = {}
    claims["A"] = (Fraction(len(A)), (1 - delta * M12) * m)
    claims["B"] = (Fraction(len(B)), (1 - 2 * delta * M12 * N1 * c) * n)
    claims["B_shift"] = (Fraction(len(B_shift)), (1 - 3 * delta * M12 * N1 * c) * n)
    if aut is not None:
        claims["aut_sigma"] = (aut.ratio, 1 - 100 * k * eps - 2 * delta * M12)
    claims["val_tau"] = (v, Fraction(9, 10) - 100 * (eps + beta))
    claims = {name: (l, r, l >= r) for name, (l, r) in claims.items()}

    asserted = gi.ratio >= 1 - delta and all(f is True for f in flags.values())
    report = AdditiveDecodeReport(A, B, B_shift, sigma, tau, aut, v, gi, delta, flags, claims, asserted)
    if asserted:
        bad = [name for name, (_, _, ok) in claims.items() if not ok]
        if bad:
            raise ClaimViolation(f"decoder claims failed: {bad} ({report.to_json()})")
    return report
