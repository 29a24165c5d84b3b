"""3XOR to graph-isomorphism reduction, completeness map and soundness decoder.

Vertex layout of encode(inst): the variable vertex x_j -> b is 2j + b; the
constraint vertex for the r-th satisfying assignment (lexicographic order) of
constraint i is 2n + 4i + r.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .asymmetry import is_asymmetric_bruteforce
from .graphs import Graph, Hypergraph, VertexMap, aut_score, gi_score, is_degree_bounded
from .guards import as_fraction
from .xor import Assignment, ThreeXorInstance, homogenize, satisfies, val


class ClaimViolation(AssertionError):
    """A decoder inequality failed although its hypotheses held."""


def satisfying_assignments(b):
    """The four (a1, a2, a3) in Z_2^3 with a1+a2+a3 = b, in lexicographic order."""
    return [a for a in product((0, 1), repeat=3) if (a[0] ^ a[1] ^ a[2]) == b]


@dataclass(frozen=True)
class GadgetGraph:
    graph: Graph
    variable_vertices: dict
    constraint_vertices: dict
    instance: ThreeXorInstance = None

    @property
    def N(self):
        return self.graph.n

    @property
    def M(self):
        return self.graph.m

    def constraint_block(self, i):
        return [self.constraint_vertices[(i, a)] for a in satisfying_assignments(self.instance.constraints[i][3])]

    def sidecar(self):
        return {
            "n": self.instance.n,
            "m": self.instance.m,
            "vertex_roles": list(self.graph.roles),
            "names": list(self.graph.names),
        }


def _var_name(j, b):
    return f"x{j}->{b}"


def _constraint_name(i, a):
    return f"C{i}:" + "".join(map(str, a))


def encode(inst):
    n, m = inst.n, inst.m
    N = 4 * m + 2 * n
    roles = ["variable"] * (2 * n) + ["constraint"] * (4 * m)
    names = [None] * N
    var_v = {}
    con_v = {}
    edges = []
    for j in range(n):
        for b in (0, 1):
            var_v[(j, b)] = 2 * j + b
            names[2 * j + b] = _var_name(j, b)
        edges.append((2 * j, 2 * j + 1))
    for i, (j1, j2, j3, b) in enumerate(inst.constraints):
        block = []
        for r, a in enumerate(satisfying_assignments(b)):
            v = 2 * n + 4 * i + r
            con_v[(i, a)] = v
            names[v] = _constraint_name(i, a)
            block.append(v)
            for j, bit in zip((j1, j2, j3), a):
                edges.append((v, 2 * j + bit))
        for p in range(4):
            for q in range(p + 1, 4):
                edges.append((block[p], block[q]))
    return GadgetGraph(Graph(N, edges, roles, names), var_v, con_v, inst)


def gadget_graph(c):
    """The 10-vertex gadget of a single constraint, on local variables 0, 1, 2."""
    return encode(ThreeXorInstance(3, [(0, 1, 2, c[-1])]))


def reduce(inst):
    return encode(inst), encode(homogenize(inst))


def completeness_map(inst, tau, unsatisfied="complement"):
    """Map V(G_inst) -> V(G_homog) induced by the assignment tau.

    Unsatisfied constraints send alpha to the complement of alpha + tau
    (every consistency edge of the gadget breaks, exactly 12) or, with
    unsatisfied="sorted", to the homogeneous vertex of the same rank.
    """
    tau = Assignment(tau, inst.n)
    n = inst.n
    fw = [0] * (4 * inst.m + 2 * n)
    for j in range(n):
        for b in (0, 1):
            fw[2 * j + b] = 2 * j + (b ^ tau[j])
    homog_rank = {a: r for r, a in enumerate(satisfying_assignments(0))}
    for i, c in enumerate(inst.constraints):
        shift = tuple(tau[j] for j in c[:3])
        ok = satisfies(c, tau)
        for r, a in enumerate(satisfying_assignments(c[3])):
            if ok:
                img = homog_rank[tuple(x ^ s for x, s in zip(a, shift))]
            elif unsatisfied == "complement":
                img = homog_rank[tuple(1 ^ x ^ s for x, s in zip(a, shift))]
            elif unsatisfied == "sorted":
                img = r
            else:
                raise ValueError(f"unknown unsatisfied mode {unsatisfied!r}")
            fw[2 * n + 4 * i + r] = 2 * n + 4 * i + img
    return VertexMap(fw)


def gadget_parity(gadget, alpha_vertex, b1, b2, b3):
    """Parity of the number of neighbours of alpha among x_j1->b1, x_j2->b2, x_j3->b3."""
    i = (alpha_vertex - 2 * gadget.instance.n) // 4
    j1, j2, j3, _ = gadget.instance.constraints[i]
    targets = {gadget.variable_vertices[(j, bit)] for j, bit in ((j1, b1), (j2, b2), (j3, b3))}
    return len(targets & gadget.graph.adjacency[alpha_vertex]) % 2


def parity_prediction(b, b1, b2, b3):
    """Closed form of gadget_parity: 1 + b + b1 + b2 + b3 over Z_2."""
    return 1 ^ b ^ b1 ^ b2 ^ b3


def extend_without_fixed_points(n, partial):
    """Complete a partial injection {j: sigma(j)} to a permutation of range(n).

    The free domain is matched to the free codomain by the cyclic shift of
    their sorted orders with the fewest fixed points, which is zero unless a
    single element is left over and both free sets equal it.
    """
    used = set(partial.values())
    dom = [j for j in range(n) if j not in partial]
    cod = [j for j in range(n) if j not in used]
    fw = [None] * n
    for j, t in partial.items():
        fw[j] = t
    r = len(dom)
    if r:
        best = min(range(r), key=lambda k: sum(1 for p in range(r) if dom[p] == cod[(p + k) % r]))
        for p in range(r):
            fw[dom[p]] = cod[(p + best) % r]
    return VertexMap(fw)


def constraint_hypergraph(inst):
    return Hypergraph(inst.n, 3, set(inst.triples()))


@dataclass
class DecodeReport:
    A: set
    B: set
    sigma: VertexMap
    tau: tuple
    aut_sigma: object
    val_tau: Fraction
    gi: object
    delta: Fraction
    preconditions_held: dict
    claims: dict = field(default_factory=dict)
    asserted: bool = False

    def to_dict(self):
        def num(x):
            return None if x is None else str(x)

        return {
            "A": sorted(self.A),
            "B": sorted(self.B),
            "sigma": list(self.sigma),
            "tau": list(self.tau),
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


def check_hypergraph_preconditions(H, eps, beta, gamma, D, gamma_min, asym_max_n=9):
    """Flags for the hypotheses of the decoder claims on the constraint hypergraph."""
    flags = {}
    flags["degree_bounded"] = True if eps == 0 else is_degree_bounded(H, eps, D)
    if H.m == 0:
        flags["asymmetric"] = False
    elif H.n <= asym_max_n:
        flags["asymmetric"] = is_asymmetric_bruteforce(H, beta, gamma)[0]
    else:
        flags["asymmetric"] = None
    flags["gamma_large"] = gamma >= gamma_min
    return flags


def _claim(claims, name, lhs, rhs):
    claims[name] = (lhs, rhs, lhs >= rhs)


def decode(pair, pi, eps, beta, gamma, c=None):
    """Run the soundness decoder on a map pi: V(G_inst) -> V(G_homog)."""
    G, Gh = pair
    inst = G.instance
    n, m = inst.n, inst.m
    pi = VertexMap(pi)
    if len(pi) != G.N or G.N != Gh.N:
        raise ValueError("pi must biject the two vertex sets")
    eps, beta, gamma = as_fraction(eps), as_fraction(beta), as_fraction(gamma)
    c = Fraction(m, n) if c is None else as_fraction(c)

    homog_blocks = {}
    for i2 in range(m):
        homog_blocks[frozenset(Gh.constraint_block(i2))] = i2
    A = set()
    for i in range(m):
        if frozenset(pi[v] for v in G.constraint_block(i)) in homog_blocks:
            A.add(i)

    B = set()
    partial = {}
    for j in range(n):
        img = {pi[2 * j], pi[2 * j + 1]}
        lo = min(img)
        if lo < 2 * n and lo % 2 == 0 and img == {lo, lo + 1}:
            B.add(j)
            partial[j] = lo // 2
    sigma = extend_without_fixed_points(n, partial)
    tau = tuple(
        (pi[2 * j] - 2 * j) if (j in B and sigma[j] == j) else 0 for j in range(n)
    )

    H = constraint_hypergraph(inst)
    aut = aut_score(H, sigma) if H.m else None
    v = val(inst, tau)
    gi = gi_score(G.graph, Gh.graph, pi)

    delta = min(Fraction(1, 200), gamma / 48, eps / (95 * c) if c else Fraction(1, 200))
    flags = check_hypergraph_preconditions(H, eps, beta, gamma, 100 * c, 200 * eps)
    flags["simple_hypergraph"] = H.m == m

    claims = {}
    _claim(claims, "A", Fraction(len(A)), (1 - 19 * delta) * m)
    _claim(claims, "B", Fraction(len(B)), (1 - 95 * c * delta) * n)
    if aut is not None:
        _claim(claims, "aut_sigma", aut.ratio, 1 - 100 * eps - 24 * delta)
    _claim(claims, "val_tau", v, Fraction(9, 10) - 100 * (eps + beta))

    asserted = gi.ratio >= 1 - delta and all(f is True for f in flags.values())
    report = DecodeReport(A, B, sigma, tau, aut, v, gi, delta, flags, claims, asserted)
    if asserted:
        bad = [k for k, (_, _, h) in claims.items() if not h]
        if bad:
            raise ClaimViolation(f"decoder claims failed: {bad} ({report.to_json()})")
    return report
