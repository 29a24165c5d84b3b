"""Checks that the Pi -> A substitution carries the 3XOR axioms to the GI axioms.

Indeterminates are A[x_j -> a], named ("A", j, a), and Pi[u -> v], named
("P", u, v), with u a vertex of G_inst and v a vertex of G_homog.  An identity
is checked by evaluating it at every 0/1 point of the local variety: the
indicator encodings of the assignments to the touched variables that satisfy
the touched constraints.  Since x^2 - x lies in the ideal, the ideal is
radical and vanishing on those points is the same as membership.
"""
import json
from fractions import Fraction
from itertools import product

from .guards import check_guard
from .poly import MultilinearPoly
from .reduction import encode, homogenize, satisfying_assignments
from .xor import Assignment, satisfies, val

LOCAL_MAX_VARS = 8


def A(j, a):
    return MultilinearPoly.var(("A", j, a % 2))


class _Layout:
    """Decodes vertex ids of an encoded instance into variable/constraint data."""

    def __init__(self, inst):
        self.inst = inst
        self.n = inst.n
        self.sat = [satisfying_assignments(c[3]) for c in inst.constraints]
        self.homog = satisfying_assignments(0)

    def role(self, v, homog=False):
        n = self.n
        if v < 2 * n:
            return ("var", v // 2, v % 2)
        i, r = divmod(v - 2 * n, 4)
        alpha = self.homog[r] if homog else self.sat[i][r]
        return ("con", i, alpha)

    def candidates(self, u):
        """Vertices v of G_homog with a nonzero Pi[u -> v]."""
        n = self.n
        if u < 2 * n:
            j = u // 2
            return [2 * j, 2 * j + 1]
        i = (u - 2 * n) // 4
        return [2 * n + 4 * i + r for r in range(4)]

    def constraints_of(self, *us):
        return sorted({(u - 2 * self.n) // 4 for u in us if u >= 2 * self.n})


def substitute_pi(u, v, inst, layout=None):
    lay = layout or _Layout(inst)
    ru, rv = lay.role(u), lay.role(v, homog=True)
    if ru[0] != rv[0] or ru[1] != rv[1]:
        return MultilinearPoly()
    if ru[0] == "var":
        return A(ru[1], ru[2] - rv[2])
    vars_ = inst.constraints[ru[1]][:3]
    out = MultilinearPoly.const(1)
    for j, a, b in zip(vars_, ru[2], rv[2]):
        out = out * A(j, a - b)
    return out


def local_variety_points(constraint_ids, inst, extra_vars=()):
    """0/1 valuations of the A-indeterminates of the touched variables that
    encode assignments satisfying every listed constraint.

    Returns (points, flagged); flagged is True when there are none.
    """
    touched = set(extra_vars)
    for i in constraint_ids:
        touched.update(inst.constraints[i][:3])
    touched = sorted(touched)
    check_guard("touched variables", len(touched), LOCAL_MAX_VARS)
    points = []
    for bits in product((0, 1), repeat=len(touched)):
        tau = dict(zip(touched, bits))
        if all(satisfies(inst.constraints[i], tau) for i in constraint_ids):
            pt = {}
            for j, b in tau.items():
                pt[("A", j, b)] = 1
                pt[("A", j, 1 - b)] = 0
            points.append(pt)
    return points, not points


def _check_vanishes(poly, constraint_ids, inst):
    """'passed', 'failed' or 'vacuous' (empty local variety)."""
    extra = {name[1] for name in poly.variables()}
    if poly.is_zero() and not constraint_ids:
        return "passed"
    pts, empty = local_variety_points(constraint_ids, inst, extra)
    if empty:
        return "vacuous"
    return "passed" if all(poly.evaluate(p) == 0 for p in pts) else "failed"


def edge_identity_poly(u, u2, inst, layout=None, homog_edges=None):
    """sum over v, v' with {v, v'} in E(G_homog) of Pi[u->v] Pi[u'->v'], minus 1."""
    lay = layout or _Layout(inst)
    if homog_edges is None:
        homog_edges = encode(homogenize(inst)).graph.edges
    total = MultilinearPoly.const(-1)
    for v in lay.candidates(u):
        for v2 in lay.candidates(u2):
            if v != v2 and (min(v, v2), max(v, v2)) in homog_edges:
                total = total + substitute_pi(u, v, inst, lay) * substitute_pi(u2, v2, inst, lay)
    return total


def check_edge_identity(edge, inst, layout=None, homog_edges=None):
    u, u2 = edge
    lay = layout or _Layout(inst)
    poly = edge_identity_poly(u, u2, inst, lay, homog_edges)
    return _check_vanishes(poly, lay.constraints_of(u, u2), inst)


def verify_edge_identity(edge, inst):
    return check_edge_identity(edge, inst) == "passed"


def constraint_generator(inst, i):
    """Generator (iii) of constraint i: sum over satisfying alpha of prod A - 1."""
    c = inst.constraints[i]
    g = MultilinearPoly.const(-1)
    for alpha in satisfying_assignments(c[3]):
        term = MultilinearPoly.const(1)
        for j, a in zip(c[:3], alpha):
            term = term * A(j, a)
        g = g + term
    return g


def clique_edge_certificate(edge, inst):
    """Second route for a clique edge (alpha, alpha') of one constraint.

    With S(alpha) = sum over beta of Pi[alpha -> beta], checks symbolically that
    S(alpha) - 1 is generator (iii), that S S' - 1 = (S - 1) S' + (S' - 1), and
    that the edge polynomial differs from S S' - 1 only by monomials containing
    both A[x -> 0] and A[x -> 1] for some x (each a multiple of generators (i), (ii)).
    """
    u, u2 = edge
    lay = _Layout(inst)
    ru, ru2 = lay.role(u), lay.role(u2)
    if ru[0] != "con" or ru2[0] != "con" or ru[1] != ru2[1]:
        raise ValueError("not a clique edge")
    i = ru[1]
    gen = constraint_generator(inst, i)
    S = sum((substitute_pi(u, v, inst, lay) for v in lay.candidates(u)), MultilinearPoly())
    S2 = sum((substitute_pi(u2, v, inst, lay) for v in lay.candidates(u2)), MultilinearPoly())
    if S - 1 != gen or S2 - 1 != gen:
        return False
    if S * S2 - 1 != (S - 1) * S2 + (S2 - 1):
        return False
    residual = edge_identity_poly(u, u2, inst, lay) - (S * S2 - 1)
    for mono in residual.terms:
        js = [name[1] for name in mono]
        if len(js) == len(set(js)):
            return False
    return True


def _record(counts, key, status):
    c = counts.setdefault(key, {"checked": 0, "passed": 0, "vacuous": 0, "failed": 0})
    c["checked"] += 1
    c[status] += 1


def verify_sos_reduction(inst, on_record=None):
    """Check axiom classes (I) booleanity, (II) row/column sums, (III) edges."""
    check_guard("m", inst.m, 15)
    check_guard("n", inst.n, 10)
    G = encode(inst)
    Gh = encode(homogenize(inst))
    lay = _Layout(inst)
    hedges = Gh.graph.edges
    N = G.N
    counts = {}

    def emit(cls, item, status):
        _record(counts, cls, status)
        if on_record:
            on_record({"class": cls, "item": item, "status": status})

    for u in range(N):
        for v in range(N):
            p = substitute_pi(u, v, inst, lay)
            emit("I", [u, v], _check_vanishes(p * p - p, lay.constraints_of(u), inst))
    for u in range(N):
        row = sum((substitute_pi(u, v, inst, lay) for v in range(N)), MultilinearPoly()) - 1
        emit("II_row", u, _check_vanishes(row, lay.constraints_of(u), inst))
    for v in range(N):
        col = sum((substitute_pi(u, v, inst, lay) for u in range(N)), MultilinearPoly()) - 1
        emit("II_col", v, _check_vanishes(col, lay.constraints_of(v), inst))
    for e in G.graph.edge_list:
        emit("III", list(e), check_edge_identity(e, inst, lay, hedges))

    ok = all(c["failed"] == 0 and c["vacuous"] == 0 for c in counts.values())
    return {"n": inst.n, "m": inst.m, "classes": counts, "all_passed": ok,
            "metadata": {"degree_r": None, "eta": None}}


def sos_report_json(report):
    return json.dumps(report)


class PointExpectation:
    """Evaluation at the indicator encoding of a satisfying assignment."""

    def __init__(self, tau, inst, degree):
        self.inst = inst
        self.tau = Assignment(tau, inst.n)
        self.degree = degree
        self.point = {}
        for j, b in enumerate(self.tau):
            self.point[("A", j, b)] = 1
            self.point[("A", j, 1 - b)] = 0
        self._layout = _Layout(inst)

    def __call__(self, poly):
        if poly.degree() > self.degree:
            raise ValueError(f"degree {poly.degree()} exceeds {self.degree}")
        return poly.evaluate(self.point)

    def on_pi(self, poly):
        """Expectation of a polynomial over Pi-indeterminates via the substitution."""
        mapping = {}
        for name in poly.variables():
            _, u, v = name
            mapping[name] = substitute_pi(u, v, self.inst, self._layout)
        return poly.substitute(mapping).evaluate(self.point)


def pseudoexpectation_from_assignment(tau, inst, degree):
    if val(inst, tau) != 1:
        raise ValueError("tau does not satisfy every constraint")
    return PointExpectation(tau, inst, degree)


def Pi(u, v):
    return MultilinearPoly.var(("P", u, v))
