"""Variable gadgets whose automorphisms act on the group vertices as shifts.

Local vertex ids: the |H| group vertices first (in H.elements() order), then
auxiliary vertices in creation order.  Auxiliary names:
  ("star", i, r)     inner node of the star on the i-row with representative r
  ("leaf", i, r, s)  its s-th leaf (an i-row star has i + 1 leaves, i 0-based)
  ("u", i, b), ("v", i, b)   the two aux vertices of the cycle unit b -- b + e_i
Row representatives r have coordinate i equal to 0.
"""
from dataclasses import dataclass
from math import log2

import networkx as nx

from ..graphs import Graph, VertexMap
from ..guards import check_guard

AUT_MAX_GROUP = 8
AUT_MAX_VERTICES = 40


def _row_rep(H, b, i):
    return tuple(0 if c == i else x for c, x in enumerate(b))


def row_gadget(H):
    """Auxiliary names and edges of the row gadget (empty when t = 1).

    Edges are pairs of names; group vertices are named ("x", b)."""
    aux, edges = [], []
    if H.t == 1:
        return aux, edges
    for i in range(H.t):
        reps = sorted({_row_rep(H, b, i) for b in H.elements()})
        for r in reps:
            star = ("star", i, r)
            aux.append(star)
            for s in range(i + 1):
                leaf = ("leaf", i, r, s)
                aux.append(leaf)
                edges.append((star, leaf))
            for x in range(H.moduli[i]):
                b = tuple(x if c == i else y for c, y in enumerate(r))
                edges.append((star, ("x", b)))
    return aux, edges


def cycle_gadget(H):
    aux, edges = [], []
    for i, p in enumerate(H.moduli):
        e = H.unit(i)
        for b in H.elements():
            nb = H.add(b, e)
            if p == 2:
                if b[i] == 0:
                    edges.append((("x", b), ("x", nb)))
                continue
            u, v = ("u", i, b), ("v", i, b)
            aux += [u, v]
            edges += [
                (("x", b), ("x", nb)),
                (u, ("x", b)),
                (u, ("x", nb)),
                (u, v),
                (v, ("x", nb)),
            ]
    return aux, edges


@dataclass(frozen=True)
class VariableGadget:
    group: object
    graph: Graph
    names: tuple
    index: dict

    @property
    def num_aux(self):
        return self.graph.n - self.group.order

    @property
    def num_edges(self):
        return self.graph.m

    def aux_bound(self):
        h = self.group.order
        return 4 * h * log2(h) ** 2

    def edge_bound(self):
        h = self.group.order
        return 7 * h * log2(h) ** 2

    def shift(self, a):
        """The automorphism f_a: every name is translated by a."""
        H = self.group
        fw = [0] * self.graph.n
        for v, name in enumerate(self.names):
            kind = name[0]
            if kind == "x":
                img = ("x", H.add(name[1], a))
            elif kind == "star":
                img = ("star", name[1], _row_rep(H, H.add(name[2], a), name[1]))
            elif kind == "leaf":
                img = ("leaf", name[1], _row_rep(H, H.add(name[2], a), name[1]), name[3])
            else:
                img = (kind, name[1], H.add(name[2], a))
            fw[v] = self.index[img]
        return VertexMap(fw)


def variable_gadget(H):
    raux, redges = row_gadget(H)
    caux, cedges = cycle_gadget(H)
    names = tuple([("x", b) for b in H.elements()] + raux + caux)
    index = {nm: i for i, nm in enumerate(names)}
    edges = [(index[a], index[b]) for a, b in redges + cedges]
    roles = ["variable"] * H.order + ["auxiliary"] * (len(names) - H.order)
    g = Graph(len(names), edges, roles, [_fmt(nm) for nm in names])
    return VariableGadget(H, g, names, index)


def _fmt(name):
    return ":".join("".join(map(str, p)) if isinstance(p, tuple) else str(p) for p in name)


def max_clique_size(G):
    if G.n == 0:
        return 0
    return max(len(c) for c in nx.find_cliques(G.to_networkx()))


def _stable_colors(G):
    from ..baseline import wl_refine
    return wl_refine(G, 1).colors


def iter_automorphisms(G, colors=None):
    """Yield every automorphism of G by backtracking with colour and adjacency pruning."""
    n = G.n
    adj = G.adjacency
    colors = colors if colors is not None else _stable_colors(G)
    # visit vertices so that each (after the first of a component) has an earlier neighbour
    order, seen = [], set()
    for s in sorted(range(n), key=lambda v: (-len(adj[v]), v)):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    by_color = {}
    for v in range(n):
        by_color.setdefault(colors[v], []).append(v)
    img = [None] * n
    used = [False] * n

    def rec(pos):
        if pos == n:
            yield VertexMap(img)
            return
        v = order[pos]
        for w in by_color[colors[v]]:
            if used[w]:
                continue
            ok = True
            for u in order[:pos]:
                if (u in adj[v]) != (img[u] in adj[w]):
                    ok = False
                    break
            if ok:
                img[v] = w
                used[w] = True
                yield from rec(pos + 1)
                used[w] = False
                img[v] = None

    yield from rec(0)


def enumerate_gadget_automorphisms(g):
    """All automorphisms of the gadget graph (exhaustive; guarded by size)."""
    check_guard("|H|", g.group.order, AUT_MAX_GROUP)
    check_guard("gadget vertices", g.graph.n, AUT_MAX_VERTICES)
    return list(iter_automorphisms(g.graph))


def restriction_to_group(g, f):
    """The map on H induced by an automorphism f, or None if V_x is not preserved."""
    H = g.group
    out = {}
    for b in H.elements():
        w = f[g.index[("x", b)]]
        if w >= H.order:
            return None
        out[b] = g.names[w][1]
    return out


def shift_amount(g, f):
    """a if f acts on V_x as b -> b + a, else None."""
    H = g.group
    m = restriction_to_group(g, f)
    if m is None:
        return None
    a = H.sub(m[H.zero], H.zero)
    return a if all(m[b] == H.add(b, a) for b in H.elements()) else None


def gadget_audit(H):
    """Counts and checks for one group, as a JSON-ready dict."""
    g = variable_gadget(H)
    autos = enumerate_gadget_automorphisms(g)
    amounts = [shift_amount(g, f) for f in autos]
    actions = {tuple(sorted(restriction_to_group(g, f).items())) for f in autos}
    leaves = 1
    if H.t > 1:
        from math import factorial
        for i in range(H.t):
            leaves *= factorial(i + 1) ** (H.order // H.moduli[i])
    h = H.order
    return {
        "group": repr(H),
        "order": h,
        "aux": g.num_aux,
        "edges": g.num_edges,
        "aux_bound": g.aux_bound(),
        "edge_bound": g.edge_bound(),
        "automorphisms": len(autos),
        "distinct_group_actions": len(actions),
        "all_shifts": all(a is not None for a in amounts),
        "shifts_are_automorphisms": all(
            _is_automorphism(g.graph, g.shift(a)) for a in H.elements()
        ),
        "predicted_order_with_leaf_swaps": h * leaves,
        "max_clique": max_clique_size(g.graph),
        "min_4_order": min(4, h),
    }


def _is_automorphism(G, f):
    return all(tuple(sorted((f[u], f[v]))) in G.edges for u, v in G.edges)
