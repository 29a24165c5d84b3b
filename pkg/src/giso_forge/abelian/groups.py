"""Finite abelian groups Z_p1 + ... + Z_pt and subgroup predicates psi in H^k."""
import json
from collections import Counter
from itertools import product
from math import prod

from ..guards import check_guard

CLOSURE_MAX = 4096


class AbelianGroup:
    def __init__(self, moduli):
        moduli = tuple(int(p) for p in moduli)
        if not moduli or any(p < 2 for p in moduli):
            raise ValueError("moduli must be a nonempty sequence of integers >= 2")
        self.moduli = moduli
        self.t = len(moduli)
        self.order = prod(moduli)
        self._elements = tuple(product(*(range(p) for p in moduli)))
        self._index = {e: i for i, e in enumerate(self._elements)}

    @classmethod
    def parse(cls, text):
        """'Z3xZ5' -> Z_3 + Z_5."""
        parts = text.replace(" ", "").split("x")
        try:
            return cls(int(p.lstrip("Zz")) for p in parts)
        except ValueError:
            raise ValueError(f"bad group string {text!r}") from None

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    def __repr__(self):
        return "x".join(f"Z{p}" for p in self.moduli)

    def __len__(self):
        return self.order

    def elements(self):
        return self._elements

    def index(self, a):
        return self._index[tuple(a)]

    @property
    def zero(self):
        return (0,) * self.t

    def unit(self, i):
        return tuple(1 if c == i else 0 for c in range(self.t))

    def add(self, a, b):
        return tuple((x + y) % p for x, y, p in zip(a, b, self.moduli))

    def sub(self, a, b):
        return tuple((x - y) % p for x, y, p in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % p for x, p in zip(a, self.moduli))

    def add_k(self, u, w):
        return tuple(self.add(x, y) for x, y in zip(u, w))

    def sub_k(self, u, w):
        return tuple(self.sub(x, y) for x, y in zip(u, w))


def _as_elem(H, a):
    if isinstance(a, int):
        a = (a,)
    a = tuple(int(x) % p for x, p in zip(a, H.moduli))
    if len(a) != H.t:
        raise ValueError(f"{a!r} is not an element of {H}")
    return a


class SubgroupPredicate:
    """An explicit set psi of k-tuples over H."""

    def __init__(self, group, k, elements):
        self.group = group
        self.k = int(k)
        els = set()
        for tup in elements:
            tup = tuple(_as_elem(group, a) for a in tup)
            if len(tup) != self.k:
                raise ValueError(f"{tup!r} does not have arity {self.k}")
            els.add(tup)
        if not els:
            raise ValueError("predicate is empty")
        self.elements = frozenset(els)
        self.sorted_elements = tuple(sorted(els))

    @classmethod
    def from_generators(cls, group, k, generators):
        """Subgroup of H^k generated by the given k-tuples."""
        check_guard("|H|^k", group.order ** k, CLOSURE_MAX)
        gens = [tuple(_as_elem(group, a) for a in g) for g in generators]
        zero = (group.zero,) * k
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = group.add_k(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return cls(group, k, seen)

    def __contains__(self, tup):
        return tuple(tup) in self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted_elements)

    def __eq__(self, other):
        return (
            isinstance(other, SubgroupPredicate)
            and (self.group, self.k, self.elements) == (other.group, other.k, other.elements)
        )

    def __hash__(self):
        return hash((self.group, self.k, self.elements))

    def to_json(self):
        return json.dumps({
            "k": self.k,
            "moduli": list(self.group.moduli),
            "elements": [[list(a) for a in tup] for tup in self.sorted_elements],
        })

    @classmethod
    def from_json(cls, text):
        d = json.loads(text) if isinstance(text, str) else text
        return cls(AbelianGroup(d["moduli"]), d["k"], d["elements"])


def sum_zero_predicate(H, k):
    """{(a_1, ..., a_k) in H^k : a_1 + ... + a_k = 0}."""
    els = []
    for tup in product(H.elements(), repeat=k - 1):
        s = H.zero
        for a in tup:
            s = H.add(s, a)
        els.append(tup + (H.neg(s),))
    return SubgroupPredicate(H, k, els)


def xor3_predicate():
    return sum_zero_predicate(AbelianGroup([2]), 3)


def check_pairwise_independent_subgroup(psi):
    """(True, None) or (False, reason) for: subgroup, proper, uniform marginals,
    pairwise independent coordinates."""
    H, k = psi.group, psi.k
    zero = (H.zero,) * k
    if zero not in psi.elements:
        return False, "does not contain 0"
    for x in psi.elements:
        if tuple(H.neg(a) for a in x) not in psi.elements:
            return False, f"not closed under negation at {x}"
        for y in psi.elements:
            if H.add_k(x, y) not in psi.elements:
                return False, f"not closed under addition at {x} + {y}"
    if len(psi) == H.order ** k:
        return False, "not a proper subgroup"
    for i in range(k):
        cnt = Counter(x[i] for x in psi.elements)
        if len(cnt) != H.order or len(set(cnt.values())) != 1:
            return False, f"coordinate {i} is not uniform"
    target, rem = divmod(len(psi), H.order ** 2)
    for i in range(k):
        for j in range(i + 1, k):
            cnt = Counter((x[i], x[j]) for x in psi.elements)
            if rem or len(cnt) != H.order ** 2 or any(v != target for v in cnt.values()):
                return False, f"coordinates {i}, {j} are not independent"
    return True, None
