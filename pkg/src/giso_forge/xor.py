"""3XOR instances: sampling, planting, homogenization and value."""
import json
from fractions import Fraction
from math import floor

import numpy as np

from .guards import as_fraction, check_guard

BRUTE_FORCE_MAX_N = 24


class ThreeXorInstance:
    """Constraints x_j1 + x_j2 + x_j3 = b over Z_2, stored as sorted (j1, j2, j3, b)."""

    def __init__(self, n, constraints=()):
        self.n = int(n)
        cs = []
        for c in constraints:
            j1, j2, j3, b = (int(v) for v in c)
            t = tuple(sorted((j1, j2, j3)))
            if len(set(t)) != 3:
                raise ValueError(f"constraint {c!r} repeats a variable")
            if t[0] < 0 or t[2] >= self.n:
                raise ValueError(f"constraint {c!r} uses a variable outside [0, {self.n})")
            if b not in (0, 1):
                raise ValueError(f"right-hand side {b} is not in Z_2")
            cs.append(t + (b,))
        self.constraints = tuple(cs)

    @property
    def m(self):
        return len(self.constraints)

    def __eq__(self, other):
        return (
            isinstance(other, ThreeXorInstance)
            and self.n == other.n
            and self.constraints == other.constraints
        )

    def __hash__(self):
        return hash((self.n, self.constraints))

    def __repr__(self):
        return f"ThreeXorInstance(n={self.n}, m={self.m})"

    def triples(self):
        return [c[:3] for c in self.constraints]

    def to_json(self):
        return json.dumps({"n": self.n, "constraints": [list(c) for c in self.constraints]})

    @classmethod
    def from_json(cls, text):
        d = json.loads(text) if isinstance(text, str) else text
        return cls(d["n"], d["constraints"])


def Assignment(values, n=None):
    """Validated Z_2 assignment as a tuple of ints."""
    vals = tuple(int(v) for v in values)
    if any(v not in (0, 1) for v in vals):
        raise ValueError("assignment values must be 0 or 1")
    if n is not None and len(vals) != n:
        raise ValueError(f"assignment has length {len(vals)}, expected {n}")
    return vals


def sample_random_3xor(n, m, seed, replacement=True):
    """m uniform unordered triples with uniform right-hand sides.

    With replacement=False the triples are distinct.
    """
    if n < 3:
        raise ValueError("need at least 3 variables")
    rng = np.random.default_rng(seed)
    if replacement:
        triples = []
        for _ in range(m):
            triples.append(tuple(rng.choice(n, size=3, replace=False)))
    else:
        from .graphs import _sample_ksets
        triples = _sample_ksets(n, 3, m, rng)
    rhs = rng.integers(0, 2, size=m)
    return ThreeXorInstance(n, [tuple(int(v) for v in t) + (int(b),) for t, b in zip(triples, rhs)])


def homogenize(inst):
    return ThreeXorInstance(inst.n, [c[:3] + (0,) for c in inst.constraints])


def flip_all_rhs(inst):
    return ThreeXorInstance(inst.n, [c[:3] + (1 - c[3],) for c in inst.constraints])


def satisfies(c, tau):
    j1, j2, j3, b = c
    return (tau[j1] ^ tau[j2] ^ tau[j3]) == b


def val(inst, tau):
    """Exact fraction of constraints satisfied by tau (1 for an empty instance)."""
    tau = Assignment(tau, inst.n)
    if inst.m == 0:
        return Fraction(1)
    return Fraction(sum(1 for c in inst.constraints if satisfies(c, tau)), inst.m)


def plant(n, m, eps, seed, replacement=True):
    """Instance with a hidden tau satisfying all but floor(eps*m) constraints."""
    eps = as_fraction(eps)
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    if n < 3:
        raise ValueError("need at least 3 variables")
    rng = np.random.default_rng(seed)
    tau = tuple(int(v) for v in rng.integers(0, 2, size=n))
    base = sample_random_3xor(n, m, rng.integers(2**63), replacement)
    flips = floor(eps * m)
    flipped = set(int(i) for i in rng.choice(m, size=flips, replace=False)) if flips else set()
    cs = []
    for i, (j1, j2, j3, _) in enumerate(base.constraints):
        b = tau[j1] ^ tau[j2] ^ tau[j3]
        cs.append((j1, j2, j3, b ^ 1 if i in flipped else b))
    return ThreeXorInstance(n, cs), tau


def brute_force_val(inst):
    """Maximum of val over all 2^n assignments, with the first maximizer found."""
    check_guard("n", inst.n, BRUTE_FORCE_MAX_N)
    if inst.m == 0:
        return Fraction(1), (0,) * inst.n
    x = np.arange(2 ** inst.n, dtype=np.int64)
    sat = np.zeros(x.shape, dtype=np.int32)
    for j1, j2, j3, b in inst.constraints:
        par = ((x >> j1) ^ (x >> j2) ^ (x >> j3)) & 1
        sat += par == b
    best = int(np.argmax(sat))
    tau = tuple((best >> j) & 1 for j in range(inst.n))
    return Fraction(int(sat[best]), inst.m), tau
