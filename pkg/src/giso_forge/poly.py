"""Exact multilinear polynomials over 0/1 indeterminates (x^2 = x)."""
from fractions import Fraction


class MultilinearPoly:
    """Sum of coefficient * monomial, a monomial being a frozenset of names.

    Products are reduced with x*x = x, so every polynomial is multilinear.
    Zero coefficients are dropped.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    mono = frozenset(mono)
                    out[mono] = out.get(mono, 0) + c
                    if not out[mono]:
                        del out[mono]
        self.terms = out

    @classmethod
    def const(cls, c):
        return cls({frozenset(): c})

    @classmethod
    def var(cls, name):
        return cls({frozenset([name]): 1})

    @classmethod
    def monomial(cls, names, c=1):
        return cls({frozenset(names): c})

    def _coerce(self, other):
        if isinstance(other, MultilinearPoly):
            return other
        return MultilinearPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for mono, c in other.terms.items():
            t[mono] = t.get(mono, 0) + c
        return MultilinearPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return MultilinearPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 | m2
                t[m] = t.get(m, 0) + c1 * c2
        return MultilinearPoly(t)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = MultilinearPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultilinearPoly.const(other)
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), key=lambda mc: (len(mc[0]), sorted(map(str, mc[0])))):
            name = "*".join(sorted(map(str, mono))) or "1"
            parts.append(f"{c}*{name}" if mono else str(c))
        return " + ".join(parts)

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((len(m) for m in self.terms), default=0)

    def variables(self):
        out = set()
        for m in self.terms:
            out |= m
        return out

    def normalize(self):
        return MultilinearPoly(self.terms)

    def evaluate(self, point):
        """Value at a 0/1 (or rational) point given as {name: value}; missing names raise."""
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for name in mono:
                v *= point[name]
                if not v:
                    break
            total += v
        return total

    def substitute(self, mapping):
        """Replace each indeterminate by mapping[name] (a poly or number); others stay."""
        out = MultilinearPoly()
        for mono, c in self.terms.items():
            term = MultilinearPoly.const(c)
            for name in mono:
                r = mapping.get(name)
                term = term * (MultilinearPoly.var(name) if r is None else r)
            out = out + term
        return out
