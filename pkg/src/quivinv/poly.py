"""Sparse multivariate polynomials with exact coefficients.

A monomial is a sorted tuple of variable indices with repetition, so
``(0, 0, 3)`` is ``x0^2 x3``.  Monomial tuples are interned so equal
monomials share one object.
"""

from fractions import Fraction
from itertools import combinations_with_replacement

_INTERN = {}


def intern(m):
    return _INTERN.setdefault(m, m)


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    return intern(tuple(sorted(a + b)))


def _clean(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[intern(tuple(m))] = _clean(c)

    @classmethod
    def var(cls, i):
        p = cls()
        p.terms[intern((i,))] = 1
        return p

    @classmethod
    def const(cls, c):
        p = cls()
        if c:
            p.terms[()] = _clean(c)
        return p

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return self.terms == {(): other}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            parts.append(f"{c}*" + "*".join(f"x{i}" for i in m) if m else str(c))
        return "Poly(" + " + ".join(parts) + ")"

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _clean(v)
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not other:
                return Poly()
            return Poly._raw({m: _clean(c * other) for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly._raw({m: _clean(c) for m, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def degree(self):
        return max((len(m) for m in self.terms), default=-1)

    def is_homogeneous(self, d=None):
        degs = {len(m) for m in self.terms}
        if d is not None:
            return degs <= {d}
        return len(degs) <= 1

    def coefficient(self, m):
        return self.terms.get(tuple(m), 0)

    def evaluate(self, values):
        total = 0
        for m, c in self.terms.items():
            t = c
            for i in m:
                t = t * values[i]
            total = total + t
        return _clean(Fraction(total)) if not isinstance(total, Poly) else total


def monomials(nvars, degree):
    """All degree-``degree`` monomials in ``nvars`` variables, in lex order."""
    return [intern(m) for m in combinations_with_replacement(range(nvars), degree)]


def derive(m, linear_map):
    """Apply the derivation induced by a linear substitution to a monomial.

    ``linear_map[v]`` is a dict ``w -> c`` giving ``delta x_v = sum_w c x_w``.
    The result is a dict monomial -> coefficient.
    """
    out = {}
    prev = None
    for k, v in enumerate(m):
        if v == prev:
            continue
        prev = v
        image = linear_map.get(v)
        if not image:
            continue
        mult = m.count(v)
        rest = m[:k] + m[k + 1:]
        for w, c in image.items():
            mm = intern(tuple(sorted(rest + (w,))))
            val = out.get(mm, 0) + mult * c
            if val:
                out[mm] = val
            else:
                out.pop(mm, None)
    return out
