"""The skein algebra of the torus in the (p,q)_T basis, and curve classes in K(T^3).

(p,q)_T is T_d applied to the simple closed curve of slope (p/d, q/d),
d = gcd(p,q), with T_0 = 2, T_1 = x, T_{n+1} = x T_n - T_{n-1}.  In this
basis the product is the Frohman-Gelca product-to-sum rule.
"""

from __future__ import annotations

from math import gcd

from .errors import ValidationError
from .exactalg import ONE, RationalFunc, as_rf


def canon(p, q):
    p, q = int(p), int(q)
    if p < 0 or (p == 0 and q < 0):
        return -p, -q
    return p, q


class T2Element:
    """Finite combination of (p,q)_T with Q(A) coefficients; (0,0)_T = 2 * empty."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for key, c in (terms or {}).items():
            key = canon(*key)
            v = t.get(key, RationalFunc()) + as_rf(c)
            if v:
                t[key] = v
            else:
                t.pop(key, None)
        self.terms = t

    @classmethod
    def curve(cls, p, q):
        return cls({(p, q): ONE})

    @classmethod
    def empty(cls):
        # the empty link is half of (0,0)_T
        return cls({(0, 0): as_rf(1) / 2})

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t[k] + c if k in t else c
        return T2Element(t)

    def __neg__(self):
        return T2Element({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_rf(c)
        return T2Element({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, T2Element):
            return self.scale(other)
        acc = T2Element()
        for (p, q), c1 in self.terms.items():
            for (r, s), c2 in other.terms.items():
                acc = acc + fg_product((p, q), (r, s)).scale(c1 * c2)
        return acc

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, T2Element) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%s)*(%d,%d)_T" % (c, p, q) for (p, q), c in sorted(self.terms.items()))


def fg_product(a, b):
    """(p,q)_T * (r,s)_T = A^{ps-qr} (p+r,q+s)_T + A^{-(ps-qr)} (p-r,q-s)_T."""
    (p, q), (r, s) = a, b
    det = p * s - q * r
    out = T2Element({(p + r, q + s): RationalFunc.monomial(1, det)})
    return out + T2Element({(p - r, q - s): RationalFunc.monomial(1, -det)})


def tn_expand(gamma, n):
    """T_n(gamma) for a primitive curve gamma, computed by the Chebyshev recursion."""
    p, q = gamma
    if gcd(p, q) != 1:
        raise ValidationError("(%d,%d) is not a primitive curve" % (p, q))
    if n < 0:
        raise ValidationError("negative Chebyshev index")
    g = T2Element.curve(p, q)
    prev, cur = T2Element({(0, 0): ONE}), g
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, g * cur - prev
    return cur


def abelianize(p, q):
    """Class of (p,q)_T in the abelianization: one of (1,0), (0,1), (1,1), (2,0), (0,0)."""
    p, q = int(p), int(q)
    if p == 0 and q == 0:
        return (0, 0)
    return {(1, 0): (1, 0), (0, 1): (0, 1), (1, 1): (1, 1), (0, 0): (2, 0)}[(p % 2, q % 2)]


T3_BASIS = ("empty", (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1), "alpha")


def reduce_t3_curve(p, q, r):
    """The generator of K(T^3) equal to the simple curve of direction (p,q,r)."""
    p, q, r = int(p), int(q), int(r)
    if gcd(gcd(p, q), r) != 1:
        raise ValidationError("(%d,%d,%d) is not primitive" % (p, q, r))
    return (p % 2, q % 2, r % 2)


__all__ = ["T2Element", "fg_product", "tn_expand", "abelianize", "reduce_t3_curve", "canon", "T3_BASIS"]
