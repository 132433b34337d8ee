"""Quantum integers and the circle, theta and tetrahedron evaluations.

Everything is expressed in the variable A with q = A^2.  Colors are
non-negative integers; a triple (a, b, c) is admissible when it satisfies
the triangle inequalities and has even sum.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

from .errors import PhaseError, ValidationError
from .exactalg import ONE, LaurentPoly, RationalFunc

# -- admissibility -------------------------------------------------------------


def is_admissible(a, b, c):
    return (
        min(a, b, c) >= 0
        and a <= b + c
        and b <= a + c
        and c <= a + b
        and (a + b + c) % 2 == 0
    )


def is_q_admissible(a, b, c, r):
    return is_admissible(a, b, c) and a + b + c <= 2 * (r - 2)


def _check_triple(a, b, c):
    if not is_admissible(a, b, c):
        raise ValidationError("inadmissible triple (%d, %d, %d)" % (a, b, c))


def angles(a, b, c):
    _check_triple(a, b, c)
    return ((a + b - c) // 2, (b + c - a) // 2, (c + a - b) // 2)


def is_red(a, b, c):
    """At least two of the three angles are odd."""
    return sum(x % 2 for x in angles(a, b, c)) >= 2


# -- quantum integers ------------------------------------------------------------


@lru_cache(maxsize=None)
def qint_laurent(n):
    if n < 0:
        raise ValidationError("quantum integer needs n >= 0, got %d" % n)
    return LaurentPoly({2 * (n - 1) - 4 * k: 1 for k in range(n)})


def qint(n):
    """[n] = (q^n - q^-n)/(q - q^-1) with q = A^2."""
    if n < 1:
        raise ValidationError("qint needs n >= 1, got %d" % n)
    return RationalFunc.from_laurent(qint_laurent(n))


@lru_cache(maxsize=None)
def _qfact_laurent(n):
    if n <= 1:
        return LaurentPoly.const(1)
    return _qfact_laurent(n - 1) * qint_laurent(n)


def qfact(n):
    """[n]! with [0]! = 1."""
    if n < 0:
        raise ValidationError("negative factorial argument %d" % n)
    return RationalFunc.from_laurent(_qfact_laurent(n))


def qmultinomial(ms, ns):
    """prod [m_i]! / prod [n_j]!, requiring sum(ms) == sum(ns)."""
    ms, ns = list(ms), list(ns)
    if sum(ms) != sum(ns):
        raise ValidationError("multinomial needs equal sums, got %s and %s" % (ms, ns))
    return _multinomial(tuple(sorted(ms)), tuple(sorted(ns)))


@lru_cache(maxsize=None)
def _multinomial(ms, ns):
    if min(ms + ns, default=0) < 0:
        raise ValidationError("negative entry in multinomial")
    num = LaurentPoly.const(1)
    for m in ms:
        num = num * _qfact_laurent(m)
    den = LaurentPoly.const(1)
    for n in ns:
        den = den * _qfact_laurent(n)
    return RationalFunc(num, den)


# -- the three building blocks -------------------------------------------------


@lru_cache(maxsize=None)
def circle(n):
    """(-1)^n [n+1], the 0-framed unknot colored n."""
    if n < 0:
        raise ValidationError("negative color %d" % n)
    p = qint_laurent(n + 1)
    return RationalFunc.from_laurent(-p if n % 2 else p)


def theta(a, b, c):
    _check_triple(a, b, c)
    return _theta(*sorted((a, b, c)))


@lru_cache(maxsize=None)
def _theta(a, b, c):
    m = (a + b + c) // 2
    val = qmultinomial([m + 1, m - c, m - a, m - b], [a, b, c, 1])
    return -val if m % 2 else val


def tet_parameters(a, b, c, d, e, f):
    tri = ((a + b + c) // 2, (a + e + f) // 2, (d + b + f) // 2, (d + e + c) // 2)
    sq = ((a + b + d + e) // 2, (a + c + d + f) // 2, (b + c + e + f) // 2)
    return tri, sq


def tet_triples(a, b, c, d, e, f):
    return ((a, b, c), (a, e, f), (d, b, f), (d, e, c))


def tet(a, b, c, d, e, f):
    """Tetrahedron with vertex triples (a,b,c), (a,e,f), (d,b,f), (d,e,c)."""
    for t in tet_triples(a, b, c, d, e, f):
        _check_triple(*t)
    return _tet(a, b, c, d, e, f)


@lru_cache(maxsize=None)
def _tet(a, b, c, d, e, f):
    tri, sq = tet_parameters(a, b, c, d, e, f)
    pre = qmultinomial([s - t for s in sq for t in tri], [a, b, c, d, e, f])
    total = RationalFunc()
    for z in range(max(tri), min(sq) + 1):
        term = qmultinomial([z + 1], [z - t for t in tri] + [s - z for s in sq] + [1])
        total = total - term if z % 2 else total + term
    return pre * total


def sixj(a, b, c, d, i, j):
    """Recoupling coefficient {a b i; c d j}.

    Defined as circle(i) * tet / (theta(a,d,i) * theta(c,b,i)), where the
    tetrahedron has the triples (a,d,i), (c,b,i), (a,b,j), (c,d,j) at its
    vertices.
    """
    for t in ((a, d, i), (c, b, i), (a, b, j), (c, d, j)):
        _check_triple(*t)
    # vertex triples of tet(x1..x6): (x1,x2,x3) (x1,x5,x6) (x4,x2,x6) (x4,x5,x3)
    t = tet(i, a, d, j, c, b)
    return circle(i) * t / (theta(a, d, i) * theta(c, b, i))


def fusion_coefficient(a, b, c):
    """circle(c)/theta(a,b,c): weight of color c when fusing strands a and b."""
    return circle(c) / theta(a, b, c)


# -- framing phases ------------------------------------------------------------


class Phase:
    """i^tag * A^exp, with exp allowed to be a half-integer.

    Products of phases are formed freely; conversion to a rational function
    fails if a fourth root of unity or a half power of A is left over.
    """

    __slots__ = ("tag", "exp")

    def __init__(self, tag=0, exp=0):
        self.tag = int(tag) % 4
        self.exp = Fraction(exp)

    def __mul__(self, other):
        return Phase(self.tag + other.tag, self.exp + other.exp)

    def inverse(self):
        return Phase(-self.tag, -self.exp)

    def __eq__(self, other):
        return isinstance(other, Phase) and (self.tag, self.exp) == (other.tag, other.exp)

    def __hash__(self):
        return hash((self.tag, self.exp))

    def is_resolved(self):
        return self.tag % 2 == 0 and self.exp.denominator == 1

    def to_rational(self):
        if not self.is_resolved():
            raise PhaseError("unresolved phase i^%d A^%s" % (self.tag, self.exp))
        return RationalFunc.monomial(-1 if self.tag == 2 else 1, int(self.exp))

    def to_complex(self, a):
        """Numeric value with A^(1/2) taken as exp(i*arg(A)/2)."""
        a = complex(a)
        return (1j ** self.tag) * cmath.exp(complex(self.exp) * cmath.log(a))

    def __repr__(self):
        return "Phase(i^%d A^%s)" % (self.tag, self.exp)


def full_twist_phase(n, k):
    """Factor for adding k (k in Z/2) positive twists to a strand colored n.

    A half twist contributes i^n A^{n(n+2)/2}, so k twists give
    i^{2kn} A^{kn(n+2)}; for integer k this is (-1)^{kn} A^{kn(n+2)}.
    """
    k = Fraction(k)
    if (2 * k).denominator != 1:
        raise ValidationError("number of twists must be a half-integer, got %s" % k)
    return Phase(int(2 * k * n) % 4, k * n * (n + 2))


def region_phase(gleam, color):
    """A_f = (-1)^{gc} A^{-gc(c+2)}, with (-1)^{1/2} read as i."""
    return full_twist_phase(color, -Fraction(gleam))


# -- orders at q = i -----------------------------------------------------------


def ord_i_qint(n):
    if n < 1:
        raise ValidationError("ord_i_qint needs n >= 1")
    return 1 if n % 2 == 0 else 0


def ord_i_qfact(n):
    if n < 0:
        raise ValidationError("negative factorial argument %d" % n)
    return n // 2


def ord_i_multinomial(ms, ns):
    ms, ns = list(ms), list(ns)
    if sum(ms) != sum(ns):
        raise ValidationError("multinomial needs equal sums")
    odd_n = sum(1 for x in ns if x % 2)
    odd_m = sum(1 for x in ms if x % 2)
    return odd_n // 2 - odd_m // 2


__all__ = [
    "ONE", "Phase", "angles", "circle", "fusion_coefficient", "full_twist_phase",
    "is_admissible", "is_q_admissible", "is_red", "ord_i_multinomial", "ord_i_qfact",
    "ord_i_qint", "qfact", "qint", "qmultinomial", "region_phase", "sixj", "tet",
    "tet_parameters", "tet_triples", "theta",
]
