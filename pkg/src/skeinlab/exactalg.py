"""Exact Laurent polynomials in A and rational functions over them.

``LaurentPoly`` is a sparse integer Laurent polynomial.  ``RationalFunc``
is an element of Q(A) kept in a reduced canonical form, so equality is a
structural comparison:

* numerator and denominator are coprime integer Laurent polynomials whose
  coefficients share no common integer factor,
* the lowest exponent of the denominator is 0,
* the lowest coefficient of the denominator is positive.

GCDs and exact divisions are delegated to FLINT (``python-flint``).
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import reduce

import flint

from .errors import DivisionByZero, PoleError, ValidationError

INF = math.inf
POLE_TOL = 1e-9


class LaurentPoly:
    """Sparse element of Z[A, A^-1], immutable."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                if c:
                    e = int(e)
                    v = t.get(e, 0) + int(c)
                    if v:
                        t[e] = v
                    else:
                        t.pop(e, None)
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t):
        # t must already be free of zero coefficients
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff, exp):
        return cls._raw({int(exp): int(coeff)} if coeff else {})

    @classmethod
    def const(cls, c):
        return cls.monomial(c, 0)

    # -- inspection -------------------------------------------------------
    def terms(self):
        """Sorted list of (exponent, coefficient), ascending."""
        return sorted(self._t.items())

    def coeff(self, e):
        return self._t.get(e, 0)

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    @property
    def lo(self):
        return min(self._t) if self._t else INF

    @property
    def hi(self):
        return max(self._t) if self._t else -INF

    def is_monomial(self):
        return len(self._t) == 1

    def content(self):
        return reduce(math.gcd, self._t.values(), 0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _as_lp(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._t) > len(self._t):
            self, other = other, self
        t = dict(self._t)
        for e, c in other._t.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                del t[e]
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        other = _as_lp(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_lp(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._t or not other._t:
            return ZERO_LP
        if len(other._t) == 1:
            (e2, c2), = other._t.items()
            return LaurentPoly._raw({e + e2: c * c2 for e, c in self._t.items()})
        if len(self._t) == 1:
            return other * self
        t = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = e1 + e2
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial; use RationalFunc")
        result = ONE_LP
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by A^k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._t.items()})

    def scale(self, c):
        if not c:
            return ZERO_LP
        return LaurentPoly._raw({e: v * c for e, v in self._t.items()})

    def exact_div_int(self, c):
        return LaurentPoly._raw({e: v // c for e, v in self._t.items()})

    def mirror(self):
        return LaurentPoly._raw({-e: c for e, c in self._t.items()})

    def subs_power(self, k):
        """Substitute A -> A^k."""
        return LaurentPoly._raw({e * k: c for e, c in self._t.items()})

    def __eq__(self, other):
        other = _as_lp(other)
        if other is NotImplemented:
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._t.items())))
        return self._hash

    def eval(self, x):
        return sum(c * x ** e for e, c in self._t.items())

    # -- polynomial bridge ------------------------------------------------
    def to_flint(self):
        """Return (shift, fmpz_poly) with self = A^shift * poly(A), poly(0) != 0."""
        lo = self.lo
        coeffs = [0] * (self.hi - lo + 1)
        for e, c in self._t.items():
            coeffs[e - lo] = c
        return lo, flint.fmpz_poly(coeffs)

    @classmethod
    def from_flint(cls, poly, shift=0):
        return cls._raw({i + shift: int(c) for i, c in enumerate(poly.coeffs()) if c})

    def __repr__(self):
        return "LaurentPoly(%s)" % render_laurent(self)

    def __str__(self):
        return render_laurent(self)


def _as_lp(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return NotImplemented


ZERO_LP = LaurentPoly._raw({})
ONE_LP = LaurentPoly._raw({0: 1})
A_LP = LaurentPoly._raw({1: 1})
PHI8 = flint.fmpz_poly([1, 0, 0, 0, 1])  # A^4 + 1


def _reduce(num, den):
    if not den._t:
        raise DivisionByZero("division by the zero rational function")
    if not num._t:
        return ZERO_LP, ONE_LP
    s = den.lo
    if s:
        num, den = num.shift(-s), den.shift(-s)
    if len(den._t) == 1:
        c = den._t[0]
        g = math.gcd(num.content(), c)
        if c < 0:
            g = -g
        if g != 1:
            num, den = num.exact_div_int(g), LaurentPoly._raw({0: c // g})
        return num, den
    ns, np_ = num.to_flint()
    _, dp = den.to_flint()
    g = np_.gcd(dp)
    if g.degree() > 0 or abs(int(g[0])) != 1:
        np_ = np_ // g
        dp = dp // g
    if int(dp[0]) < 0:
        np_, dp = -np_, -dp
    return LaurentPoly.from_flint(np_, ns), LaurentPoly.from_flint(dp)


class RationalFunc:
    """Element of Q(A) in reduced canonical form, immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, _reduced=False):
        num = _coerce_lp(num)
        den = _coerce_lp(den)
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_laurent(cls, p):
        return cls(p, ONE_LP, _reduced=True)

    @classmethod
    def monomial(cls, coeff, exp):
        return cls(LaurentPoly.monomial(coeff, exp), ONE_LP, _reduced=True)

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return not self.num._t

    def __bool__(self):
        return bool(self.num._t)

    def is_laurent(self):
        return self.den._t == {0: 1}

    def as_laurent(self):
        if not self.is_laurent():
            raise ValidationError("not a Laurent polynomial: %s" % self)
        return self.num

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num._t:
            return self
        if not self.num._t:
            return other
        if self.is_laurent() and other.is_laurent():
            return RationalFunc(self.num + other.num, ONE_LP, _reduced=True)
        if self.den == other.den:
            return RationalFunc(self.num + other.num, self.den)
        return RationalFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num._t or not other.num._t:
            return ZERO
        if self.is_laurent() and other.is_laurent():
            return RationalFunc(self.num * other.num, ONE_LP, _reduced=True)
        return RationalFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num._t:
            raise DivisionByZero("inverse of zero")
        return RationalFunc(self.den, self.num)

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num._t:
            raise DivisionByZero("division by the zero rational function")
        return RationalFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_laurent():
            return RationalFunc(self.num ** n, ONE_LP, _reduced=True)
        # coprime powers stay coprime; only the sign normalization may change
        num, den = self.num ** n, self.den ** n
        return RationalFunc(num, den, _reduced=True) if den.coeff(0) > 0 else RationalFunc(-num, -den, _reduced=True)

    def __eq__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- functionals ------------------------------------------------------
    def ord_zero(self):
        if not self.num._t:
            return INF
        return self.num.lo - self.den.lo

    def ord_infty(self):
        if not self.num._t:
            return -INF
        return self.num.hi - self.den.hi

    def breadth(self):
        if not self.num._t:
            return 0
        return self.ord_infty() - self.ord_zero()

    def ord_at_i(self):
        if not self.num._t:
            return INF
        return _phi8_multiplicity(self.num) - _phi8_multiplicity(self.den)

    def mirror(self):
        return RationalFunc(self.num.mirror(), self.den.mirror())

    def eval_complex(self, a):
        a = complex(a)
        d = self.den.eval(a)
        if abs(d) < POLE_TOL:
            raise PoleError("denominator %s vanishes at A=%r" % (self.den, a))
        return self.num.eval(a) / d

    def __repr__(self):
        return "RationalFunc(%s)" % render(self)

    def __str__(self):
        return render(self)


def _coerce_lp(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError("cannot build a Laurent polynomial from %r" % (x,))


def _as_rf(x):
    if isinstance(x, RationalFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunc(x, ONE_LP, _reduced=True)
    if isinstance(x, int):
        return RationalFunc(LaurentPoly.const(x), ONE_LP, _reduced=True)
    if isinstance(x, Fraction):
        return RationalFunc(x.numerator, x.denominator)
    return NotImplemented


def as_rf(x):
    r = _as_rf(x)
    if r is NotImplemented:
        raise TypeError("cannot convert %r to RationalFunc" % (x,))
    return r


def _phi8_multiplicity(p):
    _, poly = p.to_flint()
    k = 0
    while poly.degree() >= 4:
        q, r = divmod(poly, PHI8)
        if r != 0:
            break
        poly = q
        k += 1
    return k


ZERO = RationalFunc(ZERO_LP, ONE_LP, _reduced=True)
ONE = RationalFunc(ONE_LP, ONE_LP, _reduced=True)
A = RationalFunc(A_LP, ONE_LP, _reduced=True)
DELTA = RationalFunc(LaurentPoly({2: -1, -2: -1}), ONE_LP, _reduced=True)


# -- functional API --------------------------------------------------------
def add(a, b):
    return as_rf(a) + as_rf(b)


def sub(a, b):
    return as_rf(a) - as_rf(b)


def mul(a, b):
    return as_rf(a) * as_rf(b)


def div(a, b):
    return as_rf(a) / as_rf(b)


def neg(a):
    return -as_rf(a)


def power(a, n):
    return as_rf(a) ** n


def breadth(f):
    return as_rf(f).breadth()


def ord_zero(f):
    return as_rf(f).ord_zero()


def ord_infty(f):
    return as_rf(f).ord_infty()


def ord_at_i(f):
    return as_rf(f).ord_at_i()


def mirror(f):
    return as_rf(f).mirror()


def eval_complex(f, a):
    return as_rf(f).eval_complex(a)


# -- text form ---------------------------------------------------------------
def _render_term(c, e, first):
    sign = "-" if c < 0 else "+"
    c = abs(c)
    if e == 0:
        body = str(c)
    else:
        var = "A" if e == 1 else "A^%d" % e
        body = var if c == 1 else "%d%s" % (c, var)
    if first:
        return body if sign == "+" else "-" + body
    return " %s %s" % (sign, body)


def render_laurent(p):
    items = sorted(p._t.items(), reverse=True)
    if not items:
        return "0"
    return "".join(_render_term(c, e, i == 0) for i, (e, c) in enumerate(items))


def render(f):
    """Text form: descending exponents; fractions as "(num) / (den)"."""
    f = as_rf(f)
    if f.is_laurent():
        return render_laurent(f.num)
    n, d = render_laurent(f.num), render_laurent(f.den)
    if len(f.num._t) > 1:
        n = "(%s)" % n
    if len(f.den._t) > 1:
        d = "(%s)" % d
    return "%s / %s" % (n, d)


_TOKEN = re.compile(r"\s*(?:(\d+)|(A)|(\^)|(\+)|(-)|(\*)|(/)|(\()|(\)))")


def _tokenize(text):
    text = text.replace("−", "-").replace("·", "*")
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValidationError("cannot parse polynomial near %r" % text[pos:pos + 10])
        kind = m.lastindex
        out.append(("INT", int(m.group(1))) if kind == 1 else (m.group(kind), None))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        tok = self.toks[self.i] if self.i < len(self.toks) else (None, None)
        if kind is not None and tok[0] != kind:
            raise ValidationError("expected %s in polynomial text" % kind)
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        val = self.term()
        val = -val if sign < 0 else val
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            val = val + t if op == "+" else val - t
        return val

    def term(self):
        val = self.factor()
        while self.peek() in ("*", "/", "A", "(", "INT"):
            op = self.peek()
            if op in ("*", "/"):
                self.take()
            rhs = self.factor()
            val = val / rhs if op == "/" else val * rhs
        return val

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() in ("+", "-"):
                sign = -1 if self.take()[0] == "-" else 1
            n = sign * self.take("INT")[1]
            base = base ** n
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "INT":
            return as_rf(val)
        if kind == "A":
            return A
        if kind == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ValidationError("unexpected token %r in polynomial text" % kind)


def parse(text):
    """Parse the text form produced by :func:`render` (and the obvious variants)."""
    toks = _tokenize(text)
    if not toks:
        raise ValidationError("empty polynomial text")
    p = _Parser(toks)
    val = p.expr()
    if p.i != len(toks):
        raise ValidationError("trailing input in polynomial text: %r" % text)
    return val
