"""Temperley-Lieb algebras over Q(A), Jones-Wenzl projectors and the
Chebyshev basis of the annulus skein.

A basis diagram of TL_n is a non-crossing perfect matching of 2n points:
top points are 0..n-1 (left to right) and bottom points are n..2n-1
(bottom point i is n+i).  ``x * y`` places x above y.
"""

from __future__ import annotations

import os
from functools import lru_cache

from .errors import CapExceeded, ValidationError
from .exactalg import DELTA, ONE, RationalFunc, as_rf
from .qnum import circle

ARITY_CAP = int(os.environ.get("SKEINLAB_TL_CAP", "8"))


class PlanarMatching:
    """A non-crossing pairing of the 2n boundary points of a TL_n diagram."""

    __slots__ = ("n", "pairs")

    def __init__(self, n, pairs):
        pairs = tuple(pairs)
        if len(pairs) != 2 * n or any(pairs[pairs[i]] != i or pairs[i] == i for i in range(2 * n)):
            raise ValidationError("not a perfect matching of %d points: %r" % (2 * n, pairs))
        self.n = n
        self.pairs = pairs
        if not _non_crossing(n, pairs):
            raise ValidationError("matching %r is not planar" % (pairs,))

    @classmethod
    def identity(cls, n):
        return cls(n, [i + n for i in range(n)] + list(range(n)))

    @classmethod
    def generator(cls, n, i):
        """e_i for 1 <= i <= n-1: cups joining strands i-1 and i at top and bottom."""
        if not 1 <= i <= n - 1:
            raise ValidationError("e_%d does not exist in TL_%d" % (i, n))
        p = [k + n for k in range(n)] + list(range(n))
        a, b = i - 1, i
        p[a], p[b] = b, a
        p[n + a], p[n + b] = n + b, n + a
        return cls(n, p)

    def __eq__(self, other):
        return isinstance(other, PlanarMatching) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        return "PlanarMatching(%d, %r)" % (self.n, self.pairs)


def _non_crossing(n, pairs):
    # position of each point on the boundary circle: top left-to-right, then bottom right-to-left
    pos = list(range(n)) + [2 * n - 1 - i for i in range(n)]
    chords = [(min(pos[i], pos[j]), max(pos[i], pos[j])) for i, j in enumerate(pairs) if i < j]
    for a, b in chords:
        for c, d in chords:
            if a < c < b < d:
                return False
    return True


def compose(x, y):
    """Stack x above y; return (matching, number of closed loops)."""
    n = x.n
    # glue point m joins x's bottom point n+m with y's top point m
    result = [None] * (2 * n)
    seen = [False] * n
    for start in range(2 * n):
        if result[start] is not None:
            continue
        on_x, p = start < n, start
        while True:
            q = (x if on_x else y).pairs[p]
            if on_x and q < n or not on_x and q >= n:
                break
            m = q - n if on_x else q
            seen[m] = True
            on_x, p = not on_x, (m if on_x else m + n)
        result[start], result[q] = q, start
    loops = 0
    for m in range(n):
        if seen[m]:
            continue
        loops += 1
        cur = m
        while not seen[cur]:
            seen[cur] = True
            other = y.pairs[cur]          # y top -> y top
            seen[other] = True
            cur = x.pairs[other + n] - n  # x bottom -> x bottom
    return PlanarMatching(n, result), loops


class TLElement:
    """Linear combination of planar matchings with Q(A) coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        if n > ARITY_CAP:
            raise CapExceeded("TL arity %d exceeds cap %d" % (n, ARITY_CAP))
        self.n = n
        t = {}
        for m, c in (terms or {}).items():
            if m.n != n:
                raise ValidationError("matching of arity %d in TL_%d" % (m.n, n))
            c = as_rf(c)
            v = t.get(m, RationalFunc()) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        self.terms = t

    @classmethod
    def one(cls, n):
        return cls(n, {PlanarMatching.identity(n): ONE})

    @classmethod
    def e(cls, n, i):
        return cls(n, {PlanarMatching.generator(n, i): ONE})

    def __add__(self, other):
        _same_arity(self, other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return TLElement(self.n, {m: c for m, c in t.items() if c})

    def __neg__(self):
        return TLElement(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_rf(c)
        return TLElement(self.n, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TLElement):
            return self.scale(other)
        return tl_mul(self, other)

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, TLElement) and self.n == other.n and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def tensor_id(self):
        """Add one vertical strand on the right."""
        n = self.n
        out = {}
        for m, c in self.terms.items():
            p = []
            for i, j in enumerate(m.pairs):
                # old top i -> new top i, old bottom n+i -> new bottom n+1+i
                p.append(_shift_point(j, n))
            p = p[:n] + [2 * n + 1] + p[n:] + [n]
            out[PlanarMatching(n + 1, p)] = c
        return TLElement(n + 1, out)

    def __repr__(self):
        return "TLElement(%d, %d terms)" % (self.n, len(self.terms))


def _shift_point(j, n):
    return j if j < n else j + 1


def _same_arity(x, y):
    if x.n != y.n:
        raise ValidationError("arity mismatch: TL_%d vs TL_%d" % (x.n, y.n))


def tl_mul(x, y):
    """Product in TL_n: x stacked on y, each closed loop worth -A^2-A^-2."""
    _same_arity(x, y)
    acc = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            m, loops = compose(m1, m2)
            c = c1 * c2 * DELTA ** loops if loops else c1 * c2
            acc[m] = acc[m] + c if m in acc else c
    return TLElement(x.n, {m: c for m, c in acc.items() if c})


def closure_loops(m):
    """Number of loops after closing top point i to bottom point i."""
    n = m.n
    seen = [False] * (2 * n)
    loops = 0
    for s in range(2 * n):
        if seen[s]:
            continue
        loops += 1
        p = s
        while not seen[p]:
            seen[p] = True
            q = m.pairs[p]
            seen[q] = True
            p = q + n if q < n else q - n
    return loops


def trace_closure(x):
    total = RationalFunc()
    for m, c in x.terms.items():
        total = total + c * DELTA ** closure_loops(m)
    return total


@lru_cache(maxsize=None)
def jones_wenzl(n):
    """f^(n) via f^(n) = f^(n-1) - (circle(n-2)/circle(n-1)) f^(n-1) e_{n-1} f^(n-1)."""
    if n < 0:
        raise ValidationError("negative projector index")
    if n == 0:
        return TLElement(0, {PlanarMatching(0, ()): ONE})
    if n == 1:
        return TLElement.one(1)
    f = jones_wenzl(n - 1).tensor_id()
    coeff = circle(n - 2) / circle(n - 1)
    return f - tl_mul(tl_mul(f, TLElement.e(n, n - 1)), f).scale(coeff)


# -- annulus skein ---------------------------------------------------------------


@lru_cache(maxsize=None)
def colored_core_expand(n):
    """Chebyshev y_n as ascending integer coefficients in x: y0=1, y1=x, y_{k+1}=x y_k - y_{k-1}."""
    if n < 0:
        raise ValidationError("negative color")
    prev, cur = (1,), (0, 1)
    if n == 0:
        return prev
    for _ in range(n - 1):
        nxt = [0] + list(cur)
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, tuple(nxt)
    return cur


def eval_poly(coeffs, x):
    return sum(c * x ** i for i, c in enumerate(coeffs))


def power_in_chebyshev(k):
    """Coefficients of x^k in the basis y_0..y_k (x * y_j = y_{j+1} + y_{j-1})."""
    v = [1]
    for _ in range(k):
        w = [0] * (len(v) + 1)
        for j, c in enumerate(v):
            if c:
                w[j + 1] += c
                if j > 0:
                    w[j - 1] += c
        v = w
    return v


def annulus_parallel_cores(k):
    """Bracket in S^1 x S^2 of k parallel 0-framed cores: the y_0 coefficient of x^k."""
    if k < 0:
        raise ValidationError("negative number of cores")
    return as_rf(power_in_chebyshev(k)[0])
