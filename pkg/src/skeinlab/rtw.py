"""Evaluation at A = exp(i*pi/2r): Reshetikhin-Turaev-Witten and Turaev-Viro.

Values are complex doubles.  Quantum integers are sine ratios,
[n] = sin(n pi/r) / sin(pi/r).
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

from .errors import ComputationError, DivisionByZero, ValidationError
from .qnum import is_q_admissible, region_phase, tet_parameters, tet_triples
from .shadow import enumerate_colorings, signature

BUILD_TOL = 1e-12
IDENTITY_TOL = 1e-8


class RootContext:
    """Constants for a fixed level r >= 3."""

    def __init__(self, r):
        r = int(r)
        if r < 3:
            raise ValidationError("level r must be at least 3, got %d" % r)
        self.r = r
        self.A = cmath.exp(1j * math.pi / (2 * r))
        self.eta = math.sqrt(2.0 / r) * math.sin(math.pi / r)
        self._qint = [math.sin(n * math.pi / r) / math.sin(math.pi / r) for n in range(2 * r)]
        # Omega-colored unknot whose framing matches a +1 gleam under the
        # region phase convention (-1)^{gc} A^{-gc(c+2)}
        self.kappa = self.eta * sum(
            self.circle(a) ** 2 * (-1) ** a * self.A ** (-a * (a + 2)) for a in range(r - 1)
        )
        self.kappa_gauss = (-1j / math.sqrt(r)) * cmath.exp(-1j * math.pi * (2 * r * r - r + 6) / (4 * r))
        if abs(abs(self.A) - 1) > BUILD_TOL or abs(self.A ** (4 * r) - 1) > BUILD_TOL:
            raise ComputationError("A is not a primitive 4r-th root of unity")
        if abs(self.circle(r - 1)) > 1e-9:
            raise ComputationError("circle(r-1) does not vanish")

    # -- building blocks -----------------------------------------------------------

    def qint(self, n):
        if not 0 <= n < 2 * self.r:
            raise ValidationError("quantum integer index %d out of range" % n)
        return self._qint[n]

    def qfact(self, n):
        return _qfact(self.r, n)

    def circle(self, n):
        return (-1) ** n * self.qint(n + 1)

    def _check(self, a, b, c):
        if not is_q_admissible(a, b, c, self.r):
            raise ValidationError("(%d, %d, %d) is not q-admissible at r = %d" % (a, b, c, self.r))

    def theta(self, a, b, c):
        self._check(a, b, c)
        m = (a + b + c) // 2
        num = self.qfact(m + 1) * self.qfact(m - a) * self.qfact(m - b) * self.qfact(m - c)
        den = self.qfact(a) * self.qfact(b) * self.qfact(c)
        return (-1) ** m * num / _guard(den, "[a]![b]![c]! in theta(%d,%d,%d)" % (a, b, c))

    def tet(self, a, b, c, d, e, f):
        for t in tet_triples(a, b, c, d, e, f):
            self._check(*t)
        tri, sq = tet_parameters(a, b, c, d, e, f)
        pre = 1.0
        for s in sq:
            for t in tri:
                pre *= self.qfact(s - t)
        den = 1.0
        for x in (a, b, c, d, e, f):
            den *= self.qfact(x)
        pre /= _guard(den, "edge factorials in tet")
        total = 0.0
        for z in range(max(tri), min(sq) + 1):
            if z + 1 >= self.r:
                # [z+1]! contains [r] = 0
                continue
            d2 = 1.0
            for t in tri:
                d2 *= self.qfact(z - t)
            for s in sq:
                d2 *= self.qfact(s - z)
            total += (-1) ** z * self.qfact(z + 1) / _guard(d2, "factorials at z=%d in tet" % z)
        return pre * total

    def phase(self, gleam, color):
        return region_phase(gleam, color).to_complex(self.A)


@lru_cache(maxsize=None)
def _qfact(r, n):
    if n < 0:
        raise ValidationError("negative factorial")
    out = 1.0
    s = math.sin(math.pi / r)
    for k in range(2, n + 1):
        out *= math.sin(k * math.pi / r) / s
    return out


def _guard(x, what):
    if abs(x) < BUILD_TOL:
        raise DivisionByZero("vanishing denominator: %s" % what)
    return x


def qint_at(ctx, n):
    return ctx.qint(n)


def circle_at(ctx, n):
    return ctx.circle(n)


def theta_at(ctx, a, b, c):
    return ctx.theta(a, b, c)


def tet_at(ctx, a, b, c, d, e, f):
    return ctx.tet(a, b, c, d, e, f)


# -- shadows -----------------------------------------------------------------------


def coloring_value_at(ctx, x, xi, with_phase=True):
    val = 1.0 + 0j
    for r, c in zip(x.regions, xi):
        if r.chi:
            val *= ctx.circle(c) ** r.chi
        if with_phase and r.gleam:
            val *= ctx.phase(r.gleam, c)
    for s in x.vertices:
        val *= ctx.tet(*(xi[i] for i in s))
    for s in x.boundary_vertices:
        val *= ctx.theta(*(xi[i] for i in s))
    for s, chi in x.edges:
        if chi:
            val /= _guard(ctx.theta(*(xi[i] for i in s)), "theta on an edge")
    for r, chi in x.boundary_edges:
        if chi:
            val /= _guard(ctx.circle(xi[r]), "circle on a boundary edge")
    return val


def state_sum_at(ctx, x, with_phase=True):
    for r in x.regions:
        if r.color is not None and r.color > ctx.r - 2:
            raise ValidationError("boundary color %d exceeds r-2" % r.color)
    terms = [coloring_value_at(ctx, x, xi, with_phase) for xi in enumerate_colorings(x, level=ctx.r)]
    return math.fsum(t.real for t in terms) + 1j * math.fsum(t.imag for t in terms)


def shadow_signature(x):
    return signature(x) if x.incidence is not None else 0


def rtw_from_shadow(ctx, x):
    """kappa^{-sigma} eta^{chi} times the sum over q-admissible colorings."""
    sigma = shadow_signature(x)
    return ctx.kappa ** (-sigma) * ctx.eta ** x.euler_characteristic() * state_sum_at(ctx, x)


def lens_rtw_closed(ctx, n):
    """I_r of the boundary of the disk bundle of Euler number n over S^2."""
    n = int(n)
    if n == 0:
        return 1.0 + 0j
    s = sum(
        ctx.circle(a) ** 2 * (-1) ** (a * n) * ctx.A ** (-a * n * (a + 2)) for a in range(ctx.r - 1)
    )
    sgn = 1 if n > 0 else -1
    return ctx.eta ** 2 * ctx.kappa ** (-sgn) * s


def tv_from_polyhedron(ctx, x):
    """Turaev-Viro state sum of a gleam-free closed simple polyhedron.

    If X is a spine of M minus k balls then chi(X) = k and the gleam-0
    shadow sum is |I_r(M)|^2 / eta^k, so the prefactor is eta^{2 chi}.
    """
    if not x.regions:
        raise ValidationError("empty polyhedron")
    if any(r.gleam for r in x.regions):
        raise ValidationError("Turaev-Viro needs all gleams zero")
    # boundary is tolerated only when it carries the empty link (color 0)
    if x.boundary_vertices or any(r.color not in (None, 0) for r in x.regions):
        raise ValidationError("Turaev-Viro needs a closed polyhedron or a 0-colored boundary")
    if any(x.regions[r].color is None for r, _ in x.boundary_edges):
        raise ValidationError("boundary edges of a Turaev-Viro polyhedron must be 0-colored")
    val = ctx.eta ** (2 * x.euler_characteristic()) * state_sum_at(ctx, x, with_phase=False)
    if abs(val.imag) > IDENTITY_TOL * max(1.0, abs(val)):
        raise ComputationError("Turaev-Viro sum is not real: %r" % val)
    return val.real


def conn_sum_identity_check(ctx, x, y, region_x=0, region_y=0, tol=IDENTITY_TOL):
    from .shadow import connected_sum

    z = connected_sum(x, y, region_x, region_y, 0)
    lhs = rtw_from_shadow(ctx, z)
    rhs = rtw_from_shadow(ctx, x) * rtw_from_shadow(ctx, y) / ctx.eta
    return abs(lhs - rhs) <= tol * max(1.0, abs(rhs))


def format_complex(z, digits=12):
    z = complex(z)
    re, im = z.real, z.imag
    sign = "-" if im < 0 or (im == 0 and math.copysign(1, im) < 0) else "+"
    return "%.*g%s%.*gi" % (digits, re, sign, digits, abs(im))


__all__ = [
    "RootContext", "qint_at", "circle_at", "theta_at", "tet_at", "rtw_from_shadow",
    "lens_rtw_closed", "tv_from_polyhedron", "conn_sum_identity_check", "state_sum_at",
    "coloring_value_at", "format_complex", "shadow_signature",
]
