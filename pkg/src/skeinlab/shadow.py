"""Shadow polyhedra and their evaluation.

A shadow is stored combinatorially: regions carry an Euler characteristic,
a (half-)integer gleam and optionally a fixed boundary color; interior edges
list their three incident region slots; interior vertices list six slots in
the order used by :func:`skeinlab.qnum.tet`, i.e. the tetrahedron whose
vertex triples are (s0,s1,s2), (s0,s4,s5), (s3,s1,s5), (s3,s4,s2).
Boundary edges name one region; boundary vertices name three.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

import flint

from .errors import BoundExhausted, ValidationError
from .exactalg import ONE, RationalFunc
from .linalg import signature as _signature
from .qnum import Phase, circle, is_admissible, is_q_admissible, is_red, region_phase, tet, theta

COLOR_CAP = int(os.environ.get("SKEINLAB_COLOR_CAP", "12"))


@dataclass
class ShadowRegion:
    chi: int
    gleam: Fraction = Fraction(0)
    color: int | None = None
    name: str = ""


@dataclass
class Shadow:
    regions: list
    edges: list = field(default_factory=list)          # (slots, chi)
    vertices: list = field(default_factory=list)       # six slots
    boundary_edges: list = field(default_factory=list)  # (region, chi)
    boundary_vertices: list = field(default_factory=list)  # three slots
    incidence: list | None = None                      # rows: regions, cols: edges
    declared_chi: int | None = None

    def __post_init__(self):
        n = len(self.regions)
        for r in self.regions:
            if r.chi > 2:
                raise ValidationError("region Euler characteristic must be at most 2")
            if r.color is not None and r.color < 0:
                raise ValidationError("negative boundary color")
            if (2 * r.gleam).denominator != 1:
                raise ValidationError("gleams must be half-integers")
        for slots, chi in self.edges:
            if len(slots) != 3 or chi not in (0, 1):
                raise ValidationError("an edge has three region slots and chi 0 or 1")
            _check_slots(slots, n)
        for slots in self.vertices:
            if len(slots) != 6:
                raise ValidationError("a vertex has six region slots")
            _check_slots(slots, n)
        for r, chi in self.boundary_edges:
            _check_slots([r], n)
            if chi not in (0, 1):
                raise ValidationError("boundary edge chi must be 0 or 1")
        for slots in self.boundary_vertices:
            if len(slots) != 3:
                raise ValidationError("a boundary vertex has three region slots")
            _check_slots(slots, n)
        if self.incidence is not None:
            if len(self.incidence) != n or any(len(row) != len(self.edges) for row in self.incidence):
                raise ValidationError("incidence must have one row per region and one column per edge")
        if self.declared_chi is not None and self.declared_chi != self.euler_characteristic():
            raise ValidationError(
                "declared chi %d differs from the recount %d" % (self.declared_chi, self.euler_characteristic())
            )

    # -- json ------------------------------------------------------------------

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        try:
            regions = [
                ShadowRegion(int(r["chi"]), Fraction(str(r.get("gleam", 0))), r.get("color"), r.get("name", ""))
                for r in data["regions"]
            ]
            edges = [(tuple(e["regions"]), int(e.get("chi", 1))) for e in data.get("edges", [])]
            vertices = [tuple(v["regions"] if isinstance(v, dict) else v) for v in data.get("vertices", [])]
            bd = data.get("boundary", {})
            bedges = [(int(e["region"]), int(e.get("chi", 0))) for e in bd.get("edges", [])]
            bverts = [tuple(v["regions"] if isinstance(v, dict) else v) for v in bd.get("vertices", [])]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValidationError("malformed shadow: %s" % exc) from None
        return cls(regions, edges, vertices, bedges, bverts, data.get("incidence"), data.get("chi"))

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            try:
                return cls.from_json(json.load(fh))
            except json.JSONDecodeError as exc:
                raise ValidationError("%s: %s" % (path, exc)) from None

    def to_json(self):
        out = {
            "regions": [_region_json(r) for r in self.regions],
            "edges": [{"regions": list(s), "chi": c} for s, c in self.edges],
            "vertices": [{"regions": list(s)} for s in self.vertices],
            "boundary": {
                "edges": [{"region": r, "chi": c} for r, c in self.boundary_edges],
                "vertices": [{"regions": list(s)} for s in self.boundary_vertices],
            },
        }
        if self.incidence is not None:
            out["incidence"] = [list(r) for r in self.incidence]
        return out

    # -- structure -------------------------------------------------------------

    def euler_characteristic(self):
        return (
            len(self.vertices)
            - sum(c for _, c in self.edges)
            + sum(r.chi for r in self.regions)
        )

    def region_index(self, key):
        if isinstance(key, int) and 0 <= key < len(self.regions):
            return key
        for i, r in enumerate(self.regions):
            if r.name and r.name == key:
                return i
        raise ValidationError("no region %r" % (key,))


def _region_json(r):
    out = {"chi": r.chi, "gleam": str(r.gleam)}
    if r.color is not None:
        out["color"] = r.color
    if r.name:
        out["name"] = r.name
    return out


def _check_slots(slots, n):
    for s in slots:
        if not isinstance(s, int) or not 0 <= s < n:
            raise ValidationError("region slot %r out of range" % (s,))


# -- colorings -------------------------------------------------------------------


def _constraints(x):
    """Triples that must be admissible: interior edges and boundary vertices."""
    cons = [tuple(s) for s, _ in x.edges] + [tuple(s) for s in x.boundary_vertices]
    for v in x.vertices:
        a, b, c, d, e, f = v
        cons += [(a, b, c), (a, e, f), (d, b, f), (d, e, c)]
    return cons


def enumerate_colorings(x, max_color=None, level=None):
    """All admissible colorings with every color at most max_color.

    Reaching max_color means the enumeration was truncated (the shadow is
    probably not collapsible), so that raises BoundExhausted.  With
    ``level=r`` the colorings are the q-admissible ones (colors <= r-2) and
    the list is complete by definition.
    """
    if level is not None:
        cap = level - 2
        ok = lambda a, b, c: is_q_admissible(a, b, c, level)  # noqa: E731
    else:
        cap = COLOR_CAP if max_color is None else int(max_color)
        ok = is_admissible
    n = len(x.regions)
    cons = _constraints(x)
    touching = [[] for _ in range(n)]
    for k, t in enumerate(cons):
        for s in set(t):
            touching[s].append(k)
    # fixed colors first, then breadth-first along constraints
    order = [i for i in range(n) if x.regions[i].color is not None]
    placed = set(order)
    queue = list(order)
    while len(order) < n:
        if not queue:
            nxt = next(i for i in range(n) if i not in placed)
            order.append(nxt)
            placed.add(nxt)
            queue.append(nxt)
        u = queue.pop(0)
        for k in touching[u]:
            for s in cons[k]:
                if s not in placed:
                    placed.add(s)
                    order.append(s)
                    queue.append(s)
    pos = {r: i for i, r in enumerate(order)}
    # a constraint is checked when its last slot (in order) is assigned
    due = [[] for _ in range(n)]
    for t in cons:
        due[max(pos[s] for s in t)].append(t)

    col = [None] * n
    out = []

    def candidates(r):
        fixed = x.regions[r].color
        if fixed is not None:
            return [fixed] if fixed <= cap else []
        best = None
        for t in cons_of[r]:
            others = [s for s in t if s != r]
            if len(others) != 2 or col[others[0]] is None or col[others[1]] is None:
                continue
            a, b = col[others[0]], col[others[1]]
            rng = set(range(abs(a - b), min(a + b, cap) + 1, 2))
            best = rng if best is None else best & rng
        if best is None:
            return range(cap + 1)
        return sorted(best)

    cons_of = [[cons[k] for k in touching[r]] for r in range(n)]

    def rec(i):
        if i == n:
            out.append(tuple(col))
            return
        r = order[i]
        for c in candidates(r):
            col[r] = c
            if all(ok(*(col[s] for s in t)) for t in due[i]):
                rec(i + 1)
        col[r] = None

    rec(0)
    if level is not None:
        return out
    for c in out:
        for r, v in enumerate(c):
            if v >= cap and x.regions[r].color is None:
                raise BoundExhausted(
                    "coloring reached the cap %d on region %d; the shadow may not collapse onto a graph" % (cap, r),
                    region=r,
                )
    return out


# -- evaluation ------------------------------------------------------------------


def coloring_value(x, xi):
    """<X>_xi as an exact rational function."""
    num = ONE
    den = ONE
    ph = Phase()
    for r, c in zip(x.regions, xi):
        if r.chi:
            num = num * circle(c) ** r.chi
        if r.gleam:
            ph = ph * region_phase(r.gleam, c)
    for s in x.vertices:
        num = num * tet(*(xi[i] for i in s))
    for s in x.boundary_vertices:
        num = num * theta(*(xi[i] for i in s))
    for s, chi in x.edges:
        if chi:
            den = den * theta(*(xi[i] for i in s))
    for r, chi in x.boundary_edges:
        if chi:
            den = den * circle(xi[r])
    return num / den * ph.to_rational()


def coloring_phase(x, xi):
    ph = Phase()
    for r, c in zip(x.regions, xi):
        if r.gleam:
            ph = ph * region_phase(r.gleam, c)
    return ph


def shadow_eval_q(x, max_color=None):
    total = RationalFunc()
    for xi in enumerate_colorings(x, max_color):
        total = total + coloring_value(x, xi)
    return total


# -- odd surface and the order bound ----------------------------------------------


def odd_surface(x, xi):
    """(chi(S_xi), odd regions); a stratum lies on S_xi when it meets an odd region."""
    odd = {i for i, c in enumerate(xi) if c % 2}
    chi = sum(x.regions[i].chi for i in odd)
    for s, c in x.edges:
        if any(i in odd for i in s):
            chi -= c
    for r, c in x.boundary_edges:
        if r in odd:
            chi -= c
    for s in x.vertices:
        if any(i in odd for i in s):
            chi += 1
    for s in x.boundary_vertices:
        if any(i in odd for i in s):
            chi += 1
    return chi, sorted(odd)


def red_boundary_vertices(x, xi):
    return sum(1 for s in x.boundary_vertices if is_red(*(xi[i] for i in s)))


def order_theorem_check(x, xi):
    """ord_i <X>_xi >= chi(S_xi) - r/2, r the red boundary vertices."""
    val = coloring_value(x, xi)
    if not val:
        return True
    chi, _ = odd_surface(x, xi)
    return 2 * val.ord_at_i() >= 2 * chi - red_boundary_vertices(x, xi)


# -- homology ----------------------------------------------------------------------


def h2_basis(x):
    """Z-basis of the kernel of the region -> edge incidence map."""
    if x.incidence is None:
        raise ValidationError("the intersection form needs a signed incidence matrix")
    n, m = len(x.regions), len(x.edges)
    if n == 0:
        return []
    rows = [list(x.incidence[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    h = flint.fmpz_mat(rows).hnf().tolist()
    return [[int(v) for v in row[m:]] for row in h if all(v == 0 for v in row[:m]) and any(row[m:])]


def intersection_form(x):
    basis = h2_basis(x)
    gl = [r.gleam for r in x.regions]
    return [[sum(a * b * g for a, b, g in zip(h1, h2, gl)) for h2 in basis] for h1 in basis]


def signature(x):
    q = intersection_form(x)
    return _signature(q) if q else 0


# -- constructions ------------------------------------------------------------------


def from_splitting(sp):
    """The shadow X_s: the holed surface with an annulus glued along each loop."""
    regions = []
    for k, r in enumerate(sp.regions):
        regions.append(ShadowRegion(r.chi, Fraction(0), 0 if r.h else None, "R%d" % k))
    edges, bedges = [], []
    for k, l in enumerate(sp.loops):
        a = len(regions)
        regions.append(ShadowRegion(0, Fraction(0), 1, "ann%d" % k))
        edges.append(((l.sides[0], l.sides[1], a), 0))
        bedges.append((a, 0))
    for k, r in enumerate(sp.regions):
        for _ in r.holes:
            bedges.append((k, 0))
    inc = [[0] * len(edges) for _ in regions]
    for j, ((a, b, c), _) in enumerate(edges):
        inc[a][j] += 1
        inc[b][j] -= 1
        inc[c][j] += 1
    return Shadow(regions, edges, [], bedges, [], inc)


def sphere(gleam=0, color=None):
    """A closed 2-sphere region (not collapsible unless colored)."""
    return Shadow([ShadowRegion(2, Fraction(gleam), color, "S")], incidence=[[]])


def disk(gleam=0, color=1):
    return Shadow([ShadowRegion(1, Fraction(gleam), color, "D")], [], [], [(0, 0)], [], [[]])


def holed_disk(g=0, gleam=0):
    """Disk with g holes and 0-colored boundary: a shadow of the boundary sum of g copies of S^1 x D^3."""
    if g < 0:
        raise ValidationError("negative number of holes")
    return Shadow([ShadowRegion(1 - g, Fraction(gleam), 0, "S_g")], [], [], [(0, 0)] * (g + 1), [], [[]])


def _copy_region(r):
    return ShadowRegion(r.chi, r.gleam, r.color, r.name)


def connected_sum(x, y, region_x, region_y, attach_gleam=0):
    """Glue along a disk inside region_x and region_y.

    The two regions are punctured (chi drops by one), a new disk region of
    gleam k is attached along a circle edge shared with both, and the two
    punctured regions keep gleams gl - k.
    """
    rx, ry = x.region_index(region_x), y.region_index(region_y)
    k = Fraction(attach_gleam)
    off = len(x.regions)
    regions = [_copy_region(r) for r in x.regions] + [_copy_region(r) for r in y.regions]
    regions[rx].chi -= 1
    regions[off + ry].chi -= 1
    regions[rx].gleam -= k
    regions[off + ry].gleam -= k
    disk_r = ShadowRegion(1, k, None, "join")
    regions.append(disk_r)
    dj = len(regions) - 1

    def shift(s, o):
        return tuple(i + o for i in s)

    edges = [(tuple(s), c) for s, c in x.edges] + [(shift(s, off), c) for s, c in y.edges]
    edges.append(((rx, off + ry, dj), 0))
    vertices = [tuple(s) for s in x.vertices] + [shift(s, off) for s in y.vertices]
    bedges = list(x.boundary_edges) + [(r + off, c) for r, c in y.boundary_edges]
    bverts = [tuple(s) for s in x.boundary_vertices] + [shift(s, off) for s in y.boundary_vertices]
    inc = None
    if x.incidence is not None and y.incidence is not None:
        inc = _sum_incidence(x, y, rx, ry, dj)
    return Shadow(regions, edges, vertices, bedges, bverts, inc)


def _sum_incidence(x, y, rx, ry, dj):
    mx, my = len(x.edges), len(y.edges)
    n = len(x.regions) + len(y.regions) + 1
    off = len(x.regions)
    inc = [[0] * (mx + my + 1) for _ in range(n)]
    for i, row in enumerate(x.incidence):
        inc[i][:mx] = list(row)
    for i, row in enumerate(y.incidence):
        inc[off + i][mx:mx + my] = list(row)
    # a class through R_x (or R_y) continues over the disk with the same coefficient
    inc[rx][-1] = 1
    inc[off + ry][-1] = 1
    inc[dj][-1] = -1
    return inc


def bubble_move(x, region, kind=0):
    """Connected sum with a 2-sphere of gleam 0 or +-1 inside `region`."""
    if kind not in (0, 1, -1):
        raise ValidationError("bubble kind must be 0, +1 or -1")
    return connected_sum(x, sphere(kind), region, 0, 0)


__all__ = [
    "Shadow", "ShadowRegion", "enumerate_colorings", "coloring_value", "shadow_eval_q",
    "odd_surface", "order_theorem_check", "red_boundary_vertices", "h2_basis",
    "intersection_form", "signature", "from_splitting", "sphere", "disk", "holed_disk", "connected_sum",
    "bubble_move", "coloring_phase", "COLOR_CAP",
]
