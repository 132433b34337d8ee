"""Framed 2-tangles: reduction to the two crossingless tangles and the Conway number.

A tangle lives in a square with boundary points NW, NE, SW, SE.  The
0-tangle has arcs NW-SW and NE-SE, the infinity tangle has arcs NW-NE and
SW-SE.  Tangles are multiplied by stacking, top over bottom, which adds
Conway numbers; the closure joins NW to SW and NE to SE.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .diagram import Diagram, _smoothing_pairs, _UF
from .errors import ComputationError, ValidationError
from .exactalg import DELTA, RationalFunc, as_rf

ENDS = ("NW", "NE", "SE", "SW")  # clockwise around the square


def _dart(x):
    if isinstance(x, str):
        if x not in ENDS:
            raise ValidationError("unknown boundary point %r" % x)
        return (x, 0)
    v, p = x
    if isinstance(v, str):
        return _dart(v)
    return (int(v), int(p))


class TangleDiagram:
    def __init__(self, crossings, markers, edges):
        self.over = {}
        for c in crossings:
            cid = int(c["id"]) if isinstance(c, dict) else int(c[0])
            ov = sorted(c["over_ports"] if isinstance(c, dict) else c[1])
            if ov not in ([0, 2], [1, 3]) or cid in self.over:
                raise ValidationError("bad crossing %r" % (c,))
            self.over[cid] = ov[0]
        self.markers = sorted(int(m) for m in markers)
        self.degree = {v: 4 for v in self.over}
        for m in self.markers:
            if m in self.degree:
                raise ValidationError("duplicate vertex id %d" % m)
            self.degree[m] = 2
        for e in ENDS:
            self.degree[e] = 1
        self.partner = {}
        self.edges = []
        for e in edges:
            try:
                a, b = _dart(e[0]), _dart(e[1])
            except (TypeError, ValueError, IndexError):
                raise ValidationError("malformed edge %r" % (e,)) from None
            for d in (a, b):
                if d[0] not in self.degree or not 0 <= d[1] < self.degree[d[0]] or d in self.partner:
                    raise ValidationError("edge %r uses a bad or repeated dart %r" % (e, d))
            if a == b:
                raise ValidationError("edge joins a dart to itself")
            self.partner[a], self.partner[b] = b, a
            self.edges.append((a, b))
        darts = [(v, p) for v in self.degree for p in range(self.degree[v])]
        if len(self.partner) != len(darts):
            raise ValidationError("every dart, including the four boundary points, must be used once")
        self._check_planar()

    @property
    def crossings(self):
        return sorted(self.over)

    def _check_planar(self):
        # cone the boundary to one vertex at infinity; seen from there the
        # boundary points run counterclockwise as NW, NE, SE, SW
        deg = {v: d for v, d in self.degree.items() if v not in ENDS}
        deg["inf"] = 4
        key = {e: ("inf", i) for i, e in enumerate(ENDS)}

        def conv(d):
            return key.get(d[0], d)

        part = {conv(a): conv(b) for a, b in self.partner.items()}
        names = sorted(deg, key=str)
        idx = {v: i for i, v in enumerate(names)}
        uf = _UF(len(names))
        for a, b in part.items():
            uf.union(idx[a[0]], idx[b[0]])
        seen = set()
        faces = {}
        for v in deg:
            for p in range(deg[v]):
                d = (v, p)
                if d in seen:
                    continue
                root = uf.find(idx[v])
                faces[root] = faces.get(root, 0) + 1
                while d not in seen:
                    seen.add(d)
                    w, q = part[d]
                    d = (w, (q - 1) % deg[w])
        for root, f in faces.items():
            vs = sum(1 for v in deg if uf.find(idx[v]) == root)
            es = sum(deg[v] for v in deg if uf.find(idx[v]) == root) // 2
            if vs - es + f != 2:
                raise ValidationError("tangle diagram is not planar in the square")

    # -- io ----------------------------------------------------------------------

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        try:
            return cls(data.get("crossings", []), data.get("markers", []), data["edges"])
        except (KeyError, AttributeError) as exc:
            raise ValidationError("malformed tangle: %s" % exc) from None

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            try:
                return cls.from_json(json.load(fh))
            except json.JSONDecodeError as exc:
                raise ValidationError("%s: %s" % (path, exc)) from None

    def to_json(self):
        def out(d):
            return d[0] if isinstance(d[0], str) else list(d)

        return {
            "crossings": [{"id": c, "over_ports": [self.over[c], self.over[c] + 2]} for c in self.crossings],
            "markers": list(self.markers),
            "edges": [[out(a), out(b)] for a, b in self.edges],
        }

    # -- constructions --------------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls([], [], [["NW", "SW"], ["NE", "SE"]])

    @classmethod
    def infinity(cls):
        return cls([], [], [["NW", "NE"], ["SW", "SE"]])

    @classmethod
    def crossing(cls, sign=1):
        """Ports SW, SE, NE, NW; the sign +1 crossing has its overstrand SW-NE."""
        ov = [0, 2] if sign > 0 else [1, 3]
        return cls([{"id": 0, "over_ports": ov}], [],
                   [["SW", [0, 0]], ["SE", [0, 1]], ["NE", [0, 2]], ["NW", [0, 3]]])

    def _relabelled(self, offset, ends):
        """Edges with vertex ids shifted and boundary names mapped by `ends`."""
        def f(d):
            return (ends[d[0]], 0) if isinstance(d[0], str) else (d[0] + offset, d[1])

        return [(f(a), f(b)) for a, b in self.edges]

    def rotate(self):
        """Quarter turn counterclockwise: NW -> SW -> SE -> NE -> NW."""
        ends = {"NW": "SW", "SW": "SE", "SE": "NE", "NE": "NW"}
        cr = [{"id": c, "over_ports": [self.over[c], self.over[c] + 2]} for c in self.crossings]
        return TangleDiagram(cr, self.markers, self._relabelled(0, ends))

    def mirror(self):
        cr = [{"id": c, "over_ports": [1 - self.over[c], 3 - self.over[c]]} for c in self.crossings]
        return TangleDiagram(cr, self.markers, self.edges)

    def _max_id(self):
        ids = list(self.over) + self.markers
        return max(ids) + 1 if ids else 0


def stack(top, bottom):
    """top over bottom: top's SW, SE meet bottom's NW, NE through two new markers."""
    off = top._max_id()
    m1 = off + bottom._max_id()
    m2 = m1 + 1
    e1 = top._relabelled(0, {"NW": "NW", "NE": "NE", "SW": "_a", "SE": "_b"})
    e2 = bottom._relabelled(off, {"NW": "_c", "NE": "_d", "SW": "SW", "SE": "SE"})
    glue = {("_a", 0): (m1, 0), ("_c", 0): (m1, 1), ("_b", 0): (m2, 0), ("_d", 0): (m2, 1)}
    edges = [(glue.get(a, a), glue.get(b, b)) for a, b in e1 + e2]
    crossings = [{"id": c, "over_ports": [top.over[c], top.over[c] + 2]} for c in top.crossings]
    crossings += [{"id": c + off, "over_ports": [bottom.over[c], bottom.over[c] + 2]} for c in bottom.crossings]
    markers = top.markers + [m + off for m in bottom.markers] + [m1, m2]
    return TangleDiagram(crossings, markers, edges)


def tangle_reduce(t):
    """(a, b): coefficients of the 0-tangle and the infinity tangle."""
    cr = t.crossings
    darts = [(v, p) for v in t.degree for p in range(t.degree[v])]
    idx = {d: i for i, d in enumerate(darts)}
    a = {}
    b = {}
    for mask in range(1 << len(cr)):
        uf = _UF(len(darts))
        for x, y in t.edges:
            uf.union(idx[x], idx[y])
        for m in t.markers:
            uf.union(idx[(m, 0)], idx[(m, 1)])
        s = 0
        for k, v in enumerate(cr):
            sign = -1 if mask >> k & 1 else 1
            s += sign
            pair, _ = _smoothing_pairs(t.over[v], sign)
            for p in range(4):
                uf.union(idx[(v, p)], idx[(v, pair[p])])
        roots = {uf.find(i) for i in range(len(darts))}
        ends = {e: uf.find(idx[(e, 0)]) for e in ENDS}
        loops = len(roots) - 2
        if ends["NW"] == ends["SW"]:
            tgt = a
        elif ends["NW"] == ends["NE"]:
            tgt = b
        else:
            raise ComputationError("a state joined NW to SE: the diagram is not planar")
        tgt[(s, loops)] = tgt.get((s, loops), 0) + 1
    return _collect(a), _collect(b)


def _collect(table):
    total = RationalFunc()
    for (s, loops), cnt in table.items():
        total = total + RationalFunc.monomial(cnt, s) * DELTA ** loops
    return total


def closure(t):
    """The link diagram obtained by joining NW to SW and NE to SE."""
    off = t._max_id()
    m1, m2 = off, off + 1
    glue = {("NW", 0): (m1, 0), ("SW", 0): (m1, 1), ("NE", 0): (m2, 1), ("SE", 0): (m2, 0)}
    edges = [[list(glue.get(a, a)), list(glue.get(b, b))] for a, b in t.edges]
    crossings = [{"id": c, "over_ports": [t.over[c], t.over[c] + 2]} for c in t.crossings]
    probe = Diagram(0, crossings, t.markers + [m1, m2], edges, {"0": 0}, None)
    joins = _auto_joins(probe)
    return Diagram(0, crossings, t.markers + [m1, m2], edges, {"0": 0}, joins)


def _auto_joins(d):
    # pieces of a tangle closure are nested arbitrarily; the bracket does not care
    joins = []
    uf = _UF(d.n_vcomp)
    for f in range(len(d.faces)):
        if uf.union(d.face_vcomp[0], d.face_vcomp[f]):
            joins.append((0, f))
    return joins


# -- evaluation at A = sqrt(i) ---------------------------------------------------


class _Z8:
    """Element of Q(zeta_8) = Q[x]/(x^4 + 1) with x = A = e^{i pi/4}."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = tuple(Fraction(v) for v in c)

    @classmethod
    def power(cls, k):
        k %= 8
        sign = -1 if k >= 4 else 1
        c = [0, 0, 0, 0]
        c[k % 4] = sign
        return cls(c)

    def __add__(self, o):
        return _Z8([a + b for a, b in zip(self.c, o.c)])

    def __mul__(self, o):
        out = [Fraction(0)] * 4
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(o.c):
                if b:
                    k = i + j
                    if k >= 4:
                        out[k - 4] -= a * b
                    else:
                        out[k] += a * b
        return _Z8(out)

    def galois(self, m):
        acc = _Z8([0, 0, 0, 0])
        for i, a in enumerate(self.c):
            if a:
                acc = acc + _Z8.power(i * m) * _Z8([a, 0, 0, 0])
        return acc

    def is_zero(self):
        return not any(self.c)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError
        conj = self.galois(3) * self.galois(5) * self.galois(7)
        norm = (self * conj).c
        if any(norm[1:]):
            raise ComputationError("norm computation left Q")
        return conj * _Z8([1 / norm[0], 0, 0, 0])


def eval_at_sqrt_i(f):
    f = as_rf(f)
    if not f.is_laurent():
        raise ComputationError("coefficient is not a Laurent polynomial")
    acc = _Z8([0, 0, 0, 0])
    for e, c in f.as_laurent().terms():
        acc = acc + _Z8.power(e) * _Z8([c, 0, 0, 0])
    return acc


def conway_number(t):
    """-i b/a at A = e^{i pi/4}; returns a Fraction or the string 'inf'."""
    a, b = tangle_reduce(t) if isinstance(t, TangleDiagram) else t
    av, bv = eval_at_sqrt_i(a), eval_at_sqrt_i(b)
    if av.is_zero():
        if bv.is_zero():
            raise ComputationError("a and b both vanish at sqrt(i)")
        return "inf"
    val = _Z8([0, 0, -1, 0]) * bv * av.inverse()
    if any(val.c[1:]):
        raise ComputationError("-i b/a is not rational at sqrt(i); the tangle is not rational")
    return val.c[0]


def add_numbers(x, y):
    if x == "inf" or y == "inf":
        return "inf"
    return x + y


def montesinos_obstruction(e, fractions):
    """True when sum(alpha_j/beta_j) - e != 0."""
    return sum((Fraction(f) for f in fractions), Fraction(0)) - e != 0


def random_rational(rng, steps=4):
    """A rational tangle built from the 0-tangle by crossings stacked below and quarter turns."""
    t = TangleDiagram.zero()
    for _ in range(steps):
        if rng.random() < 0.3:
            t = t.rotate()
        for _ in range(rng.randint(1, 2)):
            t = stack(t, TangleDiagram.crossing(rng.choice((1, -1))))
    return t


def random_tangle(rng, n=4):
    """Any 2-tangle: a random product of crossings, rotations and rational pieces."""
    t = TangleDiagram.zero() if rng.random() < 0.5 else TangleDiagram.infinity()
    for _ in range(n):
        r = rng.random()
        if r < 0.25:
            t = t.rotate()
        elif r < 0.75:
            t = stack(t, TangleDiagram.crossing(rng.choice((1, -1))))
        else:
            t = stack(random_rational(rng, 2).rotate(), t)
    return t


__all__ = [
    "TangleDiagram", "tangle_reduce", "conway_number", "montesinos_obstruction", "stack",
    "closure", "random_rational", "random_tangle", "eval_at_sqrt_i", "add_numbers",
]
