"""Link diagrams in the g-holed disk.

A diagram is a ribbon graph on the sphere: crossings are 4-valent vertices
(ports 0..3 counterclockwise), free loops carry 2-valent markers, and the
holes 0..g (0 is the outer boundary) are assigned to faces of the rotation
system.  A disconnected diagram additionally lists ``joins``: pairs of
boundary cycles lying in the same complementary region.

Faces are the orbits of dart -> (w, q-1) where (w, q) is the partner dart.
The face containing dart (v, p) lies to its left, i.e. it is the corner of
v between port p and port p+1.
"""

from __future__ import annotations

import itertools
import json
import os
import random
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import CapExceeded, ComputationError, ValidationError
from .exactalg import DELTA, ONE, LaurentPoly, RationalFunc
from .linalg import signature
from .qnum import circle

STATE_CAP = int(os.environ.get("SKEINLAB_STATE_CAP", "24"))


class _UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        self.p[max(a, b)] = min(a, b)
        return True


class Diagram:
    """Immutable, validated diagram."""

    def __init__(self, genus, crossings, markers, edges, holes, joins=(), components=None):
        self.genus = g = int(genus)
        if g < 0:
            raise ValidationError("negative genus")
        self.over = {}
        for c in crossings:
            cid = int(c["id"]) if isinstance(c, dict) else int(c[0])
            ov = sorted(c["over_ports"] if isinstance(c, dict) else c[1])
            if ov not in ([0, 2], [1, 3]):
                raise ValidationError("crossing %d: over_ports must be [0,2] or [1,3]" % cid)
            if cid in self.over:
                raise ValidationError("duplicate vertex id %d" % cid)
            self.over[cid] = ov[0]
        self.markers = sorted(int(m) for m in markers)
        for m in self.markers:
            if m in self.over or self.markers.count(m) > 1:
                raise ValidationError("duplicate vertex id %d" % m)
        self.crossings = sorted(self.over)
        self.degree = {v: 4 for v in self.crossings}
        self.degree.update({m: 2 for m in self.markers})

        self.partner = {}
        self.edges = []
        for e in edges:
            try:
                (v, p), (w, q) = e
                a, b = (int(v), int(p)), (int(w), int(q))
            except (TypeError, ValueError):
                raise ValidationError("malformed edge %r" % (e,)) from None
            for d in (a, b):
                if d[0] not in self.degree or not 0 <= d[1] < self.degree[d[0]]:
                    raise ValidationError("edge %r uses a non-existent dart %r" % (e, d))
                if d in self.partner:
                    raise ValidationError("dart %r used twice" % (d,))
            if a == b:
                raise ValidationError("edge %r joins a dart to itself" % (e,))
            self.partner[a], self.partner[b] = b, a
            self.edges.append((min(a, b), max(a, b)))
        self.darts = sorted((v, p) for v in self.degree for p in range(self.degree[v]))
        missing = [d for d in self.darts if d not in self.partner]
        if missing:
            raise ValidationError("unused darts: %r" % missing[:4])

        self._faces()
        self._vertex_components()
        # joins=None is an internal escape hatch used while joins are computed
        self.joins = [tuple(int(x) for x in j) for j in joins or ()]
        self._check_topology(joins is not None)
        self.hole_face = self._read_holes(holes)
        self._strands(components)

    # -- construction --------------------------------------------------------

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        if not isinstance(data, dict) or "genus" not in data:
            raise ValidationError("diagram JSON needs at least a 'genus' field")
        return cls(
            data["genus"],
            data.get("crossings", []),
            data.get("markers", []),
            data.get("edges", []),
            data.get("holes", {}),
            data.get("joins", []),
            data.get("components"),
        )

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError("%s: %s" % (path, exc)) from None
        return cls.from_json(data)

    def to_json(self):
        out = {
            "genus": self.genus,
            "crossings": [{"id": c, "over_ports": [self.over[c], self.over[c] + 2]} for c in self.crossings],
            "markers": list(self.markers),
            "edges": [[list(a), list(b)] for a, b in self.edges],
            "holes": {str(i): f for i, f in enumerate(self.hole_face)},
        }
        if self.joins:
            out["joins"] = [list(j) for j in self.joins]
        if self._given_components:
            out["components"] = [list(d) for d in self._given_components]
        return out

    @classmethod
    def from_pd(cls, pd, genus=0, holes=None):
        """Planar diagram code: X[a,b,c,d] lists edge labels counterclockwise
        starting from the incoming understrand, so ports 1 and 3 are over."""
        seen = {}
        edges = []
        for i, x in enumerate(pd):
            if len(x) != 4:
                raise ValidationError("PD entries need four labels")
            for p, lab in enumerate(x):
                if lab in seen:
                    edges.append([seen.pop(lab), [i, p]])
                else:
                    seen[lab] = [i, p]
        if seen:
            raise ValidationError("PD labels %r occur once" % sorted(seen))
        crossings = [{"id": i, "over_ports": [1, 3]} for i in range(len(pd))]
        # the understrand leaves through port 2
        return cls(genus, crossings, [], edges, holes or {"0": 0}, (), [[i, 2] for i in range(len(pd))])

    # -- combinatorics ---------------------------------------------------------

    def _next(self, d):
        w, q = self.partner[d]
        return (w, (q - 1) % self.degree[w])

    def _faces(self):
        self.face_of = {}
        self.faces = []
        for d in self.darts:
            if d in self.face_of:
                continue
            cyc = []
            while d not in self.face_of:
                self.face_of[d] = len(self.faces)
                cyc.append(d)
                d = self._next(d)
            self.faces.append(cyc)
        self.n_faces = max(1, len(self.faces))

    def _vertex_components(self):
        uf = _UF(len(self.darts))
        idx = {d: i for i, d in enumerate(self.darts)}
        for v in self.degree:
            for p in range(1, self.degree[v]):
                uf.union(idx[(v, 0)], idx[(v, p)])
        for a, b in self.edges:
            uf.union(idx[a], idx[b])
        roots = sorted({uf.find(i) for i in range(len(self.darts))})
        rid = {r: k for k, r in enumerate(roots)}
        self.vcomp = {v: rid[uf.find(idx[(v, 0)])] for v in self.degree}
        self.n_vcomp = len(roots)
        self.face_vcomp = [self.vcomp[f[0][0]] for f in self.faces]

    def _check_topology(self, check_joins=True):
        for c in range(self.n_vcomp):
            vs = sum(1 for v in self.degree if self.vcomp[v] == c)
            es = sum(1 for a, _ in self.edges if self.vcomp[a[0]] == c)
            fs = sum(1 for k in self.face_vcomp if k == c)
            if vs - es + fs != 2:
                raise ValidationError("rotation system is not planar (V-E+F = %d)" % (vs - es + fs))
        if check_joins and len(self.joins) != max(0, self.n_vcomp - 1):
            raise ValidationError(
                "a diagram with %d pieces needs %d joins, got %d"
                % (self.n_vcomp, max(0, self.n_vcomp - 1), len(self.joins))
            )
        uf = _UF(max(1, self.n_vcomp))
        for j in self.joins:
            if len(j) != 2 or not all(0 <= f < len(self.faces) for f in j):
                raise ValidationError("join %r does not name two faces" % (j,))
            if not uf.union(self.face_vcomp[j[0]], self.face_vcomp[j[1]]):
                raise ValidationError("joins must connect distinct pieces without cycles")
        base = _UF(self.n_faces)
        for a, b in self.joins:
            base.union(a, b)
        self.base_region = [base.find(f) for f in range(self.n_faces)]

    def _read_holes(self, holes):
        if isinstance(holes, dict):
            try:
                items = {int(k): int(v) for k, v in holes.items()}
            except (TypeError, ValueError):
                raise ValidationError("holes must map hole index to face index") from None
        else:
            items = dict(enumerate(int(v) for v in holes))
        if sorted(items) != list(range(self.genus + 1)):
            raise ValidationError("holes must assign each index 0..%d exactly once" % self.genus)
        out = [items[i] for i in range(self.genus + 1)]
        for f in out:
            if not 0 <= f < self.n_faces:
                raise ValidationError("hole assigned to non-existent face %d" % f)
        return out

    def _through(self, v, q):
        return (q + 2) % 4 if self.degree[v] == 4 else 1 - q

    def _strands(self, components):
        """Link components as cyclic lists of outgoing darts."""
        self._given_components = [tuple(int(x) for x in d) for d in components] if components else None
        starts = list(self._given_components or [])
        for d in starts:
            if d not in self.partner:
                raise ValidationError("component start %r is not a dart" % (d,))
        starts += self.darts
        self.components = []
        self.comp_of_dart = {}
        self.forward = set()
        for d in starts:
            if d in self.comp_of_dart:
                continue
            k = len(self.components)
            seq = []
            cur = d
            while True:
                if cur in self.comp_of_dart:
                    if cur != d:
                        raise ValidationError("component starts %r overlap" % (d,))
                    break
                seq.append(cur)
                self.forward.add(cur)
                w, q = self.partner[cur]
                self.comp_of_dart[cur] = self.comp_of_dart[(w, q)] = k
                cur = (w, self._through(w, q))
            self.components.append(seq)

    # -- basic predicates --------------------------------------------------------

    @property
    def n_crossings(self):
        return len(self.crossings)

    def hole_count(self, face):
        return sum(1 for f in self.hole_face if self.base_region[f] == self.base_region[face])

    def external_faces(self):
        return sorted({f for f in range(len(self.faces)) if any(self.base_region[h] == self.base_region[f] for h in self.hole_face)})

    def corner(self, v, k):
        return self.face_of[(v, k % 4)]

    def mirror(self):
        data = self.to_json()
        for c in data["crossings"]:
            o = 1 - c["over_ports"][0]
            c["over_ports"] = [o, o + 2]
        return Diagram.from_json(data)

    def add_kink(self, edge=0, over_ports=(0, 2)):
        """Reidemeister I: put a curl on the given edge.

        The curl is a new crossing c whose ports 1 and 2 are joined; face
        labels are carried over through darts, whose corners do not move.
        """
        a, b = self.edges[edge]
        c = max(self.degree) + 1
        data = self.to_json()
        rep = {f: self.faces[f][0] for f in range(len(self.faces))}
        edges = [[list(x), list(y)] for x, y in self.edges if (x, y) != (a, b)]
        edges += [[list(a), [c, 0]], [[c, 1], [c, 2]], [[c, 3], list(b)]]
        crossings = data["crossings"] + [{"id": c, "over_ports": list(over_ports)}]
        probe = Diagram(self.genus, crossings, self.markers, edges, {str(i): 0 for i in range(self.genus + 1)},
                        None, self._given_components)
        holes = {str(i): probe.face_of[rep[f]] for i, f in enumerate(self.hole_face)}
        joins = [(probe.face_of[rep[x]], probe.face_of[rep[y]]) for x, y in self.joins]
        return Diagram(self.genus, crossings, self.markers, edges, holes, joins, self._given_components)


# -- states and splittings ------------------------------------------------------


def _smoothing_pairs(o, sign):
    """Port pairing after smoothing a crossing whose overstrand uses ports o, o+2.

    The A-smoothing (+1) joins the two corners swept when the overstrand is
    turned counterclockwise, i.e. corners o and o+2.
    """
    k = o if sign > 0 else o + 1
    a, b, c, d = (k + 1) % 4, (k + 2) % 4, (k + 3) % 4, k % 4
    pair = [0] * 4
    pair[a], pair[b], pair[c], pair[d] = b, a, d, c
    return pair, (k % 4, (k + 2) % 4)


@dataclass
class Region:
    m: int
    holes: tuple

    @property
    def h(self):
        return len(self.holes)

    @property
    def chi(self):
        return 2 - self.m - self.h


@dataclass
class Loop:
    sides: tuple
    trivial: bool
    darts: list = field(default_factory=list, repr=False)


@dataclass
class Splitting:
    """Multicurve with its complementary regions; region 0 holds hole 0."""

    regions: list
    loops: list
    plus: int = 0
    minus: int = 0

    @property
    def sD(self):
        return sum(1 for l in self.loops if l.trivial)

    @property
    def sum_s(self):
        return self.plus - self.minus

    def nontrivial_loops(self):
        return [l for l in self.loops if not l.trivial]

    def stripped(self):
        """Remove the homotopically trivial loops, merging their two sides."""
        uf = _UF(len(self.regions))
        for l in self.loops:
            if l.trivial:
                uf.union(*l.sides)
        roots = sorted({uf.find(i) for i in range(len(self.regions))})
        rid = {r: k for k, r in enumerate(roots)}
        m = [0] * len(roots)
        hs = [[] for _ in roots]
        for i, r in enumerate(self.regions):
            k = rid[uf.find(i)]
            m[k] += r.m
            hs[k].extend(r.holes)
        loops = []
        for l in self.loops:
            if l.trivial:
                for s in l.sides:
                    m[rid[uf.find(s)]] -= 1
            else:
                loops.append(Loop(tuple(rid[uf.find(s)] for s in l.sides), False, l.darts))
        regions = [Region(m[k], tuple(sorted(hs[k]))) for k in range(len(roots))]
        return _normalize(regions, loops, self.plus, self.minus)

    def key(self):
        return _tree_key(self.regions, self.loops)


def _normalize(regions, loops, plus=0, minus=0):
    """Renumber so that region 0 carries hole 0 and flag trivial loops."""
    root = next(i for i, r in enumerate(regions) if 0 in r.holes)
    order = [root] + [i for i in range(len(regions)) if i != root]
    pos = {r: k for k, r in enumerate(order)}
    regions = [regions[i] for i in order]
    loops = [Loop(tuple(pos[s] for s in l.sides), l.trivial, l.darts) for l in loops]
    adj = defaultdict(list)
    for k, l in enumerate(loops):
        a, b = l.sides
        if a == b:
            raise ComputationError("loop with the same region on both sides")
        adj[a].append((b, k))
        adj[b].append((a, k))
    # subtree hole counts from the root
    parent, orderv = {0: None}, [0]
    for u in orderv:
        for w, k in adj[u]:
            if w not in parent:
                parent[w] = (u, k)
                orderv.append(w)
    if len(parent) != len(regions):
        raise ComputationError("regions and loops do not form a tree")
    sub = [r.h for r in regions]
    for u in reversed(orderv[1:]):
        sub[parent[u][0]] += sub[u]
    for u in orderv[1:]:
        loops[parent[u][1]].trivial = sub[u] == 0
    return Splitting(regions, loops, plus, minus)


def _tree_key(regions, loops):
    adj = defaultdict(list)
    for l in loops:
        a, b = l.sides
        adj[a].append(b)
        adj[b].append(a)

    def rec(u, par):
        r = regions[u]
        return (r.chi, r.h > 0, tuple(sorted(rec(w, u) for w in adj[u] if w != par)))

    return rec(0, -1)


_VALUE_CACHE = {}


def _tree_value(key):
    """Sum over colorings of the rooted tree ``key`` with the root colored 0."""
    got = _VALUE_CACHE.get(key)
    if got is None:
        got = _VALUE_CACHE[key] = _subtree(key, 0)
    return got


_SUB_CACHE = {}


def _subtree(key, color):
    ck = (key, color)
    got = _SUB_CACHE.get(ck)
    if got is not None:
        return got
    chi, has_hole, children = key
    if has_hole and color:
        val = RationalFunc()
    else:
        val = circle(color) ** chi if chi else ONE
        for child in children:
            s = RationalFunc()
            for c in (color - 1, color + 1):
                if c >= 0:
                    s = s + _subtree(child, c)
            val = val * s
            if not val:
                break
    _SUB_CACHE[ck] = val
    return val


def splitting_bracket(sp):
    """Shadow-formula value of a splitting: colorings are 0 on regions with holes
    and change by exactly one across every loop."""
    if not sp.regions:
        return ONE
    return _tree_value(sp.key())


class _Engine:
    """Integer-indexed tables for fast repeated resolution."""

    def __init__(self, d):
        self.d = d
        self.dart_id = {x: i for i, x in enumerate(d.darts)}
        self.partner = [self.dart_id[d.partner[x]] for x in d.darts]
        self.face = [d.face_of[x] for x in d.darts]
        self.vertex = [x[0] for x in d.darts]
        self.port = [x[1] for x in d.darts]
        self.base = list(d.base_region)
        self.cross_darts = {v: [self.dart_id[(v, p)] for p in range(4)] for v in d.crossings}
        self.holes_in_face = defaultdict(list)
        for i, f in enumerate(d.hole_face):
            self.holes_in_face[self.base[f]].append(i)
        self.smooth = {
            v: {s: _smoothing_pairs(d.over[v], s) for s in (1, -1)} for v in d.crossings
        }

    def resolve(self, state):
        d = self.d
        nd = len(self.partner)
        if nd == 0:
            return Splitting([Region(0, tuple(range(d.genus + 1)))], [])
        cont = [0] * nd  # dart entering a vertex -> dart leaving it
        uf = _UF(d.n_faces)
        for f in range(d.n_faces):
            uf.union(f, self.base[f])
        for v in d.markers:
            a, b = self.dart_id[(v, 0)], self.dart_id[(v, 1)]
            cont[a], cont[b] = b, a
        plus = 0
        for v, s in zip(d.crossings, state):
            pair, (c1, c2) = self.smooth[v][s]
            ds = self.cross_darts[v]
            for p in range(4):
                cont[ds[p]] = ds[pair[p]]
            uf.union(self.face[ds[c1]], self.face[ds[c2]])
            plus += s > 0
        seen = bytearray(nd)
        loops = []
        for start in range(nd):
            if seen[start]:
                continue
            cur = start
            darts = []
            while not seen[cur]:
                seen[cur] = 1
                darts.append(cur)
                e = self.partner[cur]
                seen[e] = 1
                cur = cont[e]
            loops.append((uf.find(self.face[start]), uf.find(self.face[self.partner[start]]), darts))
        roots = sorted({uf.find(f) for f in range(d.n_faces)})
        rid = {r: k for k, r in enumerate(roots)}
        m = [0] * len(roots)
        hs = [[] for _ in roots]
        for f in range(d.n_faces):
            if self.base[f] == f:
                hs[rid[uf.find(f)]].extend(self.holes_in_face.get(f, ()))
        lo = []
        for a, b, darts in loops:
            a, b = rid[a], rid[b]
            m[a] += 1
            m[b] += 1
            lo.append(Loop((a, b), False, [d.darts[i] for i in darts]))
        regions = [Region(m[k], tuple(sorted(hs[k]))) for k in range(len(roots))]
        return _normalize(regions, lo, plus, len(state) - plus)


def _engine(d):
    eng = d.__dict__.get("_engine")
    if eng is None:
        eng = d.__dict__["_engine"] = _Engine(d)
    return eng


def _state_tuple(d, s):
    if isinstance(s, dict):
        if sorted(int(k) for k in s) != d.crossings:
            raise ValidationError("state must assign every crossing")
        s = [s[c] if c in s else s[str(c)] for c in d.crossings]
    s = tuple(int(x) for x in s)
    if len(s) != d.n_crossings or any(x not in (1, -1) for x in s):
        raise ValidationError("a state assigns +1 or -1 to each of the %d crossings" % d.n_crossings)
    return s


def resolve(d, s):
    return _engine(d).resolve(_state_tuple(d, s))


def all_states(n):
    return itertools.product((1, -1), repeat=n)


def _accumulate(d, states):
    eng = _engine(d)
    acc = {}
    for s in states:
        sp = eng.resolve(s)
        k = sp.key()
        e = sp.plus - sp.minus
        bucket = acc.setdefault(k, {})
        bucket[e] = bucket.get(e, 0) + 1
    return acc


def _accumulate_chunk(args):
    data, prefix, rest = args
    d = Diagram.from_json(data)
    return _accumulate(d, (prefix + t for t in all_states(rest)))


def bracket(d, jobs=1):
    """Kauffman bracket: sum over states of A^{sum s} times the splitting value."""
    n = d.n_crossings
    if n > STATE_CAP:
        raise CapExceeded("%d crossings exceed the state cap %d" % (n, STATE_CAP))
    if jobs > 1 and n >= 12:
        split = min(n, max(1, (jobs * 4 - 1).bit_length()))
        tasks = [(d.to_json(), p, n - split) for p in all_states(split)]
        acc = {}
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for part in ex.map(_accumulate_chunk, tasks):
                for k, b in part.items():
                    tgt = acc.setdefault(k, {})
                    for e, c in b.items():
                        tgt[e] = tgt.get(e, 0) + c
    else:
        acc = _accumulate(d, all_states(n))
    total = RationalFunc()
    for k, b in acc.items():
        total = total + RationalFunc.from_laurent(LaurentPoly({e: c for e, c in b.items()})) * _tree_value(k)
    return total


def state_bracket(d, s):
    """A^{sum s} times the splitting value for a single state."""
    sp = resolve(d, s)
    return RationalFunc.monomial(1, sp.sum_s) * splitting_bracket(sp)


# -- Z2 homology and homotopy ----------------------------------------------------


def _dual_bfs(d, edge_filter=None):
    """Parity and parent pointers from the outer face through the dual graph."""
    adj = defaultdict(list)
    for a, b in d.edges:
        if edge_filter is None or edge_filter(a):
            w = 1
        else:
            w = 0
        fa, fb = d.face_of[a], d.face_of[b]
        adj[fa].append((fb, w, a))
        adj[fb].append((fa, w, b))
    for a, b in d.joins:
        adj[a].append((b, 0, None))
        adj[b].append((a, 0, None))
    start = d.hole_face[0]
    par = {start: 0}
    via = {start: None}
    queue = [start]
    for u in queue:
        for w, wt, dart in adj[u]:
            if w not in par:
                par[w] = par[u] ^ wt
                via[w] = (u, dart)
                queue.append(w)
    return par, via


def z2_class(d, per_component=False):
    """Parity of crossings with D along a dual path from each hole 1..g to hole 0."""
    if not d.darts:
        zero = [0] * d.genus
        return [] if per_component else zero
    if per_component:
        out = []
        for k in range(len(d.components)):
            par, _ = _dual_bfs(d, lambda a, k=k: d.comp_of_dart[a] == k)
            out.append([par[d.hole_face[i]] for i in range(1, d.genus + 1)])
        return out
    par, _ = _dual_bfs(d)
    return [par[d.hole_face[i]] for i in range(1, d.genus + 1)]


def is_z2_trivial(d):
    return not any(z2_class(d))


def winding_numbers(d):
    """Signed intersection of each oriented component with a dual path hole 1 -> hole 0."""
    if d.genus != 1:
        raise ValidationError("winding numbers are implemented for g = 1 only")
    out = [0] * len(d.components)
    if not d.darts:
        return out
    _, via = _dual_bfs(d)
    f = d.hole_face[1]
    while via[f] is not None:
        u, dart = via[f]
        if dart is not None:
            # the path steps from the face left of `dart` to the face on its right
            k = d.comp_of_dart[dart]
            out[k] += 1 if dart in d.forward else -1
        f = u
    return out


def homotopy_trivial_g1(d):
    return not any(winding_numbers(d))


# -- psi, adequacy, Tait data -----------------------------------------------------


def psi(d, s):
    """Sum of chi(R) xi0(R) over the 0/1 coloring of the stripped splitting."""
    if not is_z2_trivial(d):
        raise ValidationError("psi needs a Z2-homologically trivial diagram")
    sp = resolve(d, s).stripped()
    return _psi_of(sp)


def _psi_of(sp):
    col = {0: 0}
    stack = [0]
    adj = defaultdict(list)
    for l in sp.loops:
        a, b = l.sides
        adj[a].append(b)
        adj[b].append(a)
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in col:
                col[w] = 1 - col[u]
                stack.append(w)
    for i, r in enumerate(sp.regions):
        if r.h and col[i]:
            raise ValidationError("no 0/1 coloring: the splitting is Z2-homologically non-trivial")
    return sum(r.chi * col[i] for i, r in enumerate(sp.regions))


def constant_state(d, sign):
    return (sign,) * d.n_crossings


def adequacy(d):
    out = []
    for sign in (1, -1):
        base = constant_state(d, sign)
        top = resolve(d, base).sD
        ok = True
        for i in range(d.n_crossings):
            s = list(base)
            s[i] = -sign
            if resolve(d, s).sD >= top:
                ok = False
                break
        out.append(ok)
    return tuple(out)


def connected(d):
    return d.n_vcomp == 1


def alternating(d):
    for comp in d.components:
        seq = []
        for dart in comp:
            w, q = d.partner[dart]
            if d.degree[w] == 4:
                seq.append(q % 2 == d.over[w])
        for a, b in zip(seq, seq[1:] + seq[:1]):
            if len(seq) > 1 and a == b:
                return False
    return True


def _side_faces(d, v, ports):
    """Faces reached from the given ports of v without passing through v."""
    verts = set()
    stack = [d.partner[(v, p)][0] for p in ports]
    stack = [w for w in stack if w != v]
    while stack:
        u = stack.pop()
        if u in verts:
            continue
        verts.add(u)
        for p in range(d.degree[u]):
            w = d.partner[(u, p)][0]
            if w != v and w not in verts:
                stack.append(w)
    faces = set()
    for u in verts:
        for p in range(d.degree[u]):
            faces.add(d.face_of[(u, p)])
    for p in ports:
        faces.add(d.face_of[d.partner[(v, p)]])
    return faces


def nugatory(d, v):
    """A disk in the holed surface meets D only at v."""
    for k in (0, 1):
        f1, f2 = d.corner(v, k), d.corner(v, k + 2)
        if d.base_region[f1] != d.base_region[f2]:
            continue
        region = d.base_region[f1]
        side_a = _side_faces(d, v, [(k + 1) % 4, (k + 2) % 4])
        side_b = _side_faces(d, v, [(k + 3) % 4, k % 4])
        for side in (side_a, side_b):
            side = {f for f in side if d.base_region[f] != region}
            holes = sum(1 for h in d.hole_face if h in side or d.base_region[h] in {d.base_region[f] for f in side})
            if holes == 0:
                return True
    return False


def _external_corners(d, v):
    ext = set(d.base_region[f] for f in d.hole_face)
    return [d.base_region[d.corner(v, k)] for k in range(4) if d.base_region[d.corner(v, k)] in ext]


def touches_two_external(d, v):
    return len(_external_corners(d, v)) >= 2


def counts_for_k(d, v):
    """Adjacent to two distinct external regions and not twice to the same one."""
    ex = _external_corners(d, v)
    return len(ex) >= 2 and len(set(ex)) == len(ex)


def simple(d):
    return not any(nugatory(d, v) or touches_two_external(d, v) for v in d.crossings)


def k_external(d):
    return sum(1 for v in d.crossings if counts_for_k(d, v))


def g_of_diagram(d):
    """Minimal number of holes of a holed disk in S_(g) containing D (connected D)."""
    if not connected(d) and d.darts:
        raise ValidationError("g(D) is implemented for connected diagrams")
    if not d.darts:
        return 0
    outer = d.hole_face[0]
    return len({f for f in d.hole_face if f != outer})


def tait_preconditions(d):
    bad = []
    if not connected(d):
        bad.append("diagram is not connected")
    if not alternating(d):
        bad.append("diagram is not alternating")
    if not is_z2_trivial(d):
        bad.append("diagram is not Z2-homologically trivial")
    if any(nugatory(d, v) for v in d.crossings):
        bad.append("diagram has a nugatory crossing")
    if connected(d) and g_of_diagram(d) != d.genus:
        bad.append("g(D) = %d differs from g = %d" % (g_of_diagram(d), d.genus))
    return bad


def tait_breadth_check(d, value=None):
    """Report on the breadth formula 4n + 4 - 4g - 4k and the state bound."""
    report = {"n": d.n_crossings, "g": d.genus}
    bad = tait_preconditions(d)
    report["preconditions"] = bad
    if value is None:
        value = bracket(d)
    report["B"] = value.breadth() if value else None
    if bad:
        report["checked"] = False
        return report
    k = k_external(d)
    report["k"] = k
    expected = 4 * d.n_crossings + 4 - 4 * d.genus - 4 * k
    report["expected"] = expected
    report["holds"] = report["B"] == expected
    report["checked"] = True
    plus, minus = resolve(d, constant_state(d, 1)), resolve(d, constant_state(d, -1))
    bound = 2 * (d.n_crossings + plus.sD + minus.sD + _psi_safe(plus) + _psi_safe(minus))
    report["state_bound"] = bound
    report["bound_holds"] = report["B"] is not None and report["B"] <= bound
    return report


def _psi_safe(sp):
    st = sp.stripped()
    return _psi_of(st) if st.loops else 0


def state_order_bound(d):
    """ord_inf <D|s+> - ord_0 <D|s->, an upper bound for the breadth."""
    a = state_bracket(d, constant_state(d, 1))
    b = state_bracket(d, constant_state(d, -1))
    return a.ord_infty() - b.ord_zero()


# -- orientation data in S^3 -----------------------------------------------------


def crossing_sign(d, v):
    """+1 when the understrand leaves one port counterclockwise after the overstrand."""
    o = d.over[v]
    o_out = o if (v, o) in d.forward else o + 2
    u = 1 - o
    u_out = u if (v, u) in d.forward else u + 2
    return 1 if (u_out - o_out) % 4 == 1 else -1


def _strand_components_at(d, v):
    o = d.over[v]
    return d.comp_of_dart[(v, o)], d.comp_of_dart[(v, 1 - o)]


def writhe(d):
    return sum(crossing_sign(d, v) for v in d.crossings)


def linking_matrix(d):
    if d.genus != 0:
        raise ValidationError("the linking matrix is defined here for g = 0 diagrams")
    k = len(d.components)
    twice = [[0] * k for _ in range(k)]
    for v in d.crossings:
        a, b = _strand_components_at(d, v)
        s = crossing_sign(d, v)
        if a == b:
            twice[a][a] += 2 * s
        else:
            twice[a][b] += s
            twice[b][a] += s
    return [[x // 2 for x in row] for row in twice]


def linking_signature(d):
    return signature(linking_matrix(d))


def jones_normalized(d, value=None):
    """(-A^3)^{-w} <D>, the framing-independent normalization (g = 0)."""
    if value is None:
        value = bracket(d)
    w = writhe(d)
    sign = -1 if w % 2 else 1
    return value * RationalFunc.monomial(sign, -3 * w)


# -- random diagrams -------------------------------------------------------------


def braid_closure(word, strands, genus=0, holes=None, rng=None):
    """Closed braid diagram; letter +i / -i crosses strands i-1 and i (1-based).

    Ports at each crossing run SW, SE, NE, NW.  Every strand gets a marker at
    the bottom so strands without crossings still close up.
    """
    if strands < 1:
        raise ValidationError("need at least one strand")
    crossings, markers, edges = [], [], []
    top = {}
    for j in range(strands):
        markers.append(j)
        top[j] = (j, 1)
    nid = strands
    for letter in word:
        i = abs(letter)
        if not 1 <= i < strands or letter == 0:
            raise ValidationError("braid letter %d out of range" % letter)
        l, r = i - 1, i
        crossings.append({"id": nid, "over_ports": [0, 2] if letter > 0 else [1, 3]})
        edges.append([list(top[l]), [nid, 0]])
        edges.append([list(top[r]), [nid, 1]])
        top[l], top[r] = (nid, 3), (nid, 2)
        nid += 1
    for j in range(strands):
        edges.append([list(top[j]), [j, 0]])
    components = [[j, 1] for j in range(strands)]
    d = Diagram(0, crossings, markers, edges, {"0": 0}, None, components)
    # the region between strands j and j+1 is left of (j+1, 1) and left of (j, 0)
    joins = []
    uf = _UF(d.n_vcomp)
    for j in range(strands - 1):
        a, b = d.face_of[(j, 0)], d.face_of[(j + 1, 1)]
        if uf.union(d.face_vcomp[a], d.face_vcomp[b]):
            joins.append((a, b))
    if holes is None:
        rng = rng or random.Random(0)
        holes = {str(i): rng.randrange(len(d.faces)) for i in range(genus + 1)}
    return Diagram(genus, crossings, markers, edges, holes, joins, components)


def random_diagram(rng, max_crossings=6, max_strands=3, genus=None):
    strands = rng.randint(1, max_strands)
    n = rng.randint(0, max_crossings) if strands > 1 else 0
    word = [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(n)]
    g = rng.randint(0, 2) if genus is None else genus
    return braid_closure(word, strands, g, rng=rng)


def connected_sum(d1, d2):
    """Band sum of two connected diagrams along edges on their outer faces.

    Hole 0 of both becomes hole 0 of the result; the remaining holes of d2
    are numbered after those of d1.
    """
    if d1.joins or d2.joins or not d1.edges or not d2.edges:
        raise ValidationError("connected_sum needs two connected, nonempty diagrams")
    shift = max(d1.degree) + 1
    j1, j2 = d1.to_json(), d2.to_json()
    crossings = j1["crossings"] + [{"id": c["id"] + shift, "over_ports": c["over_ports"]} for c in j2["crossings"]]
    markers = list(d1.markers) + [m + shift for m in d2.markers]
    mv = lambda d: (d[0] + shift, d[1])
    holes_n = {str(i): 0 for i in range(d1.genus + d2.genus + 1)}

    def cuts(d):
        o = d.hole_face[0]
        return [e for e in d.edges if o in (d.face_of[e[0]], d.face_of[e[1]])]

    for e1 in cuts(d1):
        for e2 in cuts(d2):
            (a1, b1), (a2, b2) = e1, (mv(e2[0]), mv(e2[1]))
            keep = [[list(x), list(y)] for x, y in d1.edges if (x, y) != e1]
            keep += [[list(mv(x)), list(mv(y))] for x, y in d2.edges if (x, y) != e2]
            for new in ([[a1, a2], [b1, b2]], [[a1, b2], [b1, a2]]):
                edges = keep + [[list(x), list(y)] for x, y in new]
                try:
                    probe = Diagram(d1.genus + d2.genus, crossings, markers, edges, holes_n, ())
                except ValidationError:
                    continue
                # a dart still names its corner after rewiring
                r1 = [cyc[0] for cyc in d1.faces]
                r2 = [mv(cyc[0]) for cyc in d2.faces]
                outer = probe.face_of[r1[d1.hole_face[0]]]
                if probe.face_of[r2[d2.hole_face[0]]] != outer:
                    continue
                hf = [outer] + [probe.face_of[r1[f]] for f in d1.hole_face[1:]]
                hf += [probe.face_of[r2[f]] for f in d2.hole_face[1:]]
                return Diagram(d1.genus + d2.genus, crossings, markers, edges, hf, ())
    raise ComputationError("no planar band between the outer faces")



__all__ = [
    "Diagram", "connected_sum", "Region", "Loop", "Splitting", "resolve", "splitting_bracket", "bracket",
    "state_bracket", "z2_class", "is_z2_trivial", "psi", "adequacy", "alternating",
    "connected", "simple", "nugatory", "k_external", "g_of_diagram", "tait_breadth_check",
    "tait_preconditions", "homotopy_trivial_g1", "winding_numbers", "writhe",
    "linking_matrix", "linking_signature", "crossing_sign", "jones_normalized",
    "braid_closure", "random_diagram", "all_states", "constant_state", "state_order_bound",
]
