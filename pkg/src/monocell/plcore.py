"""Exact simplicial-complex engine.

A ``Complex`` is a finite simplicial complex with rational vertices. Its open
realization is the union of the relative interiors of its *open faces*. For
plain input complexes the open faces are those not lying in the topological
frontier (decided by facet incidence). Complexes produced by slicing carry an
explicit open-face set, which keeps slices through frontier points exact.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
import re

from .errors import InputError, PreconditionError
from .linear import ONE, Q, Q_TYPE, ZERO, affine_rank, feasible, solve_affine

LT, EQ, GT = "LT", "EQ", "GT"
RELATIONS = (LT, EQ, GT)


def to_fraction(v):
    """Coerce an exact rational (int, Fraction, mpq or 'p/q' string) to Q."""
    if type(v) is Q_TYPE:
        return v
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return Q(v)
    if isinstance(v, str):
        try:
            return Q(Fraction(v.strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad rational {v!r}") from e
    raise InputError(f"expected an exact rational, got {type(v).__name__}")


def fmt(q):
    """Canonical 'p/q' string."""
    q = to_fraction(q)
    return f"{q.numerator}/{q.denominator}"


_LABEL = re.compile(r"^([A-Za-z_]+)(\d+)$")


def label_key(label):
    m = _LABEL.match(label)
    if not m:
        raise InputError(f"bad axis label {label!r}")
    return (m.group(1), int(m.group(2)))


def sort_labels(labels):
    return tuple(sorted(labels, key=label_key))


@dataclass(frozen=True)
class Complex:
    ambient_dim: int
    vertices: tuple
    top_simplices: tuple
    open_faces: frozenset = None

    def __post_init__(self):
        verts = tuple(tuple(to_fraction(c) for c in v) for v in self.vertices)
        for v in verts:
            if len(v) != self.ambient_dim:
                raise InputError("vertex has wrong number of coordinates")
        tops = tuple(sorted({tuple(sorted(int(i) for i in s)) for s in self.top_simplices}))
        for s in tops:
            if not s or len(set(s)) != len(s):
                raise InputError("degenerate simplex index list")
            if s[0] < 0 or s[-1] >= len(verts):
                raise InputError("simplex refers to a missing vertex")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "top_simplices", tops)
        if self.open_faces is not None:
            of = frozenset(tuple(sorted(f)) for f in self.open_faces)
            object.__setattr__(self, "open_faces", of)

    # -- combinatorics -------------------------------------------------
    @cached_property
    def dim(self):
        return max((len(s) - 1 for s in self.top_simplices), default=-1)

    @cached_property
    def is_pure(self):
        return all(len(s) - 1 == self.dim for s in self.top_simplices)

    @cached_property
    def faces(self):
        out = set()
        for s in self.top_simplices:
            for r in range(1, len(s) + 1):
                out.update(combinations(s, r))
        return frozenset(out)

    @cached_property
    def open_face_set(self):
        if self.open_faces is not None:
            return self.open_faces
        return frozenset(self.faces - _frontier_faces(self))

    @cached_property
    def frontier_face_set(self):
        return frozenset(self.faces - self.open_face_set)

    def is_empty(self):
        return not self.open_face_set

    def coords(self, face):
        return [self.vertices[i] for i in face]


def _frontier_faces(K):
    if not K.top_simplices:
        return set()
    if not K.is_pure:
        raise InputError("frontier of a non-pure complex is undefined without explicit open faces")
    d = K.dim
    if d == 0:
        return set()
    count = {}
    for s in K.top_simplices:
        for f in combinations(s, d):
            count[f] = count.get(f, 0) + 1
    out = set()
    for f, c in count.items():
        if c != 2:
            for r in range(1, len(f) + 1):
                out.update(combinations(f, r))
    return out


def closure_faces(faces):
    out = set()
    for f in faces:
        for r in range(1, len(f) + 1):
            out.update(combinations(f, r))
    return out


def maximal_faces(faces):
    faces = sorted(set(faces), key=len, reverse=True)
    kept = []
    covered = set()
    for f in faces:
        if f in covered:
            continue
        kept.append(f)
        for r in range(1, len(f)):
            covered.update(combinations(f, r))
    return kept


def complex_from_faces(vertices, ambient_dim, open_faces):
    """Build the complex spanned by a set of open faces (closure), reindexed."""
    tops = maximal_faces(open_faces)
    used = sorted({i for t in tops for i in t})
    remap = {old: new for new, old in enumerate(used)}
    verts = [vertices[i] for i in used]
    new_tops = [tuple(remap[i] for i in t) for t in tops]
    new_open = frozenset(tuple(remap[i] for i in f) for f in open_faces)
    K = Complex(ambient_dim, verts, new_tops, new_open)
    return normalize_open(K)


def normalize_open(K):
    """Drop an explicit open-face set when it equals the default one."""
    if K.open_faces is None or not K.top_simplices or not K.is_pure:
        return K
    plain = Complex(K.ambient_dim, K.vertices, K.top_simplices)
    if plain.open_face_set == K.open_faces:
        return plain
    return K


def empty_complex(m):
    return Complex(m, (), (), frozenset())


# -- cones -----------------------------------------------------------------

@dataclass(frozen=True)
class ConeDescriptor:
    atoms: tuple = ()

    def __post_init__(self):
        atoms = []
        for a in self.atoms:
            if len(a) != 3:
                raise InputError("cone atom must be (axis, relation, threshold)")
            axis, rel, c = a
            if rel not in RELATIONS:
                raise InputError(f"unknown relation {rel!r}")
            if not isinstance(axis, int) or axis < 1:
                raise InputError(f"bad axis {axis!r}")
            atoms.append((axis, rel, to_fraction(c)))
        atoms.sort(key=lambda a: a[0])
        for a, b in zip(atoms, atoms[1:]):
            if a[0] == b[0]:
                raise InputError(f"duplicate axis {a[0]} in cone")
        object.__setattr__(self, "atoms", tuple(atoms))

    @classmethod
    def of(cls, *atoms):
        return cls(tuple(atoms))

    def check_dim(self, m):
        for axis, _, _ in self.atoms:
            if axis > m:
                raise InputError(f"cone axis {axis} exceeds ambient dimension {m}")

    @property
    def is_affine(self):
        return all(rel == EQ for _, rel, _ in self.atoms)

    def contains(self, p):
        for axis, rel, c in self.atoms:
            v = p[axis - 1]
            if (rel == LT and not v < c) or (rel == EQ and v != c) or (rel == GT and not v > c):
                return False
        return True

    def to_json(self):
        return [[a, r, fmt(c)] for a, r, c in self.atoms]

    @classmethod
    def from_json(cls, data):
        return cls(tuple((int(a), r, to_fraction(c)) for a, r, c in data))

    def __str__(self):
        sym = {LT: "<", EQ: "=", GT: ">"}
        return "{" + ", ".join(f"x{a}{sym[r]}{c}" for a, r, c in self.atoms) + "}"


# -- graphs ----------------------------------------------------------------

@dataclass(frozen=True)
class GraphComplex:
    """A complex together with a domain/codomain split of its axis labels.

    Columns of the underlying complex are ordered by the natural sort of all
    labels, so the labels alone fix the coordinate layout.
    """
    complex: Complex
    domain_axes: tuple
    codomain_axes: tuple

    def __post_init__(self):
        dom = sort_labels(self.domain_axes)
        cod = sort_labels(self.codomain_axes)
        if len(set(dom) | set(cod)) != len(dom) + len(cod):
            raise InputError("domain and codomain labels overlap")
        if len(dom) + len(cod) != self.complex.ambient_dim:
            raise InputError("labels do not match ambient dimension")
        object.__setattr__(self, "domain_axes", dom)
        object.__setattr__(self, "codomain_axes", cod)
        if self.complex.top_simplices and self.complex.dim != len(dom):
            raise InputError(f"graph complex has dimension {self.complex.dim}, expected {len(dom)}")

    @cached_property
    def labels(self):
        return sort_labels(self.domain_axes + self.codomain_axes)

    @property
    def n(self):
        return len(self.domain_axes)

    @property
    def k(self):
        return len(self.codomain_axes)

    def col(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown axis label {label!r}") from None

    def axis(self, label):
        return self.col(label) + 1

    def values(self, label):
        c = self.col(label)
        return [v[c] for v in self.complex.vertices]


def default_labels(n, k):
    return tuple(f"x{i + 1}" for i in range(n)), tuple(f"y{i + 1}" for i in range(k))


def graph_from_function(domain, values, codomain_labels=None, domain_labels=None):
    """Lift a domain complex in R^n to a graph using per-vertex values.

    values: list (per vertex) of k-tuples.
    """
    n = domain.ambient_dim
    k = len(values[0]) if values else len(codomain_labels or ())
    dl, cl = default_labels(n, k)
    dl = tuple(domain_labels) if domain_labels else dl
    cl = tuple(codomain_labels) if codomain_labels else cl
    labels = sort_labels(dl + cl)
    verts = []
    for v, val in zip(domain.vertices, values):
        row = dict(zip(dl, v))
        row.update(zip(cl, (to_fraction(x) for x in val)))
        verts.append(tuple(row[lab] for lab in labels))
    K = Complex(n + k, verts, domain.top_simplices, domain.open_faces)
    return GraphComplex(K, dl, cl)


def project_columns(K, keep):
    """Drop all coordinates except the 0-based columns in ``keep``.

    The caller guarantees that the projection is injective on the complex;
    coinciding vertices raise an input error.
    """
    verts = [tuple(v[c] for c in keep) for v in K.vertices]
    if len(set(verts)) != len(verts):
        raise InputError("projection identifies distinct vertices")
    return Complex(len(keep), verts, K.top_simplices, K.open_faces)


def domain_complex(F):
    """The domain of a graph as a complex in its own coordinates."""
    cols = [F.col(lab) for lab in F.domain_axes]
    return project_columns(F.complex, cols)


def drop_axes(F, labels, domain_axes=None, codomain_axes=None):
    """Remove constant columns from a graph and relabel."""
    keep_labels = [lab for lab in F.labels if lab not in labels]
    K = project_columns(F.complex, [F.col(lab) for lab in keep_labels])
    dom = domain_axes if domain_axes is not None else [a for a in F.domain_axes if a not in labels]
    cod = codomain_axes if codomain_axes is not None else [a for a in F.codomain_axes if a not in labels]
    return GraphComplex(K, tuple(dom), tuple(cod))


# -- point location ----------------------------------------------------------

def barycentric(points, p):
    """Barycentric coordinates of p w.r.t. affinely independent points, or None if off the hull."""
    m = len(p)
    A = [[pt[r] for pt in points] for r in range(m)] + [[ONE] * len(points)]
    b = list(p) + [ONE]
    sol = solve_affine(A, b)
    if sol is None:
        return None
    return sol[0]


def locate(K, p):
    """The face of K whose relative interior contains p, or None."""
    p = tuple(to_fraction(c) for c in p)
    for s in K.top_simplices:
        pts = K.coords(s)
        if any(not (min(c[a] for c in pts) <= p[a] <= max(c[a] for c in pts)) for a in range(K.ambient_dim)):
            continue
        lam = barycentric(pts, p)
        if lam is None or any(x < 0 for x in lam):
            continue
        return tuple(i for i, x in zip(s, lam) if x > 0)
    return None


def in_open_realization(K, p):
    f = locate(K, p)
    return f is not None and f in K.open_face_set


def barycenter(points):
    n = len(points)
    return tuple(sum(c) / n for c in zip(*points))


# -- refinement ---------------------------------------------------------------

class _Refiner:
    """Edge-starring subdivision that puts zero sets of PL functions into the skeleton.

    Each vertex carries the set of original vertices spanning its carrier
    face, so openness of refined faces is inherited exactly.
    """

    def __init__(self, K, tops=None):
        self.vertices = list(K.vertices)
        self.carrier = [frozenset([i]) for i in range(len(self.vertices))]
        self.tops = [tuple(t) for t in (K.top_simplices if tops is None else tops)]
        self.funcs = []

    def add_function(self, values):
        self.funcs.append(list(values))
        return len(self.funcs) - 1

    def split(self, fi):
        g = self.funcs[fi]
        while True:
            edge = self._crossing_edge(g)
            if edge is None:
                return
            u, v = edge
            t = g[u] / (g[u] - g[v])
            pu, pv = self.vertices[u], self.vertices[v]
            p = tuple(a + t * (b - a) for a, b in zip(pu, pv))
            w = len(self.vertices)
            self.vertices.append(p)
            self.carrier.append(self.carrier[u] | self.carrier[v])
            for h in self.funcs:
                h.append(h[u] + t * (h[v] - h[u]))
            g[w] = ZERO
            new = []
            for s in self.tops:
                if u in s and v in s:
                    new.append(tuple(sorted(w if i == u else i for i in s)))
                    new.append(tuple(sorted(w if i == v else i for i in s)))
                else:
                    new.append(s)
            self.tops = new

    def _crossing_edge(self, g):
        for s in self.tops:
            lo = min(s, key=lambda i: g[i])
            hi = max(s, key=lambda i: g[i])
            if g[lo] < 0 < g[hi]:
                return lo, hi
        return None

    def faces(self):
        out = set()
        for s in self.tops:
            for r in range(1, len(s) + 1):
                out.update(combinations(s, r))
        return out

    def face_carrier(self, f):
        c = frozenset()
        for i in f:
            c = c | self.carrier[i]
        return tuple(sorted(c))


def _face_sign(vals):
    """Sign of a PL function on the relative interior of a face that lies on one side."""
    if any(v > 0 for v in vals):
        return 1
    if any(v < 0 for v in vals):
        return -1
    return 0


def intersect_cone(K, C):
    """Materialize openreal(K) ∩ C as a complex (closure of the result, explicit open faces)."""
    if isinstance(K, GraphComplex):
        raise InputError("intersect_cone expects a Complex; pass F.complex")
    C.check_dim(K.ambient_dim)
    if not C.atoms:
        return K
    opened = K.open_face_set
    tops = [s for s in K.top_simplices if _bbox_hits_closed(K.coords(s), C.atoms)]
    if not tops:
        return empty_complex(K.ambient_dim)
    R = _Refiner(K, tops)
    idx = []
    for axis, rel, c in C.atoms:
        idx.append(R.add_function([v[axis - 1] - c for v in R.vertices]))
    for fi in idx:
        R.split(fi)
    want = {LT: -1, EQ: 0, GT: 1}
    keep = set()
    for f in R.faces():
        ok = True
        for fi, (_, rel, _) in zip(idx, C.atoms):
            if _face_sign([R.funcs[fi][i] for i in f]) != want[rel]:
                ok = False
                break
        if ok and R.face_carrier(f) in opened:
            keep.add(f)
    if not keep:
        return empty_complex(K.ambient_dim)
    return complex_from_faces(R.vertices, K.ambient_dim, keep)


def _bbox_hits_closed(pts, atoms):
    for axis, rel, c in atoms:
        vals = [p[axis - 1] for p in pts]
        lo, hi = min(vals), max(vals)
        if rel == EQ and not (lo <= c <= hi):
            return False
        if rel == LT and not lo < c:
            return False
        if rel == GT and not hi > c:
            return False
    return True


def refine_by_functions(K, funcs):
    """Subdivide K so each PL function (per-vertex values) has its zero set in the skeleton.

    Returns (vertices, tops, open_faces, values) of the refined complex where
    values[i] are the interpolated values of funcs[i].
    """
    R = _Refiner(K)
    idx = [R.add_function([to_fraction(x) for x in f]) for f in funcs]
    for fi in idx:
        R.split(fi)
    opened = K.open_face_set
    open_faces = {f for f in R.faces() if R.face_carrier(f) in opened}
    return R.vertices, R.tops, open_faces, [R.funcs[i] for i in idx]


# -- connectivity ---------------------------------------------------------------

class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def face_components(nodes):
    """Connected components of relint pieces under the face relation.

    ``nodes`` are faces (sorted index tuples). Two nodes are adjacent when
    one is a face of the other; this is exact for relative interiors of
    faces of a simplicial complex cut by a relatively open convex set.
    """
    nodes = set(nodes)
    uf = _UnionFind(nodes)
    for f in nodes:
        if len(f) < 2:
            continue
        for r in range(1, len(f)):
            for g in combinations(f, r):
                if g in nodes:
                    uf.union(f, g)
    labels = {}
    comp_ids = {}
    for f in sorted(nodes, key=lambda t: (len(t), t)):
        root = uf.find(f)
        if root not in comp_ids:
            comp_ids[root] = len(comp_ids)
        labels[f] = comp_ids[root]
    return len(comp_ids), labels


def open_components(K):
    """Number of connected components of the open realization plus a face labeling."""
    return face_components(K.open_face_set)


def relint_meets(pts, atoms):
    """Does the relative interior of conv(pts) meet the cone given by atoms?"""
    live = []
    for axis, rel, c in atoms:
        vals = [p[axis - 1] for p in pts]
        lo, hi = min(vals), max(vals)
        if rel == EQ:
            if lo == hi == c:
                continue
            if not lo < c < hi:
                return False
        elif rel == LT:
            if hi <= c and lo < c:
                continue
            if not lo < c:
                return False
        else:
            if lo >= c and hi > c:
                continue
            if not hi > c:
                return False
        live.append((axis, rel, c))
    if len(live) <= 1:
        return True
    return relint_point(pts, live) is not None


def relint_point(pts, atoms):
    """A point in relint(conv(pts)) ∩ cone, or None."""
    k = len(pts)
    eqs = [([ONE] * k, ONE)]
    ineqs = [([-ONE if j == i else ZERO for j in range(k)], ZERO, True) for i in range(k)]
    for axis, rel, c in atoms:
        row = [p[axis - 1] for p in pts]
        if rel == EQ:
            eqs.append((row, c))
        elif rel == LT:
            ineqs.append((row, c, True))
        else:
            ineqs.append(([-x for x in row], -c, True))
    lam = feasible(k, eqs, ineqs)
    if lam is None:
        return None
    return tuple(sum((l * p[a] for l, p in zip(lam, pts)), ZERO) for a in range(len(pts[0])))


def cone_nodes(K, atoms, candidates=None):
    """Open faces whose relative interior meets the cone."""
    cand = K.open_face_set if candidates is None else candidates
    return [f for f in cand if relint_meets(K.coords(f), atoms)]


def cone_components(K, C):
    """Components of openreal(K) ∩ C computed directly by feasibility (no re-triangulation)."""
    C.check_dim(K.ambient_dim)
    return face_components(cone_nodes(K, C.atoms))


# -- frontier and grids --------------------------------------------------------

def frontier(K):
    """The frontier subcomplex (closure minus open realization)."""
    if K.open_faces is None and not K.is_pure:
        raise InputError("frontier requires a pure complex")
    fr = K.frontier_face_set
    if not fr:
        return empty_complex(K.ambient_dim)
    tops = maximal_faces(fr)
    used = sorted({i for t in tops for i in t})
    remap = {old: new for new, old in enumerate(used)}
    return Complex(K.ambient_dim, [K.vertices[i] for i in used], [tuple(remap[i] for i in t) for t in tops])


def critical_values(K, axis):
    if not 1 <= axis <= K.ambient_dim:
        raise InputError(f"axis {axis} out of range")
    return sorted({v[axis - 1] for v in K.vertices})


def canonical_grid(values):
    vals = sorted(set(values))
    out = list(vals)
    out.extend((a + b) / 2 for a, b in zip(vals, vals[1:]))
    return sorted(out)


# -- projections ---------------------------------------------------------------

def _axes_to_cols(K, T):
    if isinstance(K, GraphComplex):
        cols = []
        for t in T:
            cols.append(K.col(t) if isinstance(t, str) else t - 1)
        return cols, K.complex
    cols = []
    for t in T:
        if isinstance(t, str):
            raise InputError("label axes need a GraphComplex")
        if not 1 <= t <= K.ambient_dim:
            raise InputError(f"axis {t} out of range")
        cols.append(t - 1)
    return cols, K


def image_dimension(K, T):
    cols, C = _axes_to_cols(K, T)
    if not cols:
        raise InputError("axis subset must be nonempty")
    best = -1
    for s in C.top_simplices:
        pts = [[C.vertices[i][c] for c in cols] for i in s]
        best = max(best, affine_rank(pts))
    return best


def _proj_box(pts):
    lo = [min(c) for c in zip(*pts)]
    hi = [max(c) for c in zip(*pts)]
    return lo, hi


def _boxes_overlap(a, b):
    (la, ha), (lb, hb) = a, b
    for x0, x1, y0, y1 in zip(la, ha, lb, hb):
        # relative interiors: open unless degenerate
        if x0 == x1 and y0 == y1:
            if x0 != y0:
                return False
        elif x0 == x1:
            if not y0 < x0 < y1:
                return False
        elif y0 == y1:
            if not x0 < y0 < x1:
                return False
        elif not (x0 < y1 and y0 < x1):
            return False
    return True


def injective_on(K, T):
    """Is the coordinate projection to T injective on the open realization?

    Returns (bool, witness) where witness is a pair of distinct points with
    equal projection, or None.
    """
    cols, C = _axes_to_cols(K, T)
    tops = [s for s in C.top_simplices if s in C.open_face_set] or list(C.top_simplices)
    proj = {}
    for s in tops:
        pts = [tuple(C.vertices[i][c] for c in cols) for i in s]
        proj[s] = pts
        if affine_rank(pts) < len(s) - 1:
            return False, _collapse_witness(C, s, pts)
    boxes = {s: _proj_box(proj[s]) for s in tops}
    order = sorted(tops, key=lambda s: boxes[s][0][0] if cols else 0)
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            if cols and boxes[b][0][0] > boxes[a][1][0]:
                break
            if not _boxes_overlap(boxes[a], boxes[b]):
                continue
            if _separated(proj[a], proj[b]):
                continue
            w = _pair_witness(C, a, b, proj[a], proj[b])
            if w is not None:
                return False, w
    return True, None


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _sep_axes(pts):
    d = len(pts[0])
    if d == 1:
        return [(ONE,)]
    if d == 2:
        return [(q[1] - p[1], p[0] - q[0]) for p, q in combinations(pts, 2)]
    out = []
    for p, q, r in combinations(pts, 3):
        out.append(_cross([b - a for a, b in zip(p, q)], [b - a for a, b in zip(p, r)]))
    return out


def _separated(pa, pb):
    """Do two full-dimensional projected simplices have disjoint interiors?

    Separating-axis test, complete for dimension at most 3: facet normals of
    both simplices and, in dimension 3, cross products of edge pairs.
    Returns False when undecided (lower-dimensional simplices, d > 3).
    """
    d = len(pa[0])
    if d > 3 or len(pa) != d + 1 or len(pb) != d + 1:
        return False
    axes = _sep_axes(pa) + _sep_axes(pb)
    if d == 3:
        ea = [[y - x for x, y in zip(p, q)] for p, q in combinations(pa, 2)]
        eb = [[y - x for x, y in zip(p, q)] for p, q in combinations(pb, 2)]
        axes += [_cross(u, v) for u in ea for v in eb]
    for ax in axes:
        if not any(ax):
            continue
        da = [sum(x * y for x, y in zip(ax, p)) for p in pa]
        db = [sum(x * y for x, y in zip(ax, p)) for p in pb]
        if max(da) <= min(db) or max(db) <= min(da):
            return True
    return False


def _collapse_witness(C, s, pts):
    k = len(s)
    rows = [[p[c] for p in pts] for c in range(len(pts[0]))] + [[ONE] * k]
    null = solve_affine(rows, [ZERO] * len(rows))[1]
    mu = null[0]
    scale = max(abs(x) for x in mu)
    eps = Q(1, 2 * k) / scale
    lam0 = [Q(1, k)] * k
    lam1 = [a + eps * b for a, b in zip(lam0, mu)]
    verts = C.coords(s)
    p = tuple(sum((l * v[a] for l, v in zip(lam0, verts)), ZERO) for a in range(C.ambient_dim))
    q = tuple(sum((l * v[a] for l, v in zip(lam1, verts)), ZERO) for a in range(C.ambient_dim))
    return (p, q)


def _pair_witness(C, a, b, pa, pb):
    ka, kb = len(a), len(b)
    nv = ka + kb
    eqs = [([ONE] * ka + [ZERO] * kb, ONE), ([ZERO] * ka + [ONE] * kb, ONE)]
    for c in range(len(pa[0])):
        eqs.append(([p[c] for p in pa] + [-p[c] for p in pb], ZERO))
    ineqs = [([-ONE if j == i else ZERO for j in range(nv)], ZERO, True) for i in range(nv)]
    sol = feasible(nv, eqs, ineqs)
    if sol is None:
        return None
    va, vb = C.coords(a), C.coords(b)
    p = tuple(sum((l * v[x] for l, v in zip(sol[:ka], va)), ZERO) for x in range(C.ambient_dim))
    q = tuple(sum((l * v[x] for l, v in zip(sol[ka:], vb)), ZERO) for x in range(C.ambient_dim))
    return (p, q)


def project_injective(F, T):
    """Relabel a graph so that T becomes the domain (T must be a basis)."""
    T = tuple(T)
    if len(T) != F.n:
        raise InputError(f"need {F.n} axes, got {len(T)}")
    ok, w = injective_on(F, T)
    if not ok:
        raise PreconditionError(f"projection to {sort_labels(T)} is not injective", witness=w)
    rest = tuple(lab for lab in F.labels if lab not in T)
    return GraphComplex(F.complex, T, rest)


# -- validation ----------------------------------------------------------------

def check_valid(K):
    """Full validity check of a complex; raises InputError on the first problem."""
    if len(set(K.vertices)) != len(K.vertices):
        raise InputError("duplicate vertices")
    for s in K.top_simplices:
        if affine_rank(K.coords(s)) != len(s) - 1:
            raise InputError(f"simplex {s} is affinely dependent")
    faces = sorted(K.faces)
    boxes = {f: _proj_box(K.coords(f)) for f in faces}
    for i, f in enumerate(faces):
        for g in faces[i + 1:]:
            if not _boxes_overlap(boxes[f], boxes[g]):
                continue
            if _pair_witness(K, f, g, K.coords(f), K.coords(g)) is not None:
                raise InputError(f"faces {f} and {g} overlap")
    return True


def check_graph(F):
    ok, w = injective_on(F, F.domain_axes)
    if not ok:
        raise InputError("graph complex is not injective over its domain", ) from None
    return True


# -- serialization ---------------------------------------------------------------

def complex_to_json(K):
    out = {
        "ambient_dim": K.ambient_dim,
        "vertices": [[fmt(c) for c in v] for v in K.vertices],
        "top_simplices": [list(s) for s in K.top_simplices],
    }
    if K.open_faces is not None:
        out["open_faces"] = [list(f) for f in sorted(K.open_faces, key=lambda f: (len(f), f))]
    return out


def complex_from_json(data):
    try:
        of = data.get("open_faces")
        return Complex(
            int(data["ambient_dim"]),
            [[to_fraction(c) for c in v] for v in data["vertices"]],
            [list(s) for s in data["top_simplices"]],
            None if of is None else frozenset(tuple(f) for f in of),
        )
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed complex JSON: {e}") from e


def graph_to_json(F):
    out = complex_to_json(F.complex)
    out["domain_axes"] = list(F.domain_axes)
    out["codomain_axes"] = list(F.codomain_axes)
    return out


def graph_from_json(data):
    try:
        return GraphComplex(complex_from_json(data), tuple(data["domain_axes"]), tuple(data["codomain_axes"]))
    except KeyError as e:
        raise InputError(f"missing field {e}") from e


def instance_from_json(data):
    if "domain_axes" in data:
        return graph_from_json(data)
    return complex_from_json(data)


def instance_to_json(x):
    return graph_to_json(x) if isinstance(x, GraphComplex) else complex_to_json(x)
