"""Decision procedures for semi-monotone sets, monotone functions and monotone maps.

Every quantifier over a real threshold is evaluated on an adaptive grid: the
coordinates of the vertices of the current slice along the axis being fixed,
plus midpoints of consecutive values. Optional random extra thresholds
(``GridConfig.fuzz``) are added at the outermost level of each check.
"""
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
import random

from . import plcore as pc
from .errors import (InputError, OracleDisagreement, PostconditionError,
                     PreconditionError, UnsupportedInput)
from .linear import ONE, Q, Q_TYPE, ZERO, affine_rank, feasible, nullspace, solve_affine, solve_unique
from .matroid import basis_system, colex_subsets
from .plcore import EQ, GT, LT, Complex, ConeDescriptor, GraphComplex, fmt


class Behavior(Enum):
    INCREASING = "Increasing"
    DECREASING = "Decreasing"
    INDEPENDENT = "Independent"
    NONE = "None"


BELOW, ABOVE = "Below", "Above"


@dataclass(frozen=True)
class GridConfig:
    """Extra random thresholds added at the outermost quantifier of a check."""
    fuzz: int = 0
    seed: int = 0

    def extras(self, lo, hi, salt):
        if not self.fuzz or lo >= hi:
            return []
        rng = random.Random(f"{self.seed}:{salt}")
        out = set()
        while len(out) < self.fuzz:
            den = rng.randint(2, 997)
            out.add(lo + (hi - lo) * Q(rng.randint(1, den - 1), den))
        return sorted(out)


PLAIN = GridConfig()


def _grid(values, cfg, salt):
    vals = sorted(set(values))
    g = pc.canonical_grid(vals)
    if vals and cfg.fuzz:
        g = sorted(set(g) | set(cfg.extras(vals[0], vals[-1], salt)))
    return g


def _jsonable(x):
    if isinstance(x, (Q_TYPE, Fraction)):
        return fmt(x)
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, (Witness, Verdict, ConeDescriptor)):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=lambda v: str(v))
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class Witness:
    kind: str
    cone: ConeDescriptor = None
    points: tuple = ()
    detail: dict = field(default_factory=dict)

    def to_json(self):
        out = {"kind": self.kind,
               "points": [[fmt(c) for c in p] for p in self.points],
               "detail": _jsonable(self.detail)}
        if self.cone is not None:
            out["cone"] = self.cone.to_json()
            out["cone_text"] = str(self.cone)
        return out


@dataclass
class Verdict:
    holds: bool
    witness: Witness = None
    trace: list = field(default_factory=list)

    def to_json(self):
        return {"holds": self.holds,
                "witness": None if self.witness is None else self.witness.to_json(),
                "trace": list(self.trace)}


# -- connectivity over affine coordinate subspaces ------------------------------

def _meet_point(pts, atoms):
    """The unique point of conv(pts) on the subspace, or None."""
    k = len(pts)
    rows = [[p[a - 1] for p in pts] for a, _, _ in atoms] + [[ONE] * k]
    sol = solve_affine(rows, [c for _, _, c in atoms] + [ONE])
    if sol is None or sol[1] or any(x < 0 for x in sol[0]):
        return None
    lam = sol[0]
    return tuple(sum((l * p[i] for l, p in zip(lam, pts)), ZERO) for i in range(len(pts[0])))


class _SubspaceScan:
    """Search for an affine coordinate subspace with a disconnected slice.

    Subspaces are built by fixing axes in increasing order and explored level
    by level, so a reported subspace fixes as few axes as possible. The
    thresholds for the next axis are the coordinates of the vertices of the
    current slice (unique intersection points of closed faces with the
    subspace).
    """

    def __init__(self, K, cfg, record=True):
        self.K = K
        self.m = K.ambient_dim
        self.cfg = cfg
        self.record = record
        self.trace = []
        self.count = 0

    def run(self):
        root = sorted(self.K.open_face_set)
        hit = self._test((), root)
        if hit is not None:
            return hit
        level = [((), root, 1)]
        while level:
            nxt = []
            for atoms, nodes, first_axis in level:
                if len(atoms) >= self.m - 1:
                    continue
                pts = self._vertex_points(atoms, nodes)
                for a in range(first_axis, self.m + 1):
                    vals = {p[a - 1] for p in pts}
                    grid = _grid(vals, self.cfg, f"x{a}") if not atoms else _grid(vals, PLAIN, "")
                    for c in grid:
                        child = atoms + ((a, EQ, c),)
                        cnodes = [f for f in nodes if pc.relint_meets(self.K.coords(f), child)]
                        hit = self._test(child, cnodes)
                        if hit is not None:
                            return hit
                        if cnodes:
                            nxt.append((child, cnodes, a + 1))
            level = nxt
        return None

    def _test(self, atoms, nodes):
        self.count += 1
        if self.record:
            self.trace.append(str(ConeDescriptor(atoms)))
        if not nodes:
            return None
        ncomp, labels = pc.face_components(nodes)
        if ncomp > 1:
            return atoms, nodes, labels
        return None

    def _vertex_points(self, atoms, nodes):
        K = self.K
        if not atoms:
            return {K.vertices[i] for f in nodes for i in f}
        t = len(atoms)
        seen = set()
        pts = set()
        for f in nodes:
            for r in range(1, min(len(f), t + 1) + 1):
                for rho in combinations(f, r):
                    if rho in seen:
                        continue
                    seen.add(rho)
                    p = _meet_point(K.coords(rho), atoms)
                    if p is not None:
                        pts.add(p)
        return pts


def _component_points(K, C, nodes, labels):
    """Two points in distinct components of openreal(K) ∩ C, chosen for readability."""
    S = pc.intersect_cone(K, C) if C.atoms else K
    ncomp, slabels = pc.open_components(S)
    out = []
    if ncomp >= 2:
        for comp in range(2):
            faces = [f for f, c in slabels.items() if c == comp]
            coords = [S.vertices[i] for f in faces for i in f]
            mid = tuple((min(c) + max(c)) / 2 for c in zip(*coords))
            loc = pc.locate(S, mid)
            if loc is not None and slabels.get(loc) == comp:
                out.append(mid)
            else:
                big = max(faces, key=lambda f: (len(f), f))
                out.append(pc.barycenter(S.coords(big)))
    else:
        seen = set()
        for f in sorted(nodes, key=lambda f: (-len(f), f)):
            if labels[f] in seen:
                continue
            seen.add(labels[f])
            out.append(pc.relint_point(K.coords(f), C.atoms) if C.atoms else pc.barycenter(K.coords(f)))
            if len(out) == 2:
                break
    return tuple(sorted(out))


def _disconnect_witness(K, atoms, nodes, labels):
    C = ConeDescriptor(atoms)
    ncomp = len(set(labels.values()))
    return Witness("disconnected", C, _component_points(K, C, nodes, labels), {"components": ncomp})


def all_subspaces_connected(K, cfg=PLAIN, record=True):
    """Is openreal(K) ∩ S connected for every affine coordinate subspace S on the grid?"""
    scan = _SubspaceScan(K, cfg, record)
    hit = scan.run()
    trace = scan.trace if record else [f"{scan.count} subspaces tested"]
    if hit is None:
        return Verdict(True, None, trace)
    return Verdict(False, _disconnect_witness(K, *hit), trace)


def recheck_disconnection(K, w):
    """Re-verify a disconnection witness from scratch."""
    S = pc.intersect_cone(K, w.cone) if w.cone.atoms else K
    _, labels = pc.open_components(S)
    locs = [pc.locate(S, p) for p in w.points]
    if len(locs) != 2 or any(f is None or f not in labels for f in locs):
        return False
    return labels[locs[0]] != labels[locs[1]]


# -- semi-monotone sets ---------------------------------------------------------

def _as_set(K):
    if isinstance(K, GraphComplex):
        if K.k:
            raise InputError("expected a set, got a graph with codomain axes")
        return K.complex
    return K


def _check_open_set(K):
    if not K.top_simplices:
        return
    if not K.is_pure or K.dim != K.ambient_dim:
        raise InputError("a bounded open set must be encoded by a pure full-dimensional complex")


def _recursive_route(K, cfg):
    """Connected, and every axis slice is semi-monotone in its hyperplane (recursively)."""
    m = K.ambient_dim
    memo = set()
    count = [0]

    def visit(S, fixed):
        count[0] += 1
        ncomp, labels = pc.open_components(S)
        if ncomp == 0:
            return None
        if ncomp > 1:
            return fixed, S, labels
        if len(fixed) >= m - 1:
            return None
        done = {a for a, _ in fixed}
        for a in range(1, m + 1):
            if a in done:
                continue
            grid = _grid(pc.critical_values(S, a), cfg if not fixed else PLAIN, f"x{a}")
            for c in grid:
                key = frozenset(fixed + ((a, c),))
                if key in memo:
                    continue
                memo.add(key)
                child = pc.intersect_cone(S, ConeDescriptor(((a, EQ, c),)))
                hit = visit(child, fixed + ((a, c),))
                if hit:
                    return hit
        return None

    hit = visit(K, ())
    trace = [f"recursive route: {count[0]} slices"]
    if hit is None:
        return Verdict(True, None, trace)
    fixed, S, labels = hit
    C = ConeDescriptor(tuple((a, EQ, c) for a, c in sorted(fixed)))
    return Verdict(False, _disconnect_witness(K, C.atoms, list(labels), labels), trace)


def is_semi_monotone(K, cfg=PLAIN, route="both"):
    """Decide semi-monotonicity of the open set encoded by K.

    route: "direct" scans all affine coordinate subspaces, "recursive"
    slices axis by axis, "both" runs the two and insists on agreement.
    """
    K = _as_set(K)
    _check_open_set(K)
    if K.is_empty():
        return Verdict(True, None, ["empty set"])
    out = {}
    if route in ("both", "direct"):
        out["direct"] = all_subspaces_connected(K, cfg)
    if route in ("both", "recursive"):
        out["recursive"] = _recursive_route(K, cfg)
    if not out:
        raise InputError(f"unknown route {route!r}")
    if len({v.holds for v in out.values()}) > 1:
        raise OracleDisagreement(
            "semi-monotone routes disagree: " + ", ".join(f"{k}={v.holds}" for k, v in out.items()))
    main = out.get("direct") or out["recursive"]
    trace = list(main.trace)
    if "recursive" in out and main is not out["recursive"]:
        trace += out["recursive"].trace
    return Verdict(main.holds, main.witness, trace)


def _semi(K, cfg=PLAIN):
    """Internal single-route check used inside other procedures."""
    K = _as_set(K)
    if K.is_empty():
        return Verdict(True, None, [])
    _check_open_set(K)
    return all_subspaces_connected(K, cfg, record=False)


# -- functions ------------------------------------------------------------------

def _function_label(F, label=None):
    if label is None:
        if F.k != 1:
            raise InputError("codomain label required for maps with k != 1")
        return F.codomain_axes[0]
    if label not in F.codomain_axes:
        raise InputError(f"{label!r} is not a codomain axis")
    return label


def _domain_index(F, j):
    if isinstance(j, str):
        if j not in F.domain_axes:
            raise InputError(f"{j!r} is not a domain axis")
        return F.domain_axes.index(j)
    if not 1 <= j <= F.n:
        raise InputError(f"domain axis {j} out of range")
    return j - 1


def gradients(F, label=None):
    """Per-top gradient of a codomain coordinate in domain coordinates."""
    label = _function_label(F, label)
    dcols = [F.col(lab) for lab in F.domain_axes]
    yc = F.col(label)
    out = {}
    for s in F.complex.top_simplices:
        pts = F.complex.coords(s)
        base = pts[0]
        A = [[p[c] - base[c] for c in dcols] for p in pts[1:]]
        b = [p[yc] - base[yc] for p in pts[1:]]
        g = solve_unique(A, b) if A else []
        if g is None:
            raise InputError(f"top simplex {s} is degenerate over the domain")
        out[s] = g
    return out


def _classify(slopes):
    if all(s > 0 for s in slopes):
        return Behavior.INCREASING if slopes else Behavior.INDEPENDENT
    if all(s < 0 for s in slopes):
        return Behavior.DECREASING
    if all(s == 0 for s in slopes):
        return Behavior.INDEPENDENT
    return Behavior.NONE


def coordinate_behavior(F, j, label=None):
    jj = _domain_index(F, j)
    return _classify([g[jj] for g in gradients(F, label).values()])


def behaviors(F, label=None):
    grads = gradients(F, label)
    return [_classify([g[j] for g in grads.values()]) for j in range(F.n)]


def _behavior_witness(F, label, j):
    grads = gradients(F, label)
    tops = sorted(grads)
    sign = lambda s: (grads[s][j] > 0) - (grads[s][j] < 0)
    a = tops[0]
    b = next(t for t in tops if sign(t) != sign(a))
    pts = (pc.barycenter(F.complex.coords(a)), pc.barycenter(F.complex.coords(b)))
    return Witness("behavior", None, pts,
                   {"axis": F.domain_axes[j], "function": label,
                    "slopes": [grads[a][j], grads[b][j]]})


def _require_function(F):
    if not isinstance(F, GraphComplex) or F.k != 1:
        raise InputError("expected a function graph (k = 1)")


def _level_scan(F, direction, cfg, label=None):
    label = _function_label(F, label)
    ax = F.axis(label)
    rel = LT if direction == BELOW else GT
    dcols = [F.col(lab) for lab in F.domain_axes]
    trace = []
    for b in _grid(F.values(label), cfg, "level"):
        part = pc.intersect_cone(F.complex, ConeDescriptor(((ax, rel, b),)))
        if part.is_empty():
            continue
        P = pc.project_columns(part, dcols)
        v = _semi(P)
        trace.append(f"{label}{'<' if rel == LT else '>'}{b}: {'connected slices' if v.holds else 'fails'}")
        if not v.holds:
            w = Witness("level-set", v.witness.cone, v.witness.points,
                        {"direction": direction, "b": b, "function": label})
            return Verdict(False, w, trace)
    return Verdict(True, None, trace)


def is_level_monotone(F, direction=BELOW, cfg=PLAIN):
    """Submonotone (Below) or supermonotone (Above) test over the value grid."""
    _require_function(F)
    if direction not in (BELOW, ABOVE):
        raise InputError(f"direction must be {BELOW!r} or {ABOVE!r}")
    dv = _semi(pc.domain_complex(F))
    if not dv.holds:
        raise PreconditionError("domain is not semi-monotone", witness=dv.witness)
    return _level_scan(F, direction, cfg)


def _fn_definition(F, cfg):
    dv = _semi(pc.domain_complex(F), cfg)
    if not dv.holds:
        return Verdict(False, Witness("domain", dv.witness.cone, dv.witness.points, {}), ["domain fails"])
    beh = behaviors(F)
    trace = ["behaviors " + ",".join(b.value for b in beh)]
    if Behavior.NONE in beh:
        j = beh.index(Behavior.NONE)
        return Verdict(False, _behavior_witness(F, F.codomain_axes[0], j), trace)
    for d in (BELOW, ABOVE):
        v = _level_scan(F, d, cfg)
        trace += v.trace
        if not v.holds:
            return Verdict(False, v.witness, trace)
    return Verdict(True, None, trace)


def _fn_connectivity(F, cfg):
    beh = behaviors(F)
    if Behavior.NONE in beh:
        j = beh.index(Behavior.NONE)
        return Verdict(False, _behavior_witness(F, F.codomain_axes[0], j), ["behavior"])
    return all_subspaces_connected(F.complex, cfg, record=False)


def _fn_levels(F, cfg):
    dv = _semi(pc.domain_complex(F), cfg)
    if not dv.holds:
        return Verdict(False, Witness("domain", dv.witness.cone, dv.witness.points, {}), ["domain fails"])
    beh = behaviors(F)
    if Behavior.NONE in beh:
        j = beh.index(Behavior.NONE)
        return Verdict(False, _behavior_witness(F, F.codomain_axes[0], j), ["behavior"])
    moving = [j for j, b in enumerate(beh) if b != Behavior.INDEPENDENT]
    if not moving:
        return Verdict(True, None, ["constant"])
    xj = F.domain_axes[moving[0]]
    label = F.codomain_axes[0]
    ax = F.axis(label)
    dcols = [F.col(lab) for lab in F.domain_axes]
    trace = []
    for b in _grid(F.values(label), cfg, "level"):
        L = pc.intersect_cone(F.complex, ConeDescriptor(((ax, EQ, b),)))
        if L.is_empty():
            continue
        L = pc.project_columns(L, dcols)
        detail = {"b": b, "function": label, "over": xj}
        if F.n == 1:
            if pc.open_components(L)[0] != 1:
                return Verdict(False, Witness("level-not-graph", None, (), detail), trace)
            continue
        if not L.is_pure or L.dim != F.n - 1:
            return Verdict(False, Witness("level-not-graph", None, (), detail), trace)
        G = GraphComplex(L, tuple(x for x in F.domain_axes if x != xj), (xj,))
        ok, pair = pc.injective_on(G, G.domain_axes)
        if not ok:
            return Verdict(False, Witness("level-not-graph", None, pair, detail), trace)
        sub = _fn_levels(G, PLAIN)
        trace.append(f"level {b}: {'monotone' if sub.holds else 'not monotone'}")
        if not sub.holds:
            detail["inner"] = sub.witness
            return Verdict(False, Witness("level-not-monotone", None, (), detail), trace)
    return Verdict(True, None, trace)


FUNCTION_ROUTES = ("definition", "connectivity", "levels")


def is_monotone_function(F, cfg=PLAIN, routes=FUNCTION_ROUTES):
    """Monotone-function test by definition, cross-validated by two characterizations."""
    _require_function(F)
    impl = {"definition": _fn_definition, "connectivity": _fn_connectivity, "levels": _fn_levels}
    out = {}
    for r in routes:
        if r not in impl:
            raise InputError(f"unknown route {r!r}")
        out[r] = impl[r](F, cfg)
    if len({v.holds for v in out.values()}) > 1:
        raise OracleDisagreement(
            "monotone-function routes disagree: " + ", ".join(f"{k}={v.holds}" for k, v in out.items()))
    main = out[routes[0]]
    trace = list(main.trace) + [f"route {k}: {v.holds}" for k, v in out.items()]
    return Verdict(main.holds, main.witness, trace)


# -- maps ---------------------------------------------------------------------

def is_quasi_affine(F):
    """For every n-subset T: injective on F iff the image is n-dimensional."""
    trace = []
    for T in colex_subsets(F.labels, F.n):
        ok, pair = pc.injective_on(F, T)
        dim = pc.image_dimension(F, T) if F.n else 0
        trace.append(f"{','.join(T)}: injective={ok} dim={dim}")
        if ok != (dim == F.n):
            return Verdict(False, Witness("not-quasi-affine", None, pair or (), {"T": list(T), "dim": dim}), trace)
    return Verdict(True, None, trace)


def component_graph(F, label):
    """The graph of a single codomain component."""
    cols = sorted([F.col(x) for x in F.domain_axes] + [F.col(label)])
    K = pc.project_columns(F.complex, cols)
    return GraphComplex(K, F.domain_axes, (label,))


def _slice_graph(F, label, b):
    """F ∩ {label = b} with that column dropped, or None when empty."""
    L = pc.intersect_cone(F.complex, ConeDescriptor(((F.axis(label), EQ, b),)))
    if L.is_empty():
        return None
    rest = [x for x in F.labels if x != label]
    return pc.project_columns(L, [F.col(x) for x in rest])


def _map_inductive(F, cfg):
    if F.k == 0:
        return _semi(F.complex, cfg)
    dv = _semi(pc.domain_complex(F), cfg)
    if not dv.holds:
        return Verdict(False, Witness("domain", dv.witness.cone, dv.witness.points, {}), ["domain fails"])
    if F.n == 1:
        for lab in F.codomain_axes:
            v = _fn_definition(component_graph(F, lab), PLAIN)
            if not v.holds:
                return Verdict(False, Witness("component", None, v.witness.points,
                                              {"function": lab, "inner": v.witness}), [f"{lab} fails"])
        return Verdict(True, None, [f"n=1: {len(F.codomain_axes)} monotone components"])
    trace = []
    for lab in F.codomain_axes:
        beh = behaviors(F, lab)
        moving = [j for j, b in enumerate(beh) if b != Behavior.INDEPENDENT]
        if not moving:
            trace.append(f"{lab} constant")
            continue
        # condition (ii) is checked across all slices before recursing, so a
        # basis-system change is reported even when some slice also fails (i)
        systems = []
        for b in _grid(F.values(lab), cfg, f"level-{lab}"):
            L = _slice_graph(F, lab, b)
            if L is None:
                continue
            detail = {"function": lab, "b": b}
            if not L.is_pure or L.dim != F.n - 1:
                return Verdict(False, Witness("slice-not-graph", None, (), detail), trace)
            graphs = []
            for j in moving[:2]:
                xj = F.domain_axes[j]
                dom = tuple(x for x in F.domain_axes if x != xj)
                cod = tuple(y for y in F.codomain_axes if y != lab) + (xj,)
                G = GraphComplex(L, dom, cod)
                ok, pair = pc.injective_on(G, dom)
                if not ok:
                    detail["over"] = xj
                    return Verdict(False, Witness("slice-not-graph", None, pair, detail), trace)
                graphs.append(G)
            systems.append((b, graphs[0], basis_system(graphs[0])))
        xj = F.domain_axes[moving[0]]
        trace.append(f"{lab}: slices over {xj} at " + ", ".join(
            f"{fmt(b)} ({len(m.bases)} bases)" for b, _, m in systems))
        fams = [m.bases for _, _, m in systems]
        if len(set(fams)) > 1:
            counts = Counter(fams)
            odd = min(range(len(fams)), key=lambda t: (counts[fams[t]], t))
            other = min((t for t in range(len(fams)) if fams[t] != fams[odd]),
                        key=lambda t: (abs(systems[t][0] - systems[odd][0]), t))
            pair = sorted([odd, other], key=lambda t: systems[t][0])
            detail = {"function": lab, "over": xj,
                      "b_values": [systems[t][0] for t in pair],
                      "bases": [systems[t][2].to_json() for t in pair]}
            return Verdict(False, Witness("basis-mismatch", None, (), detail), trace)
        for b, G, _ in systems:
            sub = _map_inductive(G, PLAIN)
            if not sub.holds:
                detail = {"function": lab, "b": b, "over": xj, "inner": sub.witness}
                return Verdict(False, Witness("slice-not-monotone", None, (), detail), trace)
    return Verdict(True, None, trace)


def _map_connectivity(F, cfg, strict=False):
    q = is_quasi_affine(F)
    if not q.holds:
        if strict:
            raise PreconditionError("map is not quasi-affine", witness=q.witness)
        return Verdict(False, q.witness, q.trace)
    v = all_subspaces_connected(F.complex, cfg, record=True)
    return Verdict(v.holds, v.witness, ["quasi-affine"] + v.trace)


MODES = ("inductive", "connectivity", "both")


def is_monotone_map(F, mode="both", cfg=PLAIN, strict=False):
    """Monotone-map test.

    mode "inductive" follows the inductive definition over codomain slices,
    "connectivity" checks quasi-affineness plus connected subspace slices,
    "both" runs the two and insists on agreement. With strict=True the
    connectivity mode raises on non-quasi-affine input instead of failing.
    """
    if not isinstance(F, GraphComplex):
        raise InputError("expected a GraphComplex")
    mode = mode.lower()
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}")
    out = {}
    if mode in ("inductive", "both"):
        out["inductive"] = _map_inductive(F, cfg)
    if mode in ("connectivity", "both"):
        out["connectivity"] = _map_connectivity(F, cfg, strict)
    if len({v.holds for v in out.values()}) > 1:
        raise OracleDisagreement(
            "monotone-map modes disagree: " + ", ".join(f"{k}={v.holds}" for k, v in out.items()))
    main = out.get("inductive") or out["connectivity"]
    trace = list(main.trace)
    if "connectivity" in out and main is not out["connectivity"]:
        trace.append(f"connectivity mode: {out['connectivity'].holds}")
        if out["connectivity"].witness is not None:
            trace.append("connectivity witness: " + out["connectivity"].witness.kind)
    return Verdict(main.holds, main.witness, trace)


def _slice_bases(F, lab, xj, b):
    L = _slice_graph(F, lab, b)
    if L is None:
        return None
    dom = tuple(x for x in F.domain_axes if x != xj)
    cod = tuple(y for y in F.codomain_axes if y != lab) + (xj,)
    return basis_system(GraphComplex(L, dom, cod)).bases


def recheck_witness(X, w):
    """Independently confirm a failure witness against the instance it came from.

    Returns None for witness kinds that carry nothing re-checkable.
    """
    K = X.complex if isinstance(X, GraphComplex) else X
    if w.kind in ("disconnected", "level-set", "domain") and w.cone is not None:
        if w.kind == "level-set":
            rel = LT if w.detail["direction"] == BELOW else GT
            part = pc.intersect_cone(K, ConeDescriptor(((X.axis(w.detail["function"]), rel, w.detail["b"]),)))
            K = pc.project_columns(part, [X.col(x) for x in X.domain_axes])
        elif w.kind == "domain":
            K = pc.domain_complex(X)
        return recheck_disconnection(K, w)
    if w.kind == "basis-mismatch":
        lab, xj = w.detail["function"], w.detail["over"]
        fams = [_slice_bases(X, lab, xj, b) for b in w.detail["b_values"]]
        return None not in fams and fams[0] != fams[1]
    if w.kind == "slice-not-graph" and "over" in w.detail:
        lab, xj = w.detail["function"], w.detail["over"]
        L = _slice_graph(X, lab, w.detail["b"])
        dom = tuple(x for x in X.domain_axes if x != xj)
        cod = tuple(y for y in X.codomain_axes if y != lab) + (xj,)
        return L is not None and not pc.injective_on(GraphComplex(L, dom, cod), dom)[0]
    if w.kind == "not-quasi-affine":
        T = tuple(w.detail["T"])
        ok, _ = pc.injective_on(X, T)
        return ok != (pc.image_dimension(X, T) == X.n)
    if w.kind == "behavior":
        grads = gradients(X, w.detail["function"])
        j = X.domain_axes.index(w.detail["axis"])
        signs = {(g[j] > 0) - (g[j] < 0) for g in grads.values()}
        return len(signs) > 1
    return None


# -- fibers ---------------------------------------------------------------------

def fiber_restrict(F, assignments, check_pre=False):
    """Fix codomain values one at a time; returns a GraphComplex or None (empty)."""
    if check_pre and not is_monotone_map(F).holds:
        raise PreconditionError("fiber_restrict needs a monotone map")
    cur = F
    for label, b in assignments:
        b = pc.to_fraction(b)
        if label in F.domain_axes:
            raise InputError(f"cannot assign the domain axis {label!r}")
        if label not in cur.codomain_axes:
            raise InputError(f"{label!r} is not a codomain axis here")
        vals = set(cur.values(label))
        rest = [x for x in cur.labels if x != label]
        if len(vals) == 1:
            if vals.pop() != b:
                return None
            K = pc.project_columns(cur.complex, [cur.col(x) for x in rest])
            cur = GraphComplex(K, cur.domain_axes, tuple(y for y in cur.codomain_axes if y != label))
            continue
        beh = behaviors(cur, label)
        # eliminate the last dependent axis: x_n is solved for first
        j = max(i for i, x in enumerate(beh) if x != Behavior.INDEPENDENT)
        xj = cur.domain_axes[j]
        L = _slice_graph(cur, label, b)
        if L is None:
            return None
        if not L.is_pure or L.dim != cur.n - 1:
            raise PreconditionError(f"fiber over {label}={b} is not a codimension-one graph")
        cur = GraphComplex(L, tuple(x for x in cur.domain_axes if x != xj),
                           tuple(y for y in cur.codomain_axes if y != label) + (xj,))
    return cur


def as_graph(K, labels):
    """View a complex as a graph over the first injective label subset of its dimension."""
    labels = pc.sort_labels(labels)
    d = K.dim
    for T in colex_subsets(labels, d):
        axes = [labels.index(t) + 1 for t in T]
        if pc.injective_on(K, axes)[0]:
            return GraphComplex(K, T, tuple(x for x in labels if x not in T))
    raise PreconditionError("no coordinate projection is injective on this set")


# -- envelopes ------------------------------------------------------------------

def _halfspaces(P):
    """Inequalities a.x <= c describing the full-dimensional simplex P."""
    d = len(P[0])
    out = []
    for i in range(len(P)):
        face = [p for t, p in enumerate(P) if t != i]
        rows = [[q - r for q, r in zip(p, face[0])] for p in face[1:]]
        normal = nullspace(rows, d)[0] if rows else [ONE]
        c = sum(a * x for a, x in zip(normal, face[0]))
        if sum(a * x for a, x in zip(normal, P[i])) > c:
            normal = [-a for a in normal]
            c = -c
        out.append((normal, c))
    return out


def _affine_fit(P, vals):
    """Coefficients (a, c) with a.p + c = value at each vertex of the simplex P."""
    d = len(P[0])
    rows = [list(p) + [ONE] for p in P]
    sol = solve_unique(rows, vals)
    return sol[:d], sol[d]


def envelope(F, which="Inf", check_post=True):
    """Lower (Inf) or upper (Sup) envelope of f over the last domain axis."""
    _require_function(F)
    if which not in ("Inf", "Sup"):
        raise InputError("which must be 'Inf' or 'Sup'")
    n = F.n
    if n > 3:
        raise UnsupportedInput("envelope is implemented for domains of dimension at most 3")
    label = F.codomain_axes[0]
    K = F.complex
    yc = F.col(label)
    keep = F.domain_axes[:-1]
    kcols = [F.col(x) for x in keep]
    pick = min if which == "Inf" else max
    if n == 1:
        v = pick(p[yc] for p in K.vertices)
        return GraphComplex(Complex(1, [(v,)], [(0,)]), (), (label,))
    d = n - 1
    facets = sorted({f for s in K.top_simplices for f in combinations(s, n)})
    pieces = []
    for f in facets:
        P = [tuple(K.vertices[i][c] for c in kcols) for i in f]
        if affine_rank(P) < d:
            continue
        a, c = _affine_fit(P, [K.vertices[i][yc] for i in f])
        pieces.append((P, _halfspaces(P), a, c))
    cuts = set()
    for _, hs, _, _ in pieces:
        for normal, c in hs:
            cuts.add(_norm_cut(normal, -c))
    for (P1, h1, a1, c1), (P2, h2, a2, c2) in combinations(pieces, 2):
        diff = [x - y for x, y in zip(a1, a2)]
        if all(x == 0 for x in diff):
            continue
        if _crosses(h1 + h2, diff, c1 - c2):
            cuts.add(_norm_cut(diff, c1 - c2))
    allpts = [p for P, _, _, _ in pieces for p in P]
    lo = [min(p[i] for p in allpts) - 1 for i in range(d)]
    hi = [max(p[i] for p in allpts) + 1 for i in range(d)]
    from .fixtures import freudenthal
    bverts, btops = freudenthal([[l, h] for l, h in zip(lo, hi)])
    R = pc._Refiner(Complex(d, bverts, btops))
    idx = [R.add_function([sum(x * y for x, y in zip(a, v)) + c for v in R.vertices]) for a, c in sorted(cuts)]
    for i in idx:
        R.split(i)
    cell_fn = {}
    for s in R.tops:
        bc = pc.barycenter([R.vertices[i] for i in s])
        best = None
        for P, hs, a, c in pieces:
            if all(sum(x * y for x, y in zip(nv, bc)) <= cc for nv, cc in hs):
                val = sum(x * y for x, y in zip(a, bc)) + c
                if best is None or pick(val, best[0]) == val and val != best[0]:
                    best = (val, a, c)
        if best is not None:
            cell_fn[s] = best[1:]
    values = {}
    for s, (a, c) in cell_fn.items():
        for i in s:
            v = sum(x * y for x, y in zip(a, R.vertices[i])) + c
            if values.setdefault(i, v) != v:
                raise UnsupportedInput("envelope is discontinuous and has no PL graph")
    used = sorted(values)
    remap = {old: new for new, old in enumerate(used)}
    labels = pc.sort_labels(keep + (label,))
    verts = []
    for i in used:
        row = dict(zip(keep, R.vertices[i]))
        row[label] = values[i]
        verts.append(tuple(row[x] for x in labels))
    E = GraphComplex(Complex(n, verts, [tuple(remap[i] for i in s) for s in cell_fn]), keep, (label,))
    if check_post:
        _envelope_post(F, E, which)
    return E


def _norm_cut(a, c):
    lead = next(x for x in a if x != 0)
    s = abs(lead)
    return tuple(x / s for x in a), c / s


def _crosses(hs, a, c):
    """Does a.x + c take both signs on the common interior of two simplices?"""
    d = len(a)
    ineqs = [(nv, cc, True) for nv, cc in hs]
    pos = feasible(d, (), ineqs + [([-x for x in a], c, True)])
    neg = feasible(d, (), ineqs + [(list(a), -c, True)])
    return pos is not None and neg is not None


def _envelope_post(F, E, which):
    direction = BELOW if which == "Inf" else ABOVE
    if E.n == 0:
        return
    if not _semi(pc.domain_complex(F)).holds:
        return
    if _level_scan(F, direction, PLAIN).holds:
        if not _semi(pc.domain_complex(E)).holds or not _level_scan(E, direction, PLAIN).holds:
            raise PostconditionError(f"{which} envelope of a {direction.lower()}-level-monotone function fails the same test")


# -- splitting ---------------------------------------------------------------------

def _graph_parts(Sigma):
    """Affine data of each top of a codimension-one graph: (domain cols, value col, tops)."""
    dcols = [Sigma.col(x) for x in Sigma.domain_axes]
    ycol = Sigma.col(Sigma.codomain_axes[0])
    return dcols, ycol


def split_by_graph(X, Sigma, check=True):
    """Cut an open set along a codimension-one graph; returns the two sides.

    Sigma's complex must use X's coordinates (its label order is X's axis
    order). The side where the graph's value coordinate is smaller comes first.
    """
    X = _as_set(X)
    _check_open_set(X)
    if not isinstance(Sigma, GraphComplex) or Sigma.k != 1:
        raise InputError("Sigma must be a function graph")
    S = Sigma.complex
    n = X.ambient_dim
    if S.ambient_dim != n:
        raise InputError("Sigma lives in a different ambient dimension")
    if S.dim != n - 1:
        raise PreconditionError(f"Sigma has dimension {S.dim}, expected {n - 1}")
    if check:
        v = _semi(X)
        if not v.holds:
            raise PreconditionError("X is not semi-monotone", witness=v.witness)
    dcols, ycol = _graph_parts(Sigma)
    funcs = []
    for s in S.top_simplices:
        pts = S.coords(s)
        rows = [[q - r for q, r in zip(p, pts[0])] for p in pts[1:]]
        normal = nullspace(rows, n)[0]
        c = sum(a * x for a, x in zip(normal, pts[0]))
        funcs.append([sum(a * x for a, x in zip(normal, v)) - c for v in X.vertices])
        for f in combinations(s, n - 1):
            fp = [S.vertices[i] for i in f]
            # vertical wall through a boundary face of the graph simplex
            wrows = [[q - r for q, r in zip(p, fp[0])] for p in fp[1:]]
            wrows.append([ONE if t == ycol else ZERO for t in range(n)])
            ns = nullspace(wrows, n)
            if len(ns) != 1:
                continue
            wn = ns[0]
            wc = sum(a * x for a, x in zip(wn, fp[0]))
            funcs.append([sum(a * x for a, x in zip(wn, v)) - wc for v in X.vertices])
    verts, tops, open_faces, _ = pc.refine_by_functions(X, funcs)
    Sopen = S.open_face_set
    on_open, on_front = set(), set()
    Rfaces = {f for t in tops for r in range(1, len(t) + 1) for f in combinations(t, r)}
    for f in Rfaces:
        bc = pc.barycenter([verts[i] for i in f])
        loc = pc.locate(S, bc)
        if loc is None:
            continue
        (on_open if loc in Sopen else on_front).add(f)
    if check:
        if on_front & open_faces:
            raise PreconditionError("frontier of Sigma meets the interior of X")
        if not on_open <= open_faces:
            raise PreconditionError("Sigma is not inside X")
        _check_covered(S, dcols, verts, on_open)
    rest = open_faces - on_open
    ncomp, labels = pc.face_components(rest)
    parts = []
    for comp in range(ncomp):
        faces = {f for f in rest if labels[f] == comp}
        parts.append(pc.complex_from_faces(verts, n, faces))
    if check:
        if len(parts) != 2:
            raise PostconditionError(f"splitting produced {len(parts)} components, expected 2")
        for P in parts:
            if not _semi(P).holds:
                raise PostconditionError("a side of the split is not semi-monotone")
    return tuple(sorted(parts, key=lambda P: _side(P, S, dcols, ycol)))


def _check_covered(S, dcols, verts, faces):
    """Each graph simplex must be tiled by refined faces (compared by projected volume)."""
    d = len(dcols)
    need = {}
    for s in S.top_simplices:
        need[s] = abs(_det([[p[c] - S.vertices[s[0]][c] for c in dcols] for p in S.coords(s)[1:]]))
    got = dict.fromkeys(need, ZERO)
    for f in faces:
        if len(f) != d + 1:
            continue
        pts = [verts[i] for i in f]
        loc = pc.locate(S, pc.barycenter(pts))
        top = next(s for s in S.top_simplices if set(loc) <= set(s))
        got[top] += abs(_det([[p[c] - pts[0][c] for c in dcols] for p in pts[1:]]))
    for s in need:
        if got[s] != need[s]:
            raise PreconditionError("Sigma is not contained in the closure of X")


def _det(M):
    n = len(M)
    if n == 0:
        return ONE
    m = [list(r) for r in M]
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def _side(P, S, dcols, ycol):
    """-1 if P lies below the graph along the value axis, else 1."""
    tops = P.top_simplices
    bc = pc.barycenter(P.coords(tops[0]))
    for s in S.top_simplices:
        pts = S.coords(s)
        dom = [[p[c] for c in dcols] for p in pts]
        lam = pc.barycentric(dom, [bc[c] for c in dcols])
        if lam is None:
            continue
        yv = sum((l * p[ycol] for l, p in zip(lam, pts)), ZERO)
        return (-1 if bc[ycol] < yv else 1, tops[0])
    return (0, tops[0])


# -- sign conditions ---------------------------------------------------------------

def affine_cut(F, coeffs, const=0):
    """Vertex values of an affine function given as {label: coefficient}."""
    const = pc.to_fraction(const)
    cols = {F.col(lab): pc.to_fraction(v) for lab, v in coeffs.items()}
    return [sum((a * p[c] for c, a in cols.items()), ZERO) + const for p in F.complex.vertices]


def _sign_faces(faces, vals, want):
    target = {LT: -1, EQ: 0, GT: 1}[want]
    return {f for f in faces if pc._face_sign([vals[i] for i in f]) == target}


def sign_condition_region(F, cuts, check=True):
    """Realize F ∩ {g_1 σ_1 0} ∩ ... as a complex, checking the staging hypothesis."""
    if isinstance(F, Complex):
        F = GraphComplex(F, pc.default_labels(F.ambient_dim, 0)[0], ())
    funcs = []
    rels = []
    for vals, rel in cuts:
        if rel not in pc.RELATIONS:
            raise InputError(f"unknown relation {rel!r}")
        if len(vals) != len(F.complex.vertices):
            raise InputError("cut needs one value per vertex")
        funcs.append([pc.to_fraction(v) for v in vals])
        rels.append(rel)
    verts, tops, open_faces, values = pc.refine_by_functions(F.complex, funcs)
    m = F.complex.ambient_dim
    if check:
        prev = open_faces
        prev_dim = F.n
        for j, vals in enumerate(values, start=1):
            stage = _sign_faces(prev, vals, EQ)
            if stage == prev or not stage:
                prev = stage
                continue
            E = pc.complex_from_faces(verts, m, stage)
            if E.dim != prev_dim - 1:
                raise PreconditionError(f"stage {j}: zero set has dimension {E.dim}, expected {prev_dim - 1}")
            if E.dim > 0:
                v = is_monotone_map(as_graph(E, F.labels), mode="inductive")
                if not v.holds:
                    raise PreconditionError(f"stage {j}: zero set is not a monotone graph")
            prev, prev_dim = stage, E.dim
    region = set(open_faces)
    for vals, rel in zip(values, rels):
        region = _sign_faces(region, vals, rel)
    if not region:
        return pc.empty_complex(m)
    R = pc.complex_from_faces(verts, m, region)
    if check and R.dim > 0:
        v = is_monotone_map(as_graph(R, F.labels), mode="inductive")
        if not v.holds:
            raise PostconditionError("sign-condition region is not a monotone graph")
    return R
