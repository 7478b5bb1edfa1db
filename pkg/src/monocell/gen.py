"""Instance generators and adversarial mutators for the property corpus."""
from dataclasses import dataclass, replace
import random

from . import plcore as pc
from .errors import InputError
from .fixtures import freudenthal
from .linear import Q, ZERO
from .plcore import Complex, GraphComplex, graph_from_function

MAX_N, MAX_K, MAX_NK, MAX_R = 3, 2, 4, 6
INC, DEC, IND = "Increasing", "Decreasing", "Independent"
STRATEGIES = ("notch-domain", "flatten-slice", "collide-levels")


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    n: int = 2
    k: int = 1
    r: int = 3
    den: int = 6

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise InputError(f"n must be in 1..{MAX_N}")
        if not 0 <= self.k <= MAX_K or self.n + self.k > MAX_NK:
            raise InputError(f"need k <= {MAX_K} and n + k <= {MAX_NK}")
        if not 2 <= self.r <= MAX_R:
            raise InputError(f"resolution must be in 2..{MAX_R}")
        if self.den < 1:
            raise InputError("denominator bound must be positive")

    def rng(self, salt=""):
        return random.Random(f"{self.seed}:{self.n}:{self.k}:{self.r}:{salt}")


def _pos(rng, den):
    return Q(rng.randint(1, 2 * den), rng.randint(1, den))


def _partial_sums(rng, count, den, start=ZERO):
    out = [start]
    for _ in range(count - 1):
        out.append(out[-1] + _pos(rng, den))
    return out


def _coef(rng, den, zero_weight=0.2):
    if rng.random() < zero_weight:
        return ZERO
    return Q(rng.randint(-2 * den, 2 * den), rng.randint(1, den))


# -- semi-monotone sets ----------------------------------------------------------

def prism(base, lower, upper):
    """Triangulate {(x, y) : x in base, lower(x) < y < upper(x)} for PL lower < upper.

    lower/upper are per-vertex values on the base complex. Each base simplex
    v_0 < ... < v_d becomes the d+1 simplices [b_0..b_i, t_i..t_d].
    """
    if any(a >= b for a, b in zip(lower, upper)):
        raise InputError("lower bound must be strictly below the upper bound")
    nv = len(base.vertices)
    verts = [v + (pc.to_fraction(a),) for v, a in zip(base.vertices, lower)]
    verts += [v + (pc.to_fraction(b),) for v, b in zip(base.vertices, upper)]
    tops = []
    for s in base.top_simplices:
        for i in range(len(s)):
            tops.append(tuple(s[:i + 1]) + tuple(nv + j for j in s[i:]))
    return Complex(base.ambient_dim + 1, verts, tops)


def _interval(rng, r, den):
    xs = _partial_sums(rng, r, den, start=Q(rng.randint(-den, den), den))
    return Complex(1, [(x,) for x in xs], [(i, i + 1) for i in range(r - 1)])


def _bounds(rng, base, den):
    """A submonotone lower and supermonotone upper bound with lower < upper.

    Over an interval both are strictly monotone or constant PL functions;
    in higher dimension both are affine.
    """
    if base.ambient_dim == 1:
        order = sorted(range(len(base.vertices)), key=lambda i: base.vertices[i][0])
        vals = []
        for _ in range(2):
            kind = rng.choice((INC, DEC, IND))
            seq = _partial_sums(rng, len(order), den) if kind != IND else [ZERO] * len(order)
            if kind == DEC:
                seq = [-v for v in seq]
            out = [ZERO] * len(order)
            for pos, i in enumerate(order):
                out[i] = seq[pos]
            vals.append(out)
    else:
        vals = []
        for _ in range(2):
            a = [_coef(rng, den) for _ in range(base.ambient_dim)]
            vals.append([sum((x * y for x, y in zip(a, v)), ZERO) for v in base.vertices])
    lower, upper = vals
    gap = min(u - w for u, w in zip(upper, lower))
    shift = _pos(rng, den) - min(gap, ZERO)
    return lower, [u + shift for u in upper]


def gen_semi_monotone(cfg):
    """Semi-monotone set built as nested regions between a lower and an upper bound."""
    rng = cfg.rng("set")
    K = _interval(rng, cfg.r, cfg.den)
    for _ in range(cfg.n - 1):
        lower, upper = _bounds(rng, K, cfg.den)
        K = prism(K, lower, upper)
    return K


def box_grid(axes_values):
    verts, tops = freudenthal([list(v) for v in axes_values])
    return Complex(len(axes_values), verts, tops)


# -- monotone functions and maps --------------------------------------------------

def separable_values(grid_axes, steps, const=ZERO):
    """Per-vertex values of sum_j h_j(x_j) where h_j has the given per-axis step values."""
    verts, _ = freudenthal([list(v) for v in grid_axes])
    index = [{c: i for i, c in enumerate(ax)} for ax in grid_axes]
    cum = []
    for st in steps:
        acc = [ZERO]
        for s in st:
            acc.append(acc[-1] + s)
        cum.append(acc)
    return [const + sum((cum[j][index[j][v[j]]] for j in range(len(v))), ZERO) for v in verts]


def gen_monotone_function(cfg, behaviors=None, affine=False):
    """Monotone function on a box grid: a separable sum of monotone lattice sequences.

    On each Freudenthal cell a separable function is affine, so per-axis
    slope signs are exactly the chosen behaviors.
    """
    rng = cfg.rng("function")
    n, r = cfg.n, cfg.r
    behaviors = tuple(behaviors) if behaviors else tuple(rng.choice((INC, DEC, IND)) for _ in range(n))
    if len(behaviors) != n:
        raise InputError("need one behavior per axis")
    axes = [_partial_sums(rng, r, cfg.den) for _ in range(n)]
    steps = []
    for j, b in enumerate(behaviors):
        if b == IND:
            steps.append([ZERO] * (r - 1))
            continue
        if affine:
            slope = _pos(rng, cfg.den)
            st = [slope * (axes[j][i + 1] - axes[j][i]) for i in range(r - 1)]
        else:
            st = [_pos(rng, cfg.den) for _ in range(r - 1)]
        steps.append(st if b == INC else [-s for s in st])
    vals = separable_values(axes, steps, Q(rng.randint(-cfg.den, cfg.den), cfg.den))
    return graph_from_function(box_grid(axes), [(v,) for v in vals])


def affine_graph(domain, A, c=None):
    """Graph of x -> A x + c over a domain complex; A has one row per codomain axis."""
    A = [[pc.to_fraction(a) for a in row] for row in A]
    c = [pc.to_fraction(x) for x in (c or [0] * len(A))]
    vals = [tuple(sum((a * x for a, x in zip(row, v)), ZERO) + ci for row, ci in zip(A, c))
            for v in domain.vertices]
    if not A:
        dom, _ = pc.default_labels(domain.ambient_dim, 0)
        return GraphComplex(domain, dom, ())
    return graph_from_function(domain, vals)


def gen_monotone_map(cfg, warp=None):
    """Affine map on a generated semi-monotone domain.

    With a box domain the grid coordinates may be warped per axis by a
    strictly increasing PL map, which keeps the map monotone exactly (the
    warped map is a separable sum over a product grid).
    """
    rng = cfg.rng("map")
    n, k, r = cfg.n, cfg.k, cfg.r
    A = [[_coef(rng, cfg.den) for _ in range(n)] for _ in range(k)]
    c = [Q(rng.randint(-cfg.den, cfg.den), cfg.den) for _ in range(k)]
    use_box = rng.random() < 0.5
    warp = rng.random() < 0.5 if warp is None else warp
    if not use_box and not warp:
        return affine_graph(gen_semi_monotone(replace(cfg, seed=rng.randint(0, 10 ** 9))), A, c)
    base = [[Q(i, r - 1) for i in range(r)] for _ in range(n)]
    axes = [_partial_sums(rng, r, cfg.den) for _ in range(n)] if warp else base
    dom = box_grid(axes)
    if not k:
        return GraphComplex(dom, pc.default_labels(n, 0)[0], ())
    rows = []
    for v in freudenthal([list(a) for a in axes])[0]:
        idx = [axes[j].index(v[j]) for j in range(n)]
        rows.append(tuple(sum((row[j] * base[j][idx[j]] for j in range(n)), ZERO) + ci
                          for row, ci in zip(A, c)))
    return graph_from_function(dom, rows)


# -- mutants -------------------------------------------------------------------------

def _as_graph(x):
    if isinstance(x, GraphComplex):
        return x
    return GraphComplex(x, pc.default_labels(x.ambient_dim, 0)[0], ())


def _restore(orig, F):
    return F if isinstance(orig, GraphComplex) else F.complex


def _notch(x):
    F = _as_graph(x)
    K = F.complex
    c1 = F.col(F.domain_axes[0])
    xs = sorted({v[c1] for v in K.vertices})
    lo, hi = xs[0], xs[-1]
    a, b = lo + (hi - lo) / 3, lo + 2 * (hi - lo) / 3
    funcs = [[v[c1] - a for v in K.vertices], [v[c1] - b for v in K.vertices]]
    c2 = None
    if F.n >= 2:
        c2 = F.col(F.domain_axes[1])
        ys = sorted({v[c2] for v in K.vertices})
        cut = (ys[0] + ys[-1]) / 2
        funcs.append([v[c2] - cut for v in K.vertices])
    verts, _, open_faces, _ = pc.refine_by_functions(K, funcs)

    def inside(f):
        p = pc.barycenter([verts[i] for i in f])
        return a <= p[c1] <= b and (c2 is None or p[c2] <= cut)

    keep = {f for f in open_faces if not inside(f)}
    G = GraphComplex(pc.complex_from_faces(verts, K.ambient_dim, keep), F.domain_axes, F.codomain_axes)
    return _restore(x, G)


def _flatten(F):
    from .mono import Behavior, behaviors
    if not isinstance(F, GraphComplex) or F.k != 1:
        raise InputError("flatten-slice needs a function graph")
    beh = behaviors(F)
    moving = [j for j, b in enumerate(beh) if b != Behavior.INDEPENDENT]
    if not moving:
        raise InputError("flatten-slice needs a non-constant function")
    j = moving[0]
    K = F.complex
    cj = F.col(F.domain_axes[j])
    yc = F.col(F.codomain_axes[0])
    xs = sorted({v[cj] for v in K.vertices})
    if F.n == 1 and len(xs) < 3:
        raise InputError("flatten-slice on an interval needs at least three grid points")
    ck = F.col(F.domain_axes[(j + 1) % F.n]) if F.n > 1 else None
    kmin = min(v[ck] for v in K.vertices) if ck is not None else None
    where = {v[:yc] + v[yc + 1:]: v[yc] for v in K.vertices}
    verts = []
    for v in K.vertices:
        if v[cj] == xs[-1] and (ck is None or v[ck] == kmin):
            src = list(v)
            src[cj] = xs[-2]
            src.pop(yc)
            v = v[:yc] + (where[tuple(src)],) + v[yc + 1:]
        verts.append(v)
    return GraphComplex(Complex(K.ambient_dim, verts, K.top_simplices, K.open_faces),
                        F.domain_axes, F.codomain_axes)


def _collide(F):
    """Replace the codomain by a ratio/difference pair whose level sets meet in one level."""
    if not isinstance(F, GraphComplex) or F.k != 2 or F.n < 2:
        raise InputError("collide-levels needs a map with n >= 2 and k = 2")
    K = F.complex
    dcols = [F.col(x) for x in F.domain_axes]
    grids = [sorted({v[c] for v in K.vertices}) for c in dcols[:2]]
    if len(grids[0]) != len(grids[1]):
        raise InputError("collide-levels needs equal grid sizes on the first two axes")
    m = len(grids[0]) - 1
    if m < 2:
        # on a single cell every level set runs parallel to the diagonal
        raise InputError("collide-levels needs at least three grid points per axis")
    rows = []
    for v in K.vertices:
        u = [Q(1, 2) + Q(grids[t].index(v[dcols[t]]), 2 * m) for t in range(2)]
        rows.append((u[1] / u[0], u[0] - u[1]))
    dom = pc.domain_complex(F)
    return graph_from_function(dom, rows, codomain_labels=F.codomain_axes, domain_labels=F.domain_axes)


def mutate_negative(instance, strategy):
    """Mutate a positive instance so that its targeted checker should fail."""
    if strategy == "notch-domain":
        return _notch(instance)
    if strategy == "flatten-slice":
        return _flatten(instance)
    if strategy == "collide-levels":
        return _collide(instance)
    raise InputError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")


def target_checker(strategy):
    """Name of the checker a mutant of the given strategy must fail."""
    return {"notch-domain": "semi-monotone", "flatten-slice": "monotone-function",
            "collide-levels": "monotone-map"}[strategy]
