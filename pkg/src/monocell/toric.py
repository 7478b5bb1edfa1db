"""Toric cubes: monomial images of the open unit cube and their PL samples."""
from dataclasses import dataclass
import math

from .errors import InputError, PostconditionError, PreconditionError
from .fixtures import freudenthal
from .linear import Q, rank as matrix_rank
from .matroid import basis_system, colex_subsets, linear_matroid
from .plcore import Complex, GraphComplex, check_graph, fmt, graph_from_function, to_fraction

# denominator of the grid's common ratio
GRID_DENOMINATOR = 20


@dataclass(frozen=True)
class ExponentData:
    d: int
    n: int
    A: tuple

    def __post_init__(self):
        A = tuple(tuple(int(a) for a in row) for row in self.A)
        object.__setattr__(self, "A", A)
        if self.d < 1 or self.n < 1:
            raise InputError("need d >= 1 and n >= 1")
        if len(A) != self.n or any(len(row) != self.d for row in A):
            raise InputError(f"exponent matrix must be {self.n} x {self.d}")
        if any(a < 0 for row in A for a in row):
            raise InputError("exponents must be non-negative")

    @classmethod
    def of(cls, rows):
        rows = [list(r) if isinstance(r, (list, tuple)) else [r] for r in rows]
        return cls(len(rows[0]) if rows else 0, len(rows), tuple(tuple(r) for r in rows))

    @property
    def labels(self):
        return tuple(f"x{i + 1}" for i in range(self.n))

    @property
    def rank(self):
        return matrix_rank([[Q(a) for a in row] for row in self.A])

    def to_json(self):
        return [list(row) for row in self.A]


def toric_eval(E, t):
    t = [to_fraction(x) for x in t]
    if len(t) != E.d:
        raise InputError(f"expected {E.d} parameters")
    if any(not 0 < x < 1 for x in t):
        raise InputError("parameters must lie in the open unit cube")
    out = []
    for row in E.A:
        v = Q(1)
        for x, a in zip(t, row):
            v *= x ** a
        out.append(v)
    return tuple(out)


def log_linear(E):
    """Matrix of z -> (a_1.z, ..., a_n.z) in logarithmic coordinates z = log t."""
    return [list(row) for row in E.A]


def toric_matroid(E):
    """Subsets of cube coordinates whose exponent rows are linearly independent."""
    cols = [[Q(E.A[i][j]) for i in range(E.n)] for j in range(E.d)]
    return linear_matroid(cols, list(E.labels), E.rank)


def log_grid(r):
    """r points in [eps, 1 - eps], eps = 1/(4r), forming an exact geometric progression.

    The common ratio is a rational with denominator GRID_DENOMINATOR, rounded
    up so the smallest point stays at or above eps. Exact ratios make the grid
    exactly uniform in log coordinates, so monomials that agree up to a power
    (parallel matroid elements) stay in exact lockstep on the sample.
    """
    if r < 2:
        raise InputError("resolution must be at least 2")
    eps = Q(1, 4 * r)
    top = 1 - eps
    ideal = (float(eps) / float(top)) ** (1 / (r - 1))
    ratio = Q(math.ceil(ideal * GRID_DENOMINATOR), GRID_DENOMINATOR)
    while top * ratio ** (r - 1) < eps:
        ratio += Q(1, GRID_DENOMINATOR)
    if ratio >= 1:
        raise InputError(f"resolution {r} too fine for the grid ratio denominator")
    return [top * ratio ** (r - 1 - i) for i in range(r)]


def _grid_axes(d, r):
    # every second axis runs backwards, so the cell diagonals point along
    # (1, -1, 1, ...); with all axes forward, samples fold far more often
    g = log_grid(r)
    return [list(reversed(g)) if j % 2 else g for j in range(d)]


def parameter_graph(E, r):
    """Graph of t -> f_A(t) over the triangulated parameter grid."""
    verts, tops = freudenthal(_grid_axes(E.d, r))
    dom = Complex(E.d, verts, tops)
    labels = tuple(f"t{j + 1}" for j in range(E.d))
    return graph_from_function(dom, [toric_eval(E, v) for v in verts],
                               codomain_labels=E.labels, domain_labels=labels)


def toric_pl_sample(E, r):
    """PL sample of the toric cube, as a graph over the first basis of its matroid.

    Raises PostconditionError when the mapped triangulation folds, i.e. the
    sample is not a graph over that basis.
    """
    if E.rank != E.d:
        raise PreconditionError(f"exponent matrix has rank {E.rank} < d = {E.d}")
    verts, tops = freudenthal(_grid_axes(E.d, r))
    pts = [toric_eval(E, v) for v in verts]
    basis = _first_basis(toric_matroid(E), E.labels)
    cod = tuple(x for x in E.labels if x not in basis)
    F = GraphComplex(Complex(E.n, pts, tops), basis, cod)
    try:
        check_graph(F)
    except InputError:
        raise PostconditionError(f"sample folds over its domain axes {', '.join(basis)}") from None
    return F


def _first_basis(M, labels):
    for T in colex_subsets(labels, M.rank):
        if frozenset(T) in M.bases:
            return T
    raise PreconditionError("toric matroid has no basis")


def toric_check(E, r):
    """Monotone-map verdict, matroid comparison and regular-cell evidence for a PL sample."""
    from .mono import is_monotone_map
    from .topo import regular_cell_evidence
    report = {"A": E.to_json(), "d": E.d, "n": E.n, "rank": E.rank, "resolution": r}
    M = toric_matroid(E)
    report["toric_matroid"] = M.to_json()
    if E.rank == 0:
        # every monomial is identically 1: the cube is a single point
        report.update({"dimension": 0, "vacuous": True, "passed": True,
                       "point": [fmt(1)] * E.n})
        return report
    try:
        F = toric_pl_sample(E, r)
    except PostconditionError as e:
        report.update({"dimension": E.d, "vacuous": False, "embedded": False,
                       "reason": str(e), "passed": False})
        return report
    report["embedded"] = True
    v = is_monotone_map(F)
    B = basis_system(F)
    ev = regular_cell_evidence(F)
    report.update({
        "dimension": F.n, "vacuous": False,
        "domain_axes": list(F.domain_axes), "codomain_axes": list(F.codomain_axes),
        "monotone": v.to_json(),
        "basis_system": B.to_json(),
        "matroid_match": B.bases == M.bases,
        "evidence": ev.to_json(),
    })
    report["passed"] = v.holds and report["matroid_match"] and ev.passed
    return report
