"""Topological evidence for regular cells: Euler characteristics, rational homology, gluing."""
from dataclasses import dataclass, field
import os

from . import plcore as pc
from .linear import Q
from .errors import InputError, PreconditionError, UnsupportedInput
from .plcore import GraphComplex

DEFAULT_FACE_CAP = 20000


def face_cap():
    raw = os.environ.get("MONOCELL_FACE_CAP")
    if raw is None:
        return DEFAULT_FACE_CAP
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"MONOCELL_FACE_CAP must be an integer, got {raw!r}") from None


def _complex(K):
    return K.complex if isinstance(K, GraphComplex) else K


def _closed_faces(K):
    return set(_complex(K).faces)


def _chi(faces):
    return sum((-1) ** (len(f) - 1) for f in faces)


def euler_characteristic(K):
    """Alternating face count of the closed complex."""
    return _chi(_closed_faces(K))


def _rank_sparse(rows):
    """Exact rank of a sparse matrix given as a list of {col: value} rows."""
    pivots = {}
    rank = 0
    for row in rows:
        r = {c: Q(v) for c, v in row.items() if v}
        while r:
            c = min(r)
            if c not in pivots:
                pivots[c] = r
                rank += 1
                break
            p = pivots[c]
            f = r[c] / p[c]
            for cc, v in p.items():
                nv = r.get(cc, 0) - f * v
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
    return rank


def _ranks_of_faces(faces, max_dim=None):
    faces = set(faces)
    cap = face_cap()
    if len(faces) > cap:
        raise UnsupportedInput(f"{len(faces)} faces exceed the homology cap of {cap}")
    if not faces:
        return []
    top = max(len(f) for f in faces) - 1
    by_dim = [sorted(f for f in faces if len(f) == d + 1) for d in range(top + 1)]
    index = [{f: i for i, f in enumerate(fs)} for fs in by_dim]
    brank = [0] * (top + 2)
    for d in range(1, top + 1):
        rows = []
        for f in by_dim[d]:
            rows.append({index[d - 1][f[:i] + f[i + 1:]]: (-1) ** i for i in range(len(f))})
        brank[d] = _rank_sparse(rows)
    betti = [len(by_dim[d]) - brank[d] - brank[d + 1] for d in range(top + 1)]
    if max_dim is not None:
        betti = (betti + [0] * (max_dim + 1))[:max_dim + 1]
    return betti


def homology_ranks(K, max_dim=None):
    """Rational homology ranks of the closed complex, degrees 0..max_dim."""
    return _ranks_of_faces(_closed_faces(K), max_dim)


@dataclass
class EvidenceReport:
    connected: bool
    chi_closure: int
    chi_frontier: int
    homology_closure: list
    homology_frontier: list
    verdict: str
    reasons: list = field(default_factory=list)

    def to_json(self):
        return {"kind": "evidence", "connected": self.connected,
                "chi_closure": self.chi_closure, "chi_frontier": self.chi_frontier,
                "homology_closure": list(self.homology_closure),
                "homology_frontier": list(self.homology_frontier),
                "verdict": self.verdict, "reasons": list(self.reasons)}

    @property
    def passed(self):
        return self.verdict == "Pass"


def regular_cell_evidence(F):
    """Homological evidence that an open set (or graph) is a regular cell.

    Pass means: connected, closure has the homology of a ball, frontier has
    the homology of a sphere of one dimension less. This is evidence only.
    """
    K = _complex(F)
    n = K.dim
    if n < 0:
        raise InputError("regular-cell evidence needs a nonempty complex")
    ncomp, _ = pc.open_components(K)
    closed = _closed_faces(K)
    front = set(K.frontier_face_set)
    hc = _ranks_of_faces(closed, n)
    hf = _ranks_of_faces(front, max(n - 1, 0)) if front else []
    reasons = []
    if ncomp != 1:
        reasons.append(f"{ncomp} open components")
    ball = [1] + [0] * n
    if hc != ball:
        reasons.append(f"closure homology {hc}, expected {ball}")
    if n == 0:
        sphere = []
    elif n == 1:
        sphere = [2]
    else:
        sphere = [1] + [0] * (n - 2) + [1]
    if hf != sphere:
        reasons.append(f"frontier homology {hf}, expected {sphere}")
    return EvidenceReport(ncomp == 1, _chi(closed), _chi(front), hc, hf,
                          "Fail" if reasons else "Pass", reasons)


def _axis_index(F, j):
    if isinstance(F, GraphComplex):
        if isinstance(j, str):
            return F.col(j)
        return j - 1
    if isinstance(j, str):
        raise InputError("label axes need a GraphComplex")
    return j - 1


def glue_parts(F, j, c):
    """Faces of the common refinement on each side of {x_j = c}: (minus, zero, plus, refined vertices)."""
    K = _complex(F)
    col = _axis_index(F, j)
    if not 0 <= col < K.ambient_dim:
        raise InputError(f"axis {j} out of range")
    c = pc.to_fraction(c)
    verts, _, open_faces, values = pc.refine_by_functions(K, [[v[col] - c for v in K.vertices]])
    g = values[0]
    parts = {-1: set(), 0: set(), 1: set()}
    for f in open_faces:
        parts[pc._face_sign([g[i] for i in f])].add(f)
    return parts[-1], parts[0], parts[1], verts


def glue_check(F, j, c, check_pre=False):
    """Closure identity: cl(F ∩ {x_j < c}) ∩ cl(F ∩ {x_j > c}) = cl(F ∩ {x_j = c}).

    All three pieces are subcomplexes of one refinement, so the point-set
    identity reduces to equality of closed face sets.
    """
    if check_pre:
        from .mono import is_monotone_map
        G = F if isinstance(F, GraphComplex) else GraphComplex(F, pc.default_labels(F.ambient_dim, 0)[0], ())
        if not is_monotone_map(G).holds:
            raise PreconditionError("glue_check needs a monotone map")
    minus, zero, plus, _ = glue_parts(F, j, c)
    return pc.closure_faces(minus) & pc.closure_faces(plus) == pc.closure_faces(zero)


def side_complex(F, j, c, side):
    """F ∩ {x_j σ c} for side in {-1, 0, 1}, as a complex of the common refinement."""
    K = _complex(F)
    minus, zero, plus, verts = glue_parts(F, j, c)
    faces = {-1: minus, 0: zero, 1: plus}[side]
    if not faces:
        return pc.empty_complex(K.ambient_dim)
    return pc.complex_from_faces(verts, K.ambient_dim, faces)
