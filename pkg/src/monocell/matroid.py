"""Systems of basis sets of PL maps, treated as matroids."""
from dataclasses import dataclass
from itertools import combinations

from .errors import InputError
from .linear import rank as matrix_rank
from .plcore import GraphComplex, injective_on, image_dimension, sort_labels, label_key


def colex_subsets(labels, r):
    """All r-subsets of ``labels`` in colexicographic order of their positions."""
    labels = tuple(labels)
    combos = sorted(combinations(range(len(labels)), r), key=lambda c: tuple(reversed(c)))
    return [tuple(labels[i] for i in c) for c in combos]


def _fam(bases):
    return frozenset(frozenset(b) for b in bases)


@dataclass(frozen=True)
class Matroid:
    ground: tuple
    bases: frozenset
    rank: int
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "ground", sort_labels(self.ground))
        object.__setattr__(self, "bases", _fam(self.bases))
        for b in self.bases:
            if len(b) != self.rank:
                raise InputError(f"basis {sorted(b)} has size {len(b)}, expected {self.rank}")
            if not b <= set(self.ground):
                raise InputError(f"basis {sorted(b)} is not inside the ground set")

    def is_independent(self, labels):
        s = frozenset(labels)
        return any(s <= b for b in self.bases)

    def to_json(self):
        return sorted((sorted(b, key=label_key) for b in self.bases),
                      key=lambda b: [label_key(x) for x in b])

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(b) + "}" for b in self.to_json()) + "}"


def uniform(r, labels):
    return Matroid(tuple(labels), _fam(combinations(labels, r)), r)


def basis_system(F):
    """All n-subsets H of the labels whose coordinate projection is injective on F."""
    if not isinstance(F, GraphComplex):
        raise InputError("basis_system expects a GraphComplex")
    bases = [T for T in colex_subsets(F.labels, F.n) if injective_on(F, T)[0]]
    return Matroid(F.labels, _fam(bases), F.n)


def basis_system_of_set(K, labels, r=None):
    """Basis family of a complex whose columns carry ``labels`` (natural order)."""
    labels = sort_labels(labels)
    if len(labels) != K.ambient_dim:
        raise InputError("label count does not match ambient dimension")
    r = K.dim if r is None else r
    if r < 0:
        return Matroid(labels, frozenset(), 0)
    bases = []
    for T in colex_subsets(labels, r):
        axes = [labels.index(t) + 1 for t in T]
        if injective_on(K, axes)[0]:
            bases.append(T)
    return Matroid(labels, _fam(bases), r)


def check_matroid_axioms(M):
    """Basis-exchange check. Returns (ok, counterexample) with counterexample (H, G, h)."""
    if not M.bases:
        return False, None
    for H in sorted(M.bases, key=sorted):
        for G in sorted(M.bases, key=sorted):
            for h in sorted(H - G):
                if not any((H - {h}) | {g} in M.bases for g in G - H):
                    return False, (tuple(sorted(H, key=label_key)), tuple(sorted(G, key=label_key)), h)
    return True, None


def minor(M, contract=(), restrict_to=None):
    """Contract by an independent set, then restrict to a label subset."""
    I = frozenset(contract)
    if not I <= set(M.ground):
        raise InputError("contraction set is not inside the ground set")
    if not M.is_independent(I):
        raise InputError(f"cannot contract the dependent set {sorted(I)}")
    bases = {B - I for B in M.bases if I <= B}
    ground = [g for g in M.ground if g not in I]
    r = M.rank - len(I)
    if restrict_to is not None:
        R = frozenset(restrict_to)
        if not R <= set(ground):
            raise InputError("restriction set must avoid the contracted labels and lie in the ground set")
        r = max(len(B & R) for B in bases)
        bases = {B & R for B in bases if len(B & R) == r}
        ground = [g for g in ground if g in R]
    return Matroid(tuple(ground), _fam(bases), r)


def linear_matroid(rows, labels, r=None):
    """Column matroid of a matrix whose columns are indexed by ``labels``."""
    r = matrix_rank(rows) if r is None else r
    bases = []
    for T in colex_subsets(labels, r):
        cols = [labels.index(t) for t in T]
        if matrix_rank([[row[c] for c in cols] for row in rows]) == r:
            bases.append(T)
    return Matroid(tuple(labels), _fam(bases), r)


def tangent_matroid(F):
    """Largest per-simplex linear matroid of the graph's affine pieces.

    When the per-simplex families are not nested, the largest family is
    returned and ``note`` records the incomparability.
    """
    K = F.complex
    labels = F.labels
    fams = {}
    for s in K.top_simplices:
        pts = K.coords(s)
        rows = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
        fams.setdefault(linear_matroid(rows, labels, F.n).bases, s)
    maximal = [f for f in fams if not any(f < g for g in fams)]
    best = max(maximal, key=lambda f: (len(f), sorted(sorted(b) for b in f)))
    note = "" if len(maximal) == 1 else "incomparable per-simplex matroids"
    return Matroid(labels, best, F.n, note)


def independence_check(F, H):
    H = tuple(H)
    if not H:
        return True
    return image_dimension(F, H) == len(H)
