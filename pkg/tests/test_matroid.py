from itertools import combinations

from hypothesis import given, strategies as st
import pytest

from monocell import fixtures as fx
from monocell import plcore as pc
from monocell.errors import InputError
from monocell.gen import GenConfig, affine_graph, gen_monotone_map
from monocell.linear import Q, rank
from monocell.matroid import (Matroid, basis_system, check_matroid_axioms, colex_subsets,
                              independence_check, minor, tangent_matroid, uniform)

from _instances import entries

MAPS = entries(lambda e: e.kind == "map" and e.k >= 1)


def fam(*bases):
    return frozenset(frozenset(b.split()) for b in bases)


def augmentation_oracle(M):
    """Matroid test through the independent-set augmentation axiom on the downward closure."""
    indep = {frozenset(s) for B in M.bases for r in range(len(B) + 1) for s in combinations(B, r)}
    if not M.bases:
        return False
    for I in indep:
        for J in indep:
            if len(I) < len(J) and not any(I | {x} in indep for x in J - I):
                return False
    return True


def test_basis_system_examples():
    line = fx.graph_of(fx.unit_interval(), lambda x: x)
    assert basis_system(line).bases == fam("x1", "y1")
    assert basis_system(fx.sum_square()).bases == fam("x1 x2", "x1 y1", "x2 y1")
    const = fx.graph_of(fx.unit_square(), lambda a, b: Q(1, 3))
    assert basis_system(const).bases == fam("x1 x2")


def test_basis_system_of_affine_graphs_matches_projection_rank():
    # a projection of an affine graph is injective iff its linear part has full rank
    A = [[1, 0], [2, -1]]
    F = affine_graph(fx.unit_square(), A)
    full = [[1, 0], [0, 1], [1, 0], [2, -1]]   # columns x1 x2 y1 y2
    expected = {frozenset(T) for T in colex_subsets(F.labels, 2)
                if rank([[full[F.labels.index(t)][c] for t in T] for c in range(2)]) == 2}
    assert basis_system(F).bases == expected


def test_axiom_examples():
    assert check_matroid_axioms(uniform(2, ["x1", "x2", "x3"]))[0]
    bad = Matroid(("x1", "x2", "y1", "y2"), fam("x1 x2", "y1 y2"), 2)
    ok, witness = check_matroid_axioms(bad)
    assert not ok
    H, G, h = witness
    assert h in H and not any((set(H) - {h}) | {g} in [set(b) for b in bad.bases] for g in set(G) - set(H))


@given(st.sets(st.frozensets(st.sampled_from(["x1", "x2", "y1", "y2"]), min_size=2, max_size=2), min_size=1))
def test_axiom_check_agrees_with_augmentation_oracle(bases):
    M = Matroid(("x1", "x2", "y1", "y2"), frozenset(bases), 2)
    assert check_matroid_axioms(M)[0] == augmentation_oracle(M)


def test_minor_examples():
    U = uniform(2, ["x1", "x2", "x3"])
    C = minor(U, contract={"x1"})
    assert C.ground == ("x2", "x3") and C.bases == fam("x2", "x3") and C.rank == 1
    assert minor(basis_system(fx.sum_square()), contract={"y1"}).bases == fam("x1", "x2")
    R = minor(U, restrict_to={"x1", "x2"})
    assert R.bases == fam("x1 x2")
    with pytest.raises(InputError):
        minor(Matroid(("x1", "y1"), fam("x1"), 1), contract={"y1"})


def test_tangent_matroid_examples():
    F = fx.affine_map_square()
    assert tangent_matroid(F).bases == basis_system(F).bases
    cubic = fx.cube_interval_graph([-1, Q(-1, 8), 0, Q(1, 8), 1])
    assert tangent_matroid(cubic).bases == basis_system(cubic).bases == fam("x1", "y1")


def test_independence_examples():
    assert independence_check(fx.sum_square(), ["x1"])
    const = fx.graph_of(fx.unit_square(), lambda a, b: 1)
    assert not independence_check(const, ["y1"])
    assert independence_check(fx.sum_square(), ["x1", "y1"])


def test_colex_order():
    assert colex_subsets(["a", "b", "c"], 2) == [("a", "b"), ("a", "c"), ("b", "c")]


@given(st.sampled_from(MAPS))
def test_monotone_map_matroid_laws(e):
    F = e.instance
    M = basis_system(F)
    assert check_matroid_axioms(M)[0]
    assert frozenset(F.domain_axes) in M.bases
    assert all(len(B) == F.n for B in M.bases)
    # quasi-affine instances: tangent matroid equals the basis system
    assert tangent_matroid(F).bases == M.bases
    # independence equals extension to a basis
    for r in range(F.n + 1):
        for H in combinations(F.labels, r):
            assert independence_check(F, H) == M.is_independent(H)
    # a codomain label in a basis is never constant
    for B in M.bases:
        for y in B & set(F.codomain_axes):
            assert len(set(F.values(y))) > 1


@given(st.integers(0, 500), st.sampled_from([(1, 1), (2, 1), (2, 2), (1, 2)]))
def test_basis_system_is_deterministic(seed, nk):
    cfg = GenConfig(seed=seed, n=nk[0], k=nk[1], r=2)
    assert basis_system(gen_monotone_map(cfg)) == basis_system(gen_monotone_map(cfg))


@given(st.sampled_from(MAPS))
def test_exchange_projection_keeps_the_basis_system(e):
    F = e.instance
    M = basis_system(F)
    for H in sorted(M.bases, key=sorted):
        G = pc.project_injective(F, tuple(pc.sort_labels(H)))
        assert basis_system(G).bases == M.bases
