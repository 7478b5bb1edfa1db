from hypothesis import assume, given, strategies as st
import pytest

from monocell import fixtures as fx
from monocell import mono
from monocell import plcore as pc
from monocell.errors import InputError, OracleDisagreement, PreconditionError
from monocell.linear import Q
from monocell.mono import ABOVE, BELOW, Behavior, GridConfig
from monocell.plcore import EQ, GT, LT, Complex, ConeDescriptor, GraphComplex

from _instances import box_cut, entries, negate, permute

MAPS = entries(lambda e: e.kind == "map" and e.k >= 1)
FUNCTIONS = entries(lambda e: e.k == 1 and e.kind in ("map", "function"))
SETS = entries(lambda e: e.kind == "set")
# n = 3 graphs cost seconds per check; property draws stay at n <= 2 plus one fixed n = 3 case
SMALL_FUNCTIONS = [e for e in FUNCTIONS if e.n <= 2]
ONE_N3 = next(e for e in FUNCTIONS if e.n == 3)


# -- semi-monotone sets -------------------------------------------------------------

def test_semi_monotone_examples():
    assert mono.is_semi_monotone(fx.unit_square()).holds
    assert mono.is_semi_monotone(fx.triangle()).holds
    v = mono.is_semi_monotone(fx.u_shape())
    assert not v.holds
    assert v.witness.cone == ConeDescriptor.of((2, EQ, Q(1, 2)))
    assert v.witness.points == ((Q(1, 2), Q(1, 2)), (Q(5, 2), Q(1, 2)))
    assert mono.recheck_disconnection(fx.u_shape(), v.witness)


def test_semi_monotone_routes_agree_and_can_run_alone():
    for K in (fx.unit_square(), fx.u_shape(), fx.fan_triangle(), fx.grid_triangle(3)):
        direct = mono.is_semi_monotone(K, route="direct").holds
        assert mono.is_semi_monotone(K, route="recursive").holds == direct


def test_semi_monotone_rejects_lower_dimensional_input():
    seg = Complex(2, [(0, 0), (1, 1)], [(0, 1)])
    with pytest.raises(InputError):
        mono.is_semi_monotone(seg)


def test_verdict_witness_iff_false():
    for K in (fx.unit_square(), fx.u_shape(), fx.two_triangles_at_vertex()):
        v = mono.is_semi_monotone(K)
        assert (v.witness is None) == v.holds


# -- functions ----------------------------------------------------------------------

def test_coordinate_behavior_examples():
    assert mono.coordinate_behavior(fx.sum_square(), 1) == Behavior.INCREASING
    x2 = fx.graph_of(fx.unit_square(), lambda a, b: b)
    assert mono.coordinate_behavior(x2, 1) == Behavior.INDEPENDENT
    assert mono.coordinate_behavior(fx.saddle_example(), 1) == Behavior.NONE


def test_level_monotone_examples():
    P = fx.paraboloid_triangle()
    assert mono.is_level_monotone(P, BELOW).holds
    above = mono.is_level_monotone(P, ABOVE)
    assert not above.holds
    assert mono.recheck_witness(P, above.witness)
    S = fx.sum_square()
    assert mono.is_level_monotone(S, BELOW).holds and mono.is_level_monotone(S, ABOVE).holds
    C = fx.graph_of(fx.unit_square(), lambda a, b: Q(1, 2))
    assert mono.is_level_monotone(C, BELOW).holds


def test_level_monotone_needs_a_semi_monotone_domain():
    F = fx.graph_of(fx.u_shape(), lambda a, b: a)
    with pytest.raises(PreconditionError):
        mono.is_level_monotone(F, BELOW)


def test_monotone_function_examples():
    assert mono.is_monotone_function(fx.paraboloid_square()).holds
    assert not mono.is_monotone_function(fx.paraboloid_triangle()).holds
    v = mono.is_monotone_function(fx.saddle_example())
    assert not v.holds and v.witness.kind == "behavior"
    assert v.witness.detail["axis"] == "x1"


def test_monotone_function_routes_can_run_alone():
    for F in (fx.paraboloid_square(), fx.paraboloid_triangle(), fx.sum_square()):
        verdicts = {mono.is_monotone_function(F, routes=(r,)).holds for r in mono.FUNCTION_ROUTES}
        assert len(verdicts) == 1


# -- maps ---------------------------------------------------------------------------

def test_quasi_affine_examples():
    assert mono.is_quasi_affine(fx.affine_map_square()).holds
    parabola = fx.cube_interval_graph([1, Q(1, 4), 0, Q(1, 4), 1])
    v = mono.is_quasi_affine(parabola)
    assert not v.holds and v.witness.detail["T"] == ["y1"]
    cubic = fx.cube_interval_graph([-1, Q(-1, 8), 0, Q(1, 8), 1])
    assert mono.is_quasi_affine(cubic).holds


def test_monotone_map_examples():
    assert mono.is_monotone_map(fx.affine_map_square()).holds
    R = fx.ratio_map()
    v = mono.is_monotone_map(R)
    assert not v.holds and v.witness.kind == "basis-mismatch"
    b1, b2 = v.witness.detail["b_values"]
    bases = v.witness.detail["bases"]
    assert bases[0] != bases[1]
    assert mono.recheck_witness(R, v.witness)
    # the slice family through y1 = 1 is the odd one out
    assert b1 < 1 < 2


def test_ratio_map_components_are_monotone():
    R = fx.ratio_map()
    for lab in R.codomain_axes:
        assert mono.is_monotone_function(mono.component_graph(R, lab)).holds


def test_connectivity_mode_on_non_quasi_affine_input():
    parabola = fx.cube_interval_graph([1, Q(1, 4), 0, Q(1, 4), 1])
    v = mono.is_monotone_map(parabola, mode="connectivity")
    assert not v.holds and v.witness.kind == "not-quasi-affine"
    with pytest.raises(PreconditionError):
        mono.is_monotone_map(parabola, mode="connectivity", strict=True)


def test_unknown_mode():
    with pytest.raises(InputError):
        mono.is_monotone_map(fx.sum_square(), mode="guess")


@pytest.mark.parametrize("e", SMALL_FUNCTIONS[:20] + [ONE_N3], ids=lambda e: e.name)
def test_single_component_map_matches_function_verdict(e):
    assert mono.is_monotone_map(e.instance).holds == mono.is_monotone_function(e.instance).holds


# -- fibers, envelopes, splitting, sign conditions ----------------------------------------

def test_fiber_examples():
    S = fx.sum_square()
    G = mono.fiber_restrict(S, [("y1", Q(1, 2))])
    assert G.domain_axes == ("x1",) and G.codomain_axes == ("x2",)
    for v in G.complex.vertices:
        assert v[G.col("x1")] + v[G.col("x2")] == Q(1, 2)
    assert max(v[G.col("x1")] for v in G.complex.vertices) == Q(1, 2)
    C = fx.graph_of(fx.unit_square(), lambda a, b: Q(1, 2))
    same = mono.fiber_restrict(C, [("y1", Q(1, 2))])
    assert same.domain_axes == ("x1", "x2") and same.codomain_axes == ()
    assert len(same.complex.top_simplices) == len(C.complex.top_simplices)
    assert mono.fiber_restrict(C, [("y1", 1)]) is None
    assert mono.fiber_restrict(S, [("y1", 5)]) is None
    with pytest.raises(InputError):
        mono.fiber_restrict(S, [("x1", Q(1, 2))])


def _values_at_domain(G):
    return {tuple(v[G.col(x)] for x in G.domain_axes): v[G.col(G.codomain_axes[0])]
            for v in G.complex.vertices}


def test_envelope_examples():
    E = mono.envelope(fx.sum_square(), "Inf")
    assert E.domain_axes == ("x1",)
    assert all(y == x[0] for x, y in _values_at_domain(E).items())
    E = mono.envelope(fx.graph_of(fx.unit_square(), lambda a, b: b), "Inf")
    assert set(_values_at_domain(E).values()) == {0}
    E = mono.envelope(fx.paraboloid_square(), "Sup")
    assert all(y == x[0] ** 2 + 1 for x, y in _values_at_domain(E).items())


def test_split_examples():
    sq = fx.unit_square()
    diag = GraphComplex(Complex(2, [(0, 0), (1, 1)], [(0, 1)]), ("x1",), ("x2",))
    parts = mono.split_by_graph(sq, diag)
    assert len(parts) == 2
    assert all(mono.is_semi_monotone(P).holds for P in parts)
    half = GraphComplex(Complex(2, [(0, Q(1, 2)), (1, Q(1, 2))], [(0, 1)]), ("x1",), ("x2",))
    lo, hi = mono.split_by_graph(sq, half)
    assert max(v[1] for v in lo.vertices) == Q(1, 2) and min(v[1] for v in hi.vertices) == Q(1, 2)
    chord = GraphComplex(Complex(2, [(0, 0), (Q(2, 3), Q(1, 3))], [(0, 1)]), ("x1",), ("x2",))
    assert all(mono.is_semi_monotone(P).holds for P in mono.split_by_graph(fx.triangle(), chord))


def test_split_rejects_a_graph_ending_inside():
    inner = GraphComplex(Complex(2, [(Q(1, 4), Q(1, 2)), (Q(3, 4), Q(1, 2))], [(0, 1)]), ("x1",), ("x2",))
    with pytest.raises(PreconditionError):
        mono.split_by_graph(fx.unit_square(), inner)


def test_sign_condition_examples():
    K0 = fx.k0_view(fx.unit_square())
    R = mono.sign_condition_region(K0, [(mono.affine_cut(K0, {"x1": 1}, Q(-1, 2)), GT)])
    assert min(v[0] for v in R.vertices) == Q(1, 2) and R.dim == 2
    S = fx.sum_square()
    R = mono.sign_condition_region(S, [(mono.affine_cut(S, {"y1": 1}, -1), LT),
                                       (mono.affine_cut(S, {"x1": 1}, Q(-1, 2)), GT)])
    corners = {v[:2] for v in R.vertices}
    assert {(Q(1, 2), 0), (1, 0), (Q(1, 2), Q(1, 2))} <= corners
    cut = mono.affine_cut(K0, {"x1": 1}, Q(-1, 2))
    R = mono.sign_condition_region(K0, [(cut, EQ), (cut, EQ)])
    assert R.dim == 1


# -- properties -------------------------------------------------------------------------

@given(st.sampled_from(SMALL_FUNCTIONS + entries(lambda e: e.kind == "negative" and e.k == 1 and e.n <= 2)))
def test_negation_symmetry(e):
    F = e.instance
    assert mono.is_monotone_function(F).holds == mono.is_monotone_function(negate(F)).holds
    below = mono.is_level_monotone(F, BELOW).holds if mono.is_semi_monotone(pc.domain_complex(F)).holds else None
    if below is not None:
        assert below == mono.is_level_monotone(negate(F), ABOVE).holds


@given(st.sampled_from(SETS + [None] * 3), st.permutations(range(3)), st.sampled_from(range(4)))
def test_permutation_stability(e, perm, which):
    K = e.instance.complex if e else [fx.unit_square(), fx.u_shape(), fx.triangle(), fx.fan_triangle()][which]
    perm = [p for p in perm if p < K.ambient_dim]
    assert mono.is_semi_monotone(K).holds == mono.is_semi_monotone(permute(K, perm)).holds


@given(st.sampled_from(SETS), st.data())
def test_cone_sections_of_semi_monotone_sets(e, data):
    K = e.instance.complex
    atoms = []
    for axis in range(1, K.ambient_dim + 1):
        rel = data.draw(st.sampled_from((None, LT, GT, EQ)))
        if rel:
            atoms.append((axis, rel, data.draw(st.sampled_from(pc.canonical_grid(pc.critical_values(K, axis))))))
    S = pc.intersect_cone(K, ConeDescriptor(tuple(atoms)))
    assume(not S.is_empty() and S.dim == K.ambient_dim)
    assert mono.is_semi_monotone(S).holds


@given(st.sampled_from(MAPS))
def test_monotone_maps_are_quasi_affine_and_componentwise_monotone(e):
    F = e.instance
    assert mono.is_monotone_map(F).holds
    assert mono.is_quasi_affine(F).holds
    for lab in F.codomain_axes:
        assert mono.is_monotone_map(mono.component_graph(F, lab)).holds


@given(st.sampled_from(MAPS), st.data())
def test_box_restriction(e, data):
    F = e.instance
    lab = data.draw(st.sampled_from(F.labels))
    grid = pc.canonical_grid(F.values(lab))
    assume(len(grid) >= 3)
    lo = data.draw(st.sampled_from(grid[:-1]))
    hi = data.draw(st.sampled_from([g for g in grid if g > lo]))
    P = box_cut(F, lab, lo, hi)
    assume(not P.complex.is_empty() and P.complex.dim == F.n)
    assert mono.is_monotone_map(P).holds


@given(st.sampled_from(MAPS), st.data())
def test_sign_sets_are_semi_monotone(e, data):
    F = e.instance
    atoms = []
    for lab in F.codomain_axes:
        rel = data.draw(st.sampled_from((None, LT, GT)))
        if rel:
            atoms.append((F.axis(lab), rel, data.draw(st.sampled_from(pc.canonical_grid(F.values(lab))))))
    K = pc.intersect_cone(F.complex, ConeDescriptor(tuple(atoms)))
    assume(not K.is_empty() and K.dim == F.n)
    assert mono.is_semi_monotone(pc.domain_complex(GraphComplex(K, F.domain_axes, F.codomain_axes))).holds


@given(st.sampled_from([e for e in SMALL_FUNCTIONS if e.n == 2] + [ONE_N3]))
def test_monotone_function_characterization_forward(e):
    """A monotone function not independent of x_n has sub/supermonotone envelopes and monotone x_n-sections."""
    F = e.instance
    xn = F.domain_axes[-1]
    assume(mono.coordinate_behavior(F, xn) != Behavior.INDEPENDENT)
    for j in range(F.n):
        assert mono.coordinate_behavior(F, j + 1) != Behavior.NONE
    assert mono.is_level_monotone(mono.envelope(F, "Inf"), BELOW).holds
    assert mono.is_level_monotone(mono.envelope(F, "Sup"), ABOVE).holds
    for a in pc.canonical_grid(F.values(xn))[1:-1]:
        L = pc.intersect_cone(F.complex, ConeDescriptor.of((F.axis(xn), EQ, a)))
        rest = [x for x in F.labels if x != xn]
        G = GraphComplex(pc.project_columns(L, [F.col(x) for x in rest]), F.domain_axes[:-1], F.codomain_axes)
        assert mono.is_monotone_function(G).holds


@given(st.sampled_from(MAPS[:30]), st.integers(0, 10 ** 6))
def test_fuzzed_grid_keeps_the_verdict(e, seed):
    cfg = GridConfig(fuzz=4, seed=seed)
    assert mono.is_monotone_map(e.instance, cfg=cfg).holds


def test_disagreeing_oracles_raise():
    # a folded (non-embedded) complex is outside every oracle's contract; both
    # routes still run, and a split verdict must surface as an error
    from monocell import toric
    E = toric.ExponentData.of([[1, 1], [3, 2]])
    from monocell.fixtures import freudenthal
    g = toric.log_grid(3)
    verts, tops = freudenthal([g, g])
    pts = [toric.toric_eval(E, v) for v in verts]
    folded = GraphComplex(Complex(2, pts, tops), ("x1", "x2"), ())
    try:
        v = mono.is_monotone_map(folded)
    except OracleDisagreement:
        return
    assert not v.holds
