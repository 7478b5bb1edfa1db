from fractions import Fraction
import json

from hypothesis import given, strategies as st
import pytest

from monocell import fixtures as fx
from monocell import plcore as pc
from monocell.errors import InputError, PreconditionError
from monocell.linear import Q
from monocell.plcore import EQ, GT, LT, Complex, ConeDescriptor, GraphComplex


def cone(*atoms):
    return ConeDescriptor.of(*atoms)


def seg_set(K):
    return sorted(tuple(sorted(K.coords(s))) for s in K.top_simplices)


def test_to_fraction_and_fmt():
    assert pc.to_fraction("3/6") == Q(1, 2)
    assert pc.to_fraction(Fraction(2, 4)) == Q(1, 2)
    assert pc.fmt(0) == "0/1"
    assert pc.fmt("-4/6") == "-2/3"
    with pytest.raises(InputError):
        pc.to_fraction(0.5)
    with pytest.raises(InputError):
        pc.to_fraction("1/0")


def test_cone_rejects_duplicate_axis():
    with pytest.raises(InputError):
        cone((1, EQ, 0), (1, LT, 1))


def test_square_axis_slice_is_a_segment():
    S = pc.intersect_cone(fx.unit_square(), cone((2, EQ, Q(1, 2))))
    assert S.dim == 1
    pts = sorted({v for s in S.top_simplices for v in S.coords(s)})
    assert pts[0] == (0, Q(1, 2)) and pts[-1] == (1, Q(1, 2))
    assert pc.open_components(S)[0] == 1


def test_triangle_half_space_clip():
    S = pc.intersect_cone(fx.triangle(), cone((1, GT, Q(1, 2))))
    corners = {v for s in S.top_simplices for v in S.coords(s)}
    assert corners == {(Q(1, 2), 0), (1, 0), (Q(1, 2), Q(1, 2))}
    assert S.dim == 2


def test_u_shape_slice_has_two_segments():
    S = pc.intersect_cone(fx.u_shape(), cone((2, EQ, Q(1, 2))))
    n, _ = pc.open_components(S)
    assert n == 2


def test_open_components_examples():
    assert pc.open_components(fx.unit_square())[0] == 1
    assert pc.open_components(fx.two_triangles_at_vertex())[0] == 2
    assert pc.open_components(pc.empty_complex(2))[0] == 0


def test_frontier_examples():
    F = pc.frontier(fx.unit_square())
    assert F.dim == 1 and len(F.top_simplices) == 4
    F = pc.frontier(fx.unit_interval())
    assert sorted(F.coords(s)[0] for s in F.top_simplices) == [(0,), (1,)]
    F = pc.frontier(fx.fan_triangle())
    assert len(F.top_simplices) == 3
    # the interior vertex (1, 1) is on no frontier edge
    assert all((1, 1) not in F.coords(s) for s in F.top_simplices)


def test_critical_values_examples():
    assert pc.critical_values(fx.unit_square(), 1) == [0, 1]
    assert pc.critical_values(fx.u_shape(), 1) == [0, 1, 2, 3]
    assert pc.critical_values(fx.triangle(), 2) == [0, 1]
    assert pc.canonical_grid([0, 1]) == [0, Q(1, 2), 1]


def test_injective_on_examples():
    F = fx.sum_square()
    assert pc.injective_on(F, ("x1", "x2"))[0]
    assert pc.injective_on(F, ("x1", "y1"))[0]
    C = fx.graph_of(fx.unit_square(), lambda a, b: Q(1, 2))
    ok, pair = pc.injective_on(C, ("x1", "y1"))
    assert not ok
    p, q = pair
    assert p[0] == q[0] and p[2] == q[2] and p[1] != q[1]


def test_image_dimension_examples():
    assert pc.image_dimension(fx.unit_square(), [1]) == 1
    assert pc.image_dimension(fx.sum_square(), ("x1", "x2", "y1")) == 2
    seg = Complex(3, [(0, 0, 0), (1, 1, 2)], [(0, 1)])
    assert pc.image_dimension(seg, [1, 2]) == 1


def test_project_injective_examples():
    F = fx.sum_square()
    G = pc.project_injective(F, ("x1", "y1"))
    assert G.domain_axes == ("x1", "y1") and G.codomain_axes == ("x2",)
    for v in G.complex.vertices:
        assert v[G.col("x2")] == v[G.col("y1")] - v[G.col("x1")]
    up = fx.cube_interval_graph([-1, 0, 1])
    assert pc.project_injective(up, ("y1",)).domain_axes == ("y1",)
    C = fx.graph_of(fx.unit_square(), lambda a, b: Q(1, 2))
    with pytest.raises(PreconditionError):
        pc.project_injective(C, ("x1", "y1"))


def test_check_valid_rejects_overlap():
    bad = Complex(2, [(0, 0), (2, 0), (0, 2), (1, 1), (2, 2)], [(0, 1, 2), (1, 3, 4)])
    with pytest.raises(InputError):
        pc.check_valid(bad)
    assert pc.check_valid(fx.u_shape())


def test_json_round_trip_is_bit_exact():
    for name, make in fx.FIXTURES.items():
        x = make()
        text = json.dumps(pc.instance_to_json(x), sort_keys=True)
        back = pc.instance_from_json(json.loads(text))
        assert json.dumps(pc.instance_to_json(back), sort_keys=True) == text, name


# -- properties -----------------------------------------------------------------

SETS = {"square": fx.unit_square, "triangle": fx.triangle, "u-shape": fx.u_shape,
        "fan": fx.fan_triangle, "grid-triangle": lambda: fx.grid_triangle(3)}


@st.composite
def cone_and_point(draw):
    K = SETS[draw(st.sampled_from(sorted(SETS)))]()
    atoms = []
    for axis in range(1, K.ambient_dim + 1):
        rel = draw(st.sampled_from((None, LT, EQ, GT)))
        if rel is None:
            continue
        c = draw(st.sampled_from(pc.canonical_grid(pc.critical_values(K, axis))))
        atoms.append((axis, rel, c))
    p = []
    for axis in range(1, K.ambient_dim + 1):
        eq = [c for a, r, c in atoms if a == axis and r == EQ]
        p.append(eq[0] if eq else Q(draw(st.integers(-4, 52)), 16))
    return K, ConeDescriptor(tuple(atoms)), tuple(p)


@given(cone_and_point())
def test_slicing_soundness(args):
    K, C, p = args
    S = pc.intersect_cone(K, C)
    assert pc.in_open_realization(S, p) == (pc.in_open_realization(K, p) and C.contains(p))


@given(cone_and_point())
def test_intersect_cone_is_idempotent(args):
    K, C, p = args
    once = pc.intersect_cone(K, C)
    twice = pc.intersect_cone(once, C)
    assert pc.in_open_realization(once, p) == pc.in_open_realization(twice, p)


@given(st.sampled_from(sorted(fx.FIXTURES)))
def test_graph_fixtures_are_injective_over_their_domain(name):
    x = fx.FIXTURES[name]()
    if isinstance(x, GraphComplex):
        assert pc.injective_on(x, x.domain_axes)[0]


@given(st.sampled_from(["sum-square", "affine-map", "paraboloid-square", "ratio-map"]), st.data())
def test_image_dimension_is_monotone_in_the_axis_set(name, data):
    F = fx.FIXTURES[name]()
    T = data.draw(st.lists(st.sampled_from(F.labels), min_size=1, unique=True))
    extra = data.draw(st.sampled_from(F.labels))
    assert pc.image_dimension(F, T) <= pc.image_dimension(F, sorted(set(T) | {extra}))


def test_frontier_of_frontier_drops_two_dimensions():
    for K in (fx.unit_square(), fx.triangle(), fx.grid_box((0, 0, 0), (1, 1, 1), 2)):
        FF = pc.frontier(pc.frontier(K))
        assert FF.dim <= K.dim - 2
