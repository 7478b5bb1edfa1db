from hypothesis import given, strategies as st

from monocell import fixtures as fx
from monocell import plcore as pc
from monocell import topo, toric
from monocell.linear import Q, rank
from monocell.plcore import Complex

from _instances import entries

MAPS = entries(lambda e: e.kind == "map" and e.n <= 2)


def boundary_square():
    return Complex(2, [(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def dense_betti(K):
    """Betti numbers from dense boundary matrices and the general rank routine."""
    faces = sorted(set(K.faces), key=lambda f: (len(f), f))
    top = max(len(f) for f in faces) - 1
    by_dim = [[f for f in faces if len(f) == d + 1] for d in range(top + 1)]
    ranks = [0] * (top + 2)
    for d in range(1, top + 1):
        lower = {f: i for i, f in enumerate(by_dim[d - 1])}
        mat = [[Q(0)] * len(by_dim[d]) for _ in by_dim[d - 1]]
        for j, f in enumerate(by_dim[d]):
            for i in range(len(f)):
                mat[lower[f[:i] + f[i + 1:]]][j] = Q((-1) ** i)
        ranks[d] = rank(mat)
    return [len(by_dim[d]) - ranks[d] - ranks[d + 1] for d in range(top + 1)]


def test_euler_examples():
    assert topo.euler_characteristic(fx.unit_square()) == 1
    assert topo.euler_characteristic(boundary_square()) == 0
    two = Complex(1, [(0,), (1,), (2,), (3,)], [(0, 1), (2, 3)])
    assert topo.euler_characteristic(two) == 2


def test_homology_examples():
    assert topo.homology_ranks(fx.unit_square(), 1) == [1, 0]
    assert topo.homology_ranks(boundary_square(), 1) == [1, 1]
    F = toric.toric_pl_sample(toric.ExponentData.of([[1, 0], [0, 1], [1, 1]]), 4)
    front = pc.complex_from_faces(F.complex.vertices, F.complex.ambient_dim, F.complex.frontier_face_set)
    assert topo.homology_ranks(front, 1) == [1, 1]


@given(st.sampled_from(MAPS + entries(lambda e: e.kind == "negative" and e.n <= 2)))
def test_homology_matches_dense_oracle(e):
    K = e.instance.complex
    closed = pc.complex_from_faces(K.vertices, K.ambient_dim, set(K.faces))
    assert topo.homology_ranks(closed) == dense_betti(closed)
    betti = dense_betti(closed)
    assert sum((-1) ** i * b for i, b in enumerate(betti)) == topo.euler_characteristic(closed)


def test_evidence_examples():
    assert topo.regular_cell_evidence(fx.k0_view(fx.unit_square())).passed
    F = toric.toric_pl_sample(toric.ExponentData.of([[1, 0], [0, 1], [1, 1]]), 4)
    assert topo.regular_cell_evidence(F).passed
    ev = topo.regular_cell_evidence(fx.two_triangles_at_vertex())
    assert not ev.passed and not ev.connected


def _in_closed_union(K, p):
    for t in K.top_simplices:
        a, b, c = K.coords(t)
        det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])
        l1 = ((p[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (p[1] - a[1])) / det
        l2 = ((b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1])) / det
        if l1 >= 0 and l2 >= 0 and l1 + l2 <= 1:
            return True
    return False


def sampled_glue(K, c, xs, delta=Q(1, 997)):
    """Closure identity on the line x2 = c, from disc samples around each point.

    A point is near one side when some sampled small disc on that side lies
    in the closed union; it is near the slice when a short slice segment does.
    """
    dirs = [(Q(i, 8), Q(1)) for i in range(-32, 33)]
    for x in xs:
        def side(sign):
            return any(all(_in_closed_union(K, (x + d[0] * delta * s + e, c + sign * delta * s))
                           for e in (-delta / 8, 0, delta / 8))
                       for d in dirs for s in (1, Q(1, 2)))
        on_slice = any(all(_in_closed_union(K, (x + sign * delta * s, c + e))
                           for e in (-delta / 8, 0, delta / 8))
                       for sign in (-1, 1) for s in (1, Q(1, 2)))
        if (side(1) and side(-1)) != on_slice:
            return False
    return True


def test_glue_examples():
    assert topo.glue_check(fx.unit_square(), 1, Q(1, 2))
    assert topo.glue_check(fx.sum_square(), 3, 1)
    # the arch's two legs meet the cut line in two segments, and the closures
    # of both sides meet exactly there
    assert topo.glue_check(fx.u_shape(), 2, Q(1, 2))
    xs = [Q(i, 8) for i in range(25)]
    assert sampled_glue(fx.u_shape(), Q(1, 2), xs)
    # a pinch point on the cut line: the sides touch where the slice is empty
    assert not topo.glue_check(fx.two_triangles_at_vertex(), 2, 1)
    assert not sampled_glue(fx.two_triangles_at_vertex(), Q(1), [Q(i, 8) for i in range(17)])


def test_side_complexes_partition_the_square():
    sq = fx.unit_square()
    lo, mid, hi = (topo.side_complex(sq, 1, Q(1, 3), s) for s in (-1, 0, 1))
    assert lo.dim == hi.dim == 2 and mid.dim == 1
    assert max(v[0] for v in lo.vertices) == Q(1, 3) == min(v[0] for v in hi.vertices)


@given(st.sampled_from(MAPS))
def test_generated_maps_pass_evidence(e):
    assert topo.regular_cell_evidence(e.instance).passed
