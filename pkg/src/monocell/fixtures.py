"""Small named instances used by tests, the CLI and the acceptance runner."""
from itertools import permutations, product

from .linear import Q
from .plcore import Complex, GraphComplex, graph_from_function, default_labels

F = Q


def freudenthal(axes_values):
    """Freudenthal triangulation of a product grid.

    axes_values: per-axis increasing lists of coordinates. Returns
    (vertices, tops) where tops are sorted index tuples.
    """
    n = len(axes_values)
    sizes = [len(v) for v in axes_values]
    index = {}
    verts = []
    for idx in product(*[range(s) for s in sizes]):
        index[idx] = len(verts)
        verts.append(tuple(axes_values[a][i] for a, i in enumerate(idx)))
    tops = []
    for cell in product(*[range(s - 1) for s in sizes]):
        for perm in permutations(range(n)):
            cur = list(cell)
            simplex = [index[tuple(cur)]]
            for a in perm:
                cur[a] += 1
                simplex.append(index[tuple(cur)])
            tops.append(tuple(sorted(simplex)))
    return verts, tops


def grid_box(lows, highs, r):
    """Box triangulated by a Freudenthal grid with r points per axis."""
    axes = [[lo + (hi - lo) * F(i, r - 1) for i in range(r)] for lo, hi in zip(lows, highs)]
    verts, tops = freudenthal(axes)
    return Complex(len(lows), verts, tops)


def unit_square():
    return Complex(2, [(0, 0), (1, 0), (0, 1), (1, 1)], [(0, 1, 3), (0, 2, 3)])


def unit_interval():
    return Complex(1, [(0,), (1,)], [(0, 1)])


def triangle():
    return Complex(2, [(0, 0), (1, 0), (0, 1)], [(0, 1, 2)])


def u_shape():
    """[0,3]x[0,2] with the unit cell over [1,2]x[0,1] removed."""
    verts, tops = freudenthal([[F(i) for i in range(4)], [F(j) for j in range(3)]])
    hole = {(1, 0)}
    keep = []
    for t in tops:
        lo = tuple(min(verts[i][a] for i in t) for a in range(2))
        if lo not in hole:
            keep.append(t)
    return Complex(2, verts, keep)


def two_triangles_at_vertex():
    return Complex(2, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)], [(0, 1, 2), (2, 3, 4)])


def fan_triangle():
    return Complex(2, [(0, 0), (3, 0), (0, 3), (1, 1)], [(0, 1, 3), (1, 2, 3), (0, 2, 3)])


def grid_triangle(r):
    """conv{(0,0),(1,0),(0,1)} cut into r^2 triangles by a grid with anti-diagonals."""
    index = {}
    verts = []
    for i in range(r + 1):
        for j in range(r + 1 - i):
            index[(i, j)] = len(verts)
            verts.append((F(i, r), F(j, r)))
    tops = []
    for i in range(r):
        for j in range(r - i):
            tops.append((index[(i, j)], index[(i + 1, j)], index[(i, j + 1)]))
            if i + j + 2 <= r:
                tops.append((index[(i + 1, j)], index[(i, j + 1)], index[(i + 1, j + 1)]))
    return Complex(2, verts, tops)


def graph_of(domain, fn, k=1):
    """Graph of a function given as a Python callable on vertex coordinates."""
    vals = []
    for v in domain.vertices:
        out = fn(*v)
        vals.append(tuple(out) if isinstance(out, (tuple, list)) else (out,))
    return graph_from_function(domain, vals)


def k0_view(K):
    dom, _ = default_labels(K.ambient_dim, 0)
    return GraphComplex(K, dom, ())


def sum_square():
    return graph_of(unit_square(), lambda a, b: a + b)


def paraboloid_triangle(r=4):
    return graph_of(grid_triangle(r), lambda a, b: a * a + b * b)


def paraboloid_square(r=4):
    return graph_of(grid_box((0, 0), (1, 1), r + 1), lambda a, b: a * a + b * b)


def saddle_example(r=2):
    """PL interpolant of x1*x2 (x2 >= 0) and (1-x1)*x2 (x2 <= 0) on (0,1)x(-1,1)."""
    axes = [[F(i, r) for i in range(r + 1)], [F(j - r, r) for j in range(2 * r + 1)]]
    verts, tops = freudenthal(axes)
    dom = Complex(2, verts, tops)
    return graph_of(dom, lambda a, b: a * b if b >= 0 else (1 - a) * b)


def ratio_map(r=3):
    """PL encoding of (x2/x1, x1-x2) on (1/2,1)^2 with diagonals on x1 = x2."""
    dom = grid_box((F(1, 2), F(1, 2)), (1, 1), r)
    return graph_of(dom, lambda a, b: (b / a, a - b), k=2)


def ratio_component(i, r=3):
    dom = grid_box((F(1, 2), F(1, 2)), (1, 1), r)
    fn = (lambda a, b: b / a) if i == 1 else (lambda a, b: a - b)
    return graph_of(dom, fn)


def affine_map_square():
    return graph_of(unit_square(), lambda a, b: (a + b, a - b), k=2)


def cube_interval_graph(values):
    """Graph over (-1,1) with the given vertex values at evenly spaced points."""
    n = len(values)
    dom = Complex(1, [(F(-1) + F(2 * i, n - 1),) for i in range(n)], [(i, i + 1) for i in range(n - 1)])
    return graph_from_function(dom, [(F(v),) for v in values])


FIXTURES = {
    "unit-interval": unit_interval,
    "unit-square": unit_square,
    "triangle": triangle,
    "u-shape": u_shape,
    "two-triangles": two_triangles_at_vertex,
    "fan": fan_triangle,
    "sum-square": sum_square,
    "affine-map": affine_map_square,
    "paraboloid-triangle": paraboloid_triangle,
    "paraboloid-square": paraboloid_square,
    "saddle": saddle_example,
    "ratio-map": ratio_map,
}

TORIC_FIXTURES = {
    "curve": [[1], [2]],
    "surface": [[1, 0], [0, 1], [1, 1]],
    "point": [[0]],
}
