"""Property suites run over the seeded corpus by the acceptance runner and scripts.

Each suite returns a SuiteResult; failures are human-readable strings naming
the corpus entry and the property that broke.
"""
from dataclasses import dataclass, field
from itertools import combinations
import random
import time

from . import gen, mono, topo, toric
from . import plcore as pc
from .corpus import build_corpus, monotone_maps
from .errors import MonocellError
from .fixtures import FIXTURES, freudenthal
from .gen import GenConfig
from .linear import Q, ZERO
from .matroid import basis_system, check_matroid_axioms, independence_check, minor, tangent_matroid
from .plcore import GraphComplex


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures and self.checked > 0

    def fail(self, msg):
        self.failures.append(msg)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = f", {len(self.failures)} failures" if self.failures else ""
        return f"{status} {self.name}: {self.checked} checks{extra}, {self.seconds:.1f}s"


class _Timer:
    def __init__(self, res):
        self.res = res

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.res

    def __exit__(self, *exc):
        self.res.seconds = time.perf_counter() - self.t0
        return False


# -- worked examples -------------------------------------------------------------

def example_regressions():
    res = SuiteResult("worked examples")
    with _Timer(res):
        def expect(what, got, want):
            res.checked += 1
            if got != want:
                res.fail(f"{what}: got {got}, expected {want}")

        expect("triangle semi-monotone", mono.is_semi_monotone(FIXTURES["triangle"]()).holds, True)
        u = mono.is_semi_monotone(FIXTURES["u-shape"]())
        expect("u-shape semi-monotone", u.holds, False)
        expect("u-shape witness re-checks", u.witness is not None and mono.recheck_witness(FIXTURES["u-shape"](), u.witness), True)
        pt = FIXTURES["paraboloid-triangle"]()
        expect("paraboloid on triangle, Below", mono.is_level_monotone(pt, mono.BELOW).holds, True)
        expect("paraboloid on triangle, Above", mono.is_level_monotone(pt, mono.ABOVE).holds, False)
        expect("paraboloid on triangle, monotone", mono.is_monotone_function(pt).holds, False)
        expect("paraboloid on square, monotone", mono.is_monotone_function(FIXTURES["paraboloid-square"]()).holds, True)
        sd = FIXTURES["saddle"]()
        expect("saddle axis-1 behavior", mono.coordinate_behavior(sd, 1), mono.Behavior.NONE)
        sv = mono.is_monotone_function(sd)
        expect("saddle monotone", sv.holds, False)
        expect("saddle witness kind", sv.witness.kind if sv.witness else None, "behavior")
        R = FIXTURES["ratio-map"]()
        for lab in R.codomain_axes:
            expect(f"ratio map component {lab}", mono.is_monotone_function(mono.component_graph(R, lab)).holds, True)
        rv = mono.is_monotone_map(R)
        expect("ratio map monotone", rv.holds, False)
        expect("ratio map witness kind", rv.witness.kind if rv.witness else None, "basis-mismatch")
        expect("ratio map witness re-checks", rv.witness is not None and mono.recheck_witness(R, rv.witness), True)
    return res


# -- dual oracles ---------------------------------------------------------------------

def dual_oracle(entries):
    res = SuiteResult("dual-oracle agreement")
    with _Timer(res):
        for e in entries:
            res.checked += 1
            try:
                v = mono.is_monotone_map(e.instance, mode="both")
            except MonocellError as exc:
                res.fail(f"{e.name}: {type(exc).__name__}: {exc}")
                continue
            if e.expected is not None and v.holds != e.expected:
                res.fail(f"{e.name}: verdict {v.holds}, generator expected {e.expected}")
    return res


# -- matroids ----------------------------------------------------------------------------

def fiber_values(F, label, count=5):
    """``count`` values strictly inside the range of a codomain axis, drawn from its canonical grid."""
    grid = pc.canonical_grid(F.values(label))
    inner = grid[1:-1]
    while len(inner) < count:
        pts = [grid[0]] + inner + [grid[-1]]
        inner = sorted(set(inner) | {(a + b) / 2 for a, b in zip(pts, pts[1:])})
    step = len(inner) / count
    return [inner[int(i * step)] for i in range(count)]


def _point_values(F, labels, count, seed):
    rng = random.Random(seed)
    tops = sorted(F.complex.top_simplices)
    picks = rng.sample(tops, min(count, len(tops)))
    out = []
    for s in picks:
        p = pc.barycenter(F.complex.coords(s))
        out.append([(lab, p[F.col(lab)]) for lab in labels])
    return out


def check_fibers(F, M, name, res, count=5):
    """Fibers over independent codomain sets are graphs with the contracted matroid."""
    plans = []
    for lab in F.codomain_axes:
        if M.is_independent({lab}):
            plans.extend([[(lab, b)] for b in fiber_values(F, lab, count)])
    if F.k == 2 and M.is_independent(set(F.codomain_axes)):
        plans.extend(_point_values(F, F.codomain_axes, count, name))
    for assign in plans:
        res.checked += 1
        I = {lab for lab, _ in assign}
        tag = f"{name} fiber " + ",".join(f"{lab}={pc.fmt(b)}" for lab, b in assign)
        fb = mono.fiber_restrict(F, assign)
        if fb is None:
            res.fail(f"{tag}: empty fiber")
            continue
        if fb.n != F.n - len(I) or fb.complex.dim != F.n - len(I):
            res.fail(f"{tag}: fiber dimension {fb.complex.dim}, expected {F.n - len(I)}")
            continue
        want = minor(M, contract=I).bases
        got = basis_system(fb).bases
        if got != want:
            res.fail(f"{tag}: fiber bases {sorted(map(sorted, got))} != contraction {sorted(map(sorted, want))}")
    return len(plans)


def matroid_suite(entries):
    res = SuiteResult("matroid suite")
    with _Timer(res):
        for e in monotone_maps(entries):
            F = e.instance
            M = basis_system(F)
            res.checked += 1
            ok, bad = check_matroid_axioms(M)
            if not ok:
                res.fail(f"{e.name}: exchange axiom fails at {bad}")
            res.checked += 1
            T = tangent_matroid(F)
            if T.bases != M.bases:
                res.fail(f"{e.name}: tangent matroid {T} != basis system {M}")
            res.checked += 1
            if not mono.is_quasi_affine(F).holds:
                res.fail(f"{e.name}: not quasi-affine")
            for r in range(len(F.labels) + 1):
                for H in combinations(F.labels, r):
                    res.checked += 1
                    if independence_check(F, H) != M.is_independent(H):
                        res.fail(f"{e.name}: independence_check{H} disagrees with basis extension")
            check_fibers(F, M, e.name, res)
    return res


# -- projections -------------------------------------------------------------------------

def projection_suite(entries):
    res = SuiteResult("exchange/projection suite")
    with _Timer(res):
        for e in monotone_maps(entries):
            F = e.instance
            M = basis_system(F)
            for H in M.to_json():
                res.checked += 1
                G = pc.project_injective(F, H)
                if not mono.is_semi_monotone(pc.domain_complex(G)).holds:
                    res.fail(f"{e.name}: domain over basis {H} is not semi-monotone")
                if basis_system(G).bases != M.bases:
                    res.fail(f"{e.name}: basis system changed after exchanging to {H}")
            # coordinate projections: only label sets containing a basis project injectively
            for r in range(F.n, len(F.labels)):
                for L in combinations(F.labels, r):
                    H = next((tuple(b) for b in M.to_json() if set(b) <= set(L)), None)
                    if H is None:
                        continue
                    res.checked += 1
                    K = pc.project_columns(F.complex, [F.col(lab) for lab in L])
                    if r == F.n:
                        if not mono.is_semi_monotone(K).holds:
                            res.fail(f"{e.name}: projection to {L} is not semi-monotone")
                        continue
                    P = GraphComplex(K, H, tuple(lab for lab in L if lab not in H))
                    if not mono.is_monotone_map(P).holds:
                        res.fail(f"{e.name}: projection to {L} is not a monotone map")
                    elif basis_system(P).bases != minor(M, restrict_to=L).bases:
                        res.fail(f"{e.name}: projection to {L} does not carry the restricted matroid")
    return res


# -- splitting and gluing -------------------------------------------------------------

def split_instance(seed):
    """A semi-monotone set X and a monotone function graph cutting it from wall to wall.

    Even seeds: a box with a separable monotone graph across it. Odd seeds:
    a prism between two affine functions, cut by their average.
    """
    rng = random.Random(f"split:{seed}")
    n = rng.choice((2, 2, 3))
    r = 3 if n == 2 else 2
    if seed % 2 == 0:
        cfg = GenConfig(seed=seed, n=n - 1, k=1, r=r)
        f = gen.gen_monotone_function(cfg)
        axes = [sorted({v[f.col(x)] for v in f.complex.vertices}) for x in f.domain_axes]
        vals = f.values("y1")
        lo, hi = min(vals), max(vals)
        span = hi - lo + 2
        top = Q(rng.randint(1, 4), 2)
        scaled = [(v - lo + 1) / span * top for v in vals]
        X = gen.box_grid(axes + [[ZERO, top]])
        dom = gen.box_grid(axes)
        order = {v: i for i, v in enumerate(freudenthal(axes)[0])}
        vals_by_vertex = [scaled[order[v]] for v in dom.vertices]
        Sigma = pc.graph_from_function(dom, [(y,) for y in vals_by_vertex])
        return X, Sigma
    base = gen.gen_semi_monotone(GenConfig(seed=seed, n=n - 1, k=0, r=r)) if n > 2 else \
        gen.box_grid([gen._partial_sums(rng, r, 4)])
    a = [Q(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(n - 1)]
    b = [Q(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(n - 1)]
    lower = [sum((x * y for x, y in zip(a, v)), ZERO) for v in base.vertices]
    upper = [sum((x * y for x, y in zip(b, v)), ZERO) for v in base.vertices]
    shift = max(w - u for u, w in zip(upper, lower)) + Q(rng.randint(1, 4), 2)
    upper = [u + shift for u in upper]
    X = gen.prism(base, lower, upper)
    mid = [(u + w) / 2 for u, w in zip(upper, lower)]
    return X, pc.graph_from_function(base, [(y,) for y in mid])


def glue_values(F, label, count=3):
    """Up to ``count`` cut values strictly inside the range of an axis.

    An axis constant on F has none: the hyperplane then contains F, both
    sides are empty and the closure identity degenerates.
    """
    grid = pc.canonical_grid(F.values(label))
    inner = grid[1:-1]
    if len(inner) <= count:
        return inner
    return [inner[(2 * i + 1) * len(inner) // (2 * count)] for i in range(count)]


def split_glue_suite(entries, split_count=50):
    res = SuiteResult("splitting and gluing")
    with _Timer(res):
        for seed in range(split_count):
            res.checked += 1
            X, Sigma = split_instance(seed)
            try:
                parts = mono.split_by_graph(X, Sigma)
            except MonocellError as exc:
                res.fail(f"split {seed}: {type(exc).__name__}: {exc}")
                continue
            if len(parts) != 2 or not all(mono.is_semi_monotone(P).holds for P in parts):
                res.fail(f"split {seed}: pieces are not two semi-monotone sets")
        for e in monotone_maps(entries):
            F = e.instance
            whole = topo.regular_cell_evidence(F).passed
            for lab in F.labels:
                for c in glue_values(F, lab):
                    res.checked += 1
                    tag = f"{e.name} {lab}={pc.fmt(c)}"
                    if not topo.glue_check(F, lab, c):
                        res.fail(f"{tag}: closures of the two sides do not meet in the slice")
                        continue
                    minus = topo.side_complex(F, lab, c, -1)
                    plus = topo.side_complex(F, lab, c, 1)
                    if minus.is_empty() or plus.is_empty():
                        continue
                    pm = topo.regular_cell_evidence(minus).passed
                    pp = topo.regular_cell_evidence(plus).passed
                    if pm and pp and not whole:
                        res.fail(f"{tag}: both sides pass evidence but the union does not")
                    if whole and pm and not pp:
                        res.fail(f"{tag}: complement of a passing side fails evidence")
                    if whole and pp and not pm:
                        res.fail(f"{tag}: complement of a passing side fails evidence")
    return res


# -- regular-cell evidence -----------------------------------------------------------------

def evidence_suite(entries):
    res = SuiteResult("regular-cell evidence")
    with _Timer(res):
        # k = 0 entries are semi-monotone sets, the graphs of maps with no codomain
        for e in (e for e in entries if e.expected is True):
            res.checked += 1
            ev = topo.regular_cell_evidence(e.instance)
            if not ev.passed:
                res.fail(f"{e.name}: {'; '.join(ev.reasons)}")
    return res


# -- toric cubes ------------------------------------------------------------------------------

# hand-picked shapes; d = 3 is limited to coordinate-like rows because general
# d = 3 samples often fold at desk resolutions (see scripts/toric_sweep.py)
TORIC_SUITE = (
    [[1]], [[2]], [[3]], [[0]],
    [[1], [2]], [[1], [1]], [[0], [3]], [[2], [3], [1]], [[1], [0], [2], [3]],
    [[1, 0], [0, 1]], [[1, 0], [0, 1], [1, 1]], [[2, 1], [1, 2]], [[1, 1], [1, 1], [0, 1]],
    [[0, 0], [1, 0], [0, 1]], [[3, 0], [0, 2], [1, 1]], [[1, 2], [2, 1], [3, 3]],
    [[1, 0], [2, 0], [0, 1], [1, 1]], [[0, 1], [0, 1], [1, 0], [0, 0]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 1, 0], [0, 1, 1], [1, 0, 1]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], [[2, 0, 0], [0, 3, 0], [0, 0, 1], [0, 0, 0]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 1]],
)


def random_matrices(d, count, seed=0, max_entry=3, max_rows=4):
    """Distinct random full-rank exponent matrices with d columns."""
    rng = random.Random(f"toric-sweep:{d}:{seed}")
    seen = []
    while len(seen) < count:
        n = rng.randint(d, max_rows)
        A = tuple(tuple(rng.randint(0, max_entry) for _ in range(d)) for _ in range(n))
        if A not in seen and toric.ExponentData.of(A).rank == d:
            seen.append(A)
    return [[list(r) for r in A] for A in seen]


def toric_outcome(rep):
    if rep["passed"]:
        return "pass"
    if not rep.get("embedded", True):
        return "sample folds"
    if not rep["monotone"]["holds"]:
        return "not monotone: " + rep["monotone"]["witness"]["kind"]
    if not rep["matroid_match"]:
        return "matroid mismatch"
    return "evidence fails"


def toric_suite(matrices=None, resolution=3, random_count=20):
    res = SuiteResult("toric suite")
    if matrices is None:
        matrices = list(TORIC_SUITE) + random_matrices(2, random_count)
    with _Timer(res):
        for A in matrices:
            E = toric.ExponentData.of(A)
            res.checked += 1
            rep = toric.toric_check(E, resolution if E.d < 3 else 2)
            if not rep["passed"]:
                res.fail(f"A={A}: {toric_outcome(rep)}")
        res.checked += 1
        M = toric.toric_matroid(toric.ExponentData.of([[1, 0], [0, 1], [1, 1]]))
        if M.to_json() != [["x1", "x2"], ["x1", "x3"], ["x2", "x3"]]:
            res.fail(f"surface fixture matroid {M}")
    return res


# -- grid fuzzing ----------------------------------------------------------------------------

def fuzz_suite(entries, fuzz=32):
    res = SuiteResult(f"grid-fuzz invariance ({fuzz} thresholds)")
    with _Timer(res):
        for e in entries:
            res.checked += 1
            plain = mono.is_monotone_map(e.instance, mode="both").holds
            cfg = mono.GridConfig(fuzz=fuzz, seed=e.seed)
            fuzzed = mono.is_monotone_map(e.instance, mode="both", cfg=cfg).holds
            if plain != fuzzed:
                res.fail(f"{e.name}: verdict {plain} becomes {fuzzed} with fuzzed grid")
            if e.k == 1:
                res.checked += 1
                plain = mono.is_monotone_function(e.instance).holds
                fuzzed = mono.is_monotone_function(e.instance, cfg=cfg).holds
                if plain != fuzzed:
                    res.fail(f"{e.name}: function verdict {plain} becomes {fuzzed} with fuzzed grid")
    return res


# -- mutants --------------------------------------------------------------------------------

def run_target(strategy, X):
    """Run the checker a mutant of ``strategy`` targets; True means the mutant survived."""
    target = gen.target_checker(strategy)
    if target == "semi-monotone":
        K = pc.domain_complex(X) if isinstance(X, GraphComplex) else X
        return mono.is_semi_monotone(K).holds
    if target == "monotone-function":
        return mono.is_monotone_function(X).holds
    return mono.is_monotone_map(X).holds


def mutant_bases(count_per_strategy=20):
    """(name, strategy, positive instance) triples covering every strategy."""
    out = []
    for s in range(count_per_strategy):
        rng = random.Random(f"mutant:{s}")
        n = rng.choice((1, 2, 3))
        r = 3 if n < 3 else 2
        out.append((f"notch-{s}", "notch-domain",
                    gen.gen_monotone_function(GenConfig(seed=s, n=n, k=1, r=r))))
        beh = [rng.choice((gen.INC, gen.DEC)) for _ in range(n)]
        out.append((f"flatten-{s}", "flatten-slice",
                    gen.gen_monotone_function(GenConfig(seed=s, n=n, k=1, r=r), behaviors=beh)))
        out.append((f"collide-{s}", "collide-levels",
                    gen.gen_monotone_map(GenConfig(seed=s, n=2, k=2, r=rng.choice((3, 4))), warp=True)))
    out.append(("notch-unit-square", "notch-domain", FIXTURES["unit-square"]()))
    return out


def mutation_suite(entries, count_per_strategy=20):
    res = SuiteResult("mutation kill rate")
    with _Timer(res):
        jobs = [(e.name, e.strategy, e.instance, True) for e in entries if e.kind == "negative"]
        jobs += [(name, st, base, False) for name, st, base in mutant_bases(count_per_strategy)]
        for name, strategy, X, mutated in jobs:
            res.checked += 1
            M = X if mutated else gen.mutate_negative(X, strategy)
            if run_target(strategy, M):
                res.fail(f"{name}: {strategy} mutant survives {gen.target_checker(strategy)}")
    return res


def all_suites(count=200):
    entries = build_corpus(count)
    return [example_regressions(), dual_oracle(entries), matroid_suite(entries),
            projection_suite(entries), split_glue_suite(entries), evidence_suite(entries),
            toric_suite(), fuzz_suite(entries), mutation_suite(entries)]
