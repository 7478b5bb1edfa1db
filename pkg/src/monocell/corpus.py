"""The seeded property corpus shared by the acceptance runner, scripts and tests."""
from dataclasses import dataclass
import json
import random

from . import gen
from . import plcore as pc
from .fixtures import freudenthal
from .gen import GenConfig
from .linear import Q
from .plcore import GraphComplex

KINDS = ("map", "map", "map", "map", "map", "function", "function", "set", "negative", "random")
SHAPES = ((1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1))


@dataclass
class Entry:
    seed: int
    kind: str
    n: int
    k: int
    r: int
    instance: GraphComplex
    expected: object = None
    strategy: str = ""

    @property
    def name(self):
        tag = f"-{self.strategy}" if self.strategy else ""
        return f"s{self.seed:03d}-{self.kind}{tag}-n{self.n}k{self.k}r{self.r}"

    def manifest(self):
        return {"name": self.name, "seed": self.seed, "kind": self.kind, "strategy": self.strategy,
                "n": self.n, "k": self.k, "r": self.r, "expected_monotone": self.expected}


def _resolution(rng, n):
    return {1: rng.randint(2, 5), 2: rng.randint(2, 3), 3: 2}[n]


def _random_values(rng, n, k, r, den=4):
    axes = [[Q(i, r - 1) for i in range(r)] for _ in range(n)]
    verts, tops = freudenthal(axes)
    vals = [tuple(Q(rng.randint(-2 * den, 2 * den), den) for _ in range(k)) for _ in verts]
    return pc.graph_from_function(pc.Complex(n, verts, tops), vals)


def _negative(rng, seed):
    strategy = gen.STRATEGIES[seed // 10 % 3]
    if strategy == "notch-domain":
        n = rng.choice((1, 2, 3))
        k = 1 if n < 3 else rng.choice((0, 1))
        r = max(_resolution(rng, n), 3 if n == 1 else 2)
        cfg = GenConfig(seed=seed, n=n, k=k, r=r)
        base = gen.gen_monotone_function(cfg) if k else gen.gen_monotone_map(cfg, warp=True)
    elif strategy == "flatten-slice":
        n = rng.choice((1, 2, 3))
        r = max(_resolution(rng, n), 3 if n == 1 else 2)
        cfg = GenConfig(seed=seed, n=n, k=1, r=r)
        behaviors = [rng.choice((gen.INC, gen.DEC)) for _ in range(n)]
        base = gen.gen_monotone_function(cfg, behaviors=behaviors)
    else:
        n, k, r = 2, 2, 3
        cfg = GenConfig(seed=seed, n=n, k=k, r=r)
        base = gen.gen_monotone_map(cfg, warp=True)
    return strategy, cfg, gen.mutate_negative(base, strategy)


def corpus_entry(seed):
    rng = random.Random(f"corpus:{seed}")
    kind = KINDS[seed % len(KINDS)]
    if kind == "negative":
        strategy, cfg, F = _negative(rng, seed)
        return Entry(seed, kind, cfg.n, F.k, cfg.r, F, False, strategy)
    if kind == "function":
        n = rng.choice((1, 2, 3))
        cfg = GenConfig(seed=seed, n=n, k=1, r=_resolution(rng, n))
        return Entry(seed, kind, n, 1, cfg.r, gen.gen_monotone_function(cfg), True)
    if kind == "set":
        n = rng.choice((2, 3))
        cfg = GenConfig(seed=seed, n=n, k=0, r=_resolution(rng, n))
        K = gen.gen_semi_monotone(cfg)
        return Entry(seed, kind, n, 0, cfg.r, GraphComplex(K, pc.default_labels(n, 0)[0], ()), True)
    if kind == "random":
        n, k = rng.choice(((1, 1), (1, 2), (2, 1)))
        r = _resolution(rng, n)
        return Entry(seed, kind, n, k, r, _random_values(rng, n, k, r), None)
    n, k = rng.choice(SHAPES)
    cfg = GenConfig(seed=seed, n=n, k=k, r=_resolution(rng, n))
    return Entry(seed, kind, n, k, cfg.r, gen.gen_monotone_map(cfg), True)


def build_corpus(count=200, start=0):
    return [corpus_entry(s) for s in range(start, start + count)]


def monotone_maps(entries):
    """Corpus entries expected to be monotone maps with at least one codomain axis."""
    return [e for e in entries if e.expected is True and e.k >= 1]


def write_manifest(entries, path):
    with open(path, "w") as fh:
        for e in entries:
            fh.write(json.dumps(e.manifest(), sort_keys=True) + "\n")
