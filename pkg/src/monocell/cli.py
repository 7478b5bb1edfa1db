"""Command-line front end.

Exit status: 0 when the checked property holds, 1 when it fails (the
report carries a witness), 2 on usage, input or hypothesis errors.
"""
import argparse
import csv
import io
import json
import sys

from . import gen, mono, topo, toric
from . import plcore as pc
from .errors import MonocellError
from .fixtures import FIXTURES, TORIC_FIXTURES
from .matroid import basis_system, check_matroid_axioms, tangent_matroid
from .plcore import EQ, ConeDescriptor, GraphComplex

OK, FAIL, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def load_instance(source):
    """Read an instance from a JSON file, or from ``fixture:NAME``."""
    if source.startswith("fixture:"):
        name = source.split(":", 1)[1]
        if name not in FIXTURES:
            raise UsageError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}")
        return FIXTURES[name]()
    try:
        with open(source) as fh:
            data = json.load(fh)
    except OSError as e:
        raise UsageError(f"{source}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}") from None
    try:
        return pc.instance_from_json(data)
    except MonocellError as e:
        raise UsageError(f"{source}: {e}") from None


def _as_graph(x, what):
    if isinstance(x, GraphComplex):
        return x
    if what == "set":
        return GraphComplex(x, pc.default_labels(x.ambient_dim, 0)[0], ())
    raise UsageError("this command needs a graph instance (with domain_axes/codomain_axes)")


def _as_set(x):
    if isinstance(x, GraphComplex):
        if x.k:
            raise UsageError("check-semimonotone needs a set, got a graph with codomain axes")
        return x.complex
    return x


def _grid(args):
    return mono.GridConfig(fuzz=args.fuzz, seed=args.seed)


def cmd_check_semimonotone(args):
    K = _as_set(load_instance(args.instance))
    v = mono.is_semi_monotone(K, _grid(args), route=args.route)
    return v.holds, {"check": "semi-monotone", "route": args.route, **v.to_json()}


def cmd_check_fn(args):
    F = _as_graph(load_instance(args.instance), "graph")
    if args.direction:
        v = mono.is_level_monotone(F, args.direction, _grid(args))
        check = f"level-monotone-{args.direction}"
    else:
        v = mono.is_monotone_function(F, _grid(args))
        check = "monotone-function"
    report = {"check": check, **v.to_json()}
    if F.k == 1:
        report["behaviors"] = [b.value for b in mono.behaviors(F)]
    return v.holds, report


def cmd_check_map(args):
    F = _as_graph(load_instance(args.instance), "set")
    v = mono.is_monotone_map(F, mode=args.mode, cfg=_grid(args), strict=args.strict)
    return v.holds, {"check": "monotone-map", "mode": args.mode, **v.to_json()}


def cmd_matroid(args):
    F = _as_graph(load_instance(args.instance), "set")
    M = basis_system(F)
    ok, bad = check_matroid_axioms(M)
    T = tangent_matroid(F)
    report = {"check": "matroid", "ground": list(M.ground), "rank": M.rank,
              "bases": M.to_json(), "exchange_axiom": ok,
              "counterexample": None if bad is None else [list(bad[0]), list(bad[1]), bad[2]],
              "tangent_matroid": T.to_json(), "tangent_equal": T.bases == M.bases}
    if T.note:
        report["tangent_note"] = T.note
    return ok, report


def _exponents(text):
    if text in TORIC_FIXTURES:
        return TORIC_FIXTURES[text]
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        pass
    try:
        with open(text) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"--A: expected a fixture name ({', '.join(TORIC_FIXTURES)}), "
                         f"a JSON matrix or a JSON file: {e}") from None


def cmd_toric(args):
    E = toric.ExponentData.of(_exponents(args.A))
    report = toric.toric_check(E, args.resolution)
    return report["passed"], {"check": "toric", **report}


def cmd_evidence(args):
    x = load_instance(args.instance)
    ev = topo.regular_cell_evidence(x)
    return ev.passed, {"check": "regular-cell-evidence", **ev.to_json()}


def cmd_generate(args):
    cfg = gen.GenConfig(seed=args.seed, n=args.n, k=args.k, r=args.resolution)
    if args.kind == "set":
        x = gen.gen_semi_monotone(cfg)
    elif args.kind == "function":
        x = gen.gen_monotone_function(cfg)
    elif args.kind == "map":
        x = gen.gen_monotone_map(cfg)
    else:
        if not args.strategy:
            raise UsageError("--strategy is required for --kind negative")
        base = gen.gen_monotone_map(cfg, warp=True) if args.strategy == "collide-levels" \
            else gen.gen_monotone_function(cfg)
        x = gen.mutate_negative(base, args.strategy)
    return True, pc.instance_to_json(x)


def _decimal(q):
    return f"{float(q):.12g}"


def _polylines(S):
    """Order the edges of a 1-dimensional closed slice into chains, one per component."""
    edges = [t for t in S.top_simplices if len(t) == 2]
    if len(edges) != len(S.top_simplices):
        return None
    adj = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(v) > 2 for v in adj.values()):
        return None
    seen = set()
    chains = []
    starts = sorted(adj, key=lambda v: (len(adj[v]) != 1, S.vertices[v]))
    for s in starts:
        if s in seen:
            continue
        chain = [s]
        seen.add(s)
        while True:
            nxt = [w for w in adj[chain[-1]] if w not in seen]
            if not nxt:
                break
            chain.append(nxt[0])
            seen.add(nxt[0])
        chains.append(chain)
    return chains


def slice_rows(x, axis, values):
    """CSV rows (without header) for the closed slices of an instance at axis = value."""
    K = x.complex if isinstance(x, GraphComplex) else x
    if isinstance(axis, str) and isinstance(x, GraphComplex):
        ax = x.axis(axis)
    else:
        try:
            ax = int(axis)
        except ValueError:
            raise UsageError(f"bad axis {axis!r}") from None
    if not 1 <= ax <= K.ambient_dim:
        raise UsageError(f"axis {axis} out of range 1..{K.ambient_dim}")
    rows = []
    for c in values:
        S = pc.intersect_cone(K, ConeDescriptor(((ax, EQ, c),)))
        if S.is_empty():
            continue
        chains = _polylines(S)
        cells = chains if chains is not None else [list(t) for t in S.top_simplices]
        for cid, cell in enumerate(cells):
            for vi, v in enumerate(cell):
                rows.append([axis, pc.fmt(c), cid, vi] + [_decimal(q) for q in S.vertices[v]])
    return rows


def cmd_slice(args):
    x = load_instance(args.instance)
    try:
        values = [pc.to_fraction(v) for v in args.values.split(",") if v.strip()]
    except MonocellError as e:
        raise UsageError(f"--values: {e}") from None
    rows = slice_rows(x, args.axis, values)
    m = (x.complex if isinstance(x, GraphComplex) else x).ambient_dim
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["axis", "value", "cell_id", "vertex_index"] + [f"coord{i + 1}" for i in range(m)])
    w.writerows(rows)
    return True, buf.getvalue()


def build_parser():
    p = argparse.ArgumentParser(prog="monocell", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, instance=True, fuzz=False):
        if instance:
            sp.add_argument("instance", help="instance JSON file or fixture:NAME")
        sp.add_argument("-o", "--output", help="write the report here instead of stdout")
        if fuzz:
            sp.add_argument("--fuzz", type=int, default=0, help="extra random thresholds per axis")
            sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("check-semimonotone", help="decide semi-monotonicity of a set")
    common(sp, fuzz=True)
    sp.add_argument("--route", choices=("both", "direct", "recursive"), default="both")
    sp.set_defaults(func=cmd_check_semimonotone)

    sp = sub.add_parser("check-fn", help="decide monotonicity of a function graph")
    common(sp, fuzz=True)
    sp.add_argument("--direction", choices=(mono.BELOW, mono.ABOVE),
                    help="only test sub- (Below) or super- (Above) level sets")
    sp.set_defaults(func=cmd_check_fn)

    sp = sub.add_parser("check-map", help="decide monotonicity of a map graph")
    common(sp, fuzz=True)
    sp.add_argument("--mode", choices=mono.MODES, default="both")
    sp.add_argument("--strict", action="store_true",
                    help="connectivity mode: non-quasi-affine input is an error, not a failure")
    sp.set_defaults(func=cmd_check_map)

    sp = sub.add_parser("matroid", help="basis system, exchange axiom and tangent matroid")
    common(sp)
    sp.set_defaults(func=cmd_matroid)

    sp = sub.add_parser("toric", help="check a PL sample of a toric cube")
    common(sp, instance=False)
    sp.add_argument("--A", required=True, help="fixture name, JSON exponent matrix, or JSON file")
    sp.add_argument("--resolution", type=int, default=4)
    sp.set_defaults(func=cmd_toric)

    sp = sub.add_parser("evidence", help="homological regular-cell evidence")
    common(sp)
    sp.set_defaults(func=cmd_evidence)

    sp = sub.add_parser("generate", help="write a generated instance as JSON")
    common(sp, instance=False)
    sp.add_argument("--kind", choices=("set", "function", "map", "negative"), default="map")
    sp.add_argument("--strategy", choices=gen.STRATEGIES)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--resolution", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("slice", help="export axis-aligned slices as CSV")
    common(sp)
    sp.add_argument("--axis", required=True, help="1-based axis number or axis label")
    sp.add_argument("--values", required=True, help="comma-separated rationals, e.g. 1/4,1/2")
    sp.set_defaults(func=cmd_slice)
    return p


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        holds, report = args.func(args)
    except UsageError as e:
        print(f"monocell {args.verb}: {e}", file=sys.stderr)
        return ERROR
    except MonocellError as e:
        print(f"monocell {args.verb}: {type(e).__name__}: {e}", file=sys.stderr)
        return ERROR
    text = report if isinstance(report, str) else json.dumps(report, sort_keys=True, indent=2) + "\n"
    _emit(text, args.output)
    return OK if holds else FAIL


if __name__ == "__main__":
    sys.exit(main())
