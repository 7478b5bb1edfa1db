"""Exact rational linear algebra.

Everything here works on lists of exact rationals ``Q`` (gmpy2 ``mpq``;
ints and ``Fraction`` are accepted and promoted). The feasibility routine handles mixed strict and non-strict
inequalities by Fourier-Motzkin elimination and returns a rational witness.
"""
from gmpy2 import mpq as Q

ZERO = Q(0)
ONE = Q(1)
Q_TYPE = type(ZERO)


def rref(rows, ncols=None):
    """Reduced row echelon form.

    Returns (rows, pivot_columns); the input is not modified.
    """
    m = [[v if type(v) is Q_TYPE else Q(v) for v in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    if not rows:
        return 0
    return len(rref(rows)[1])


def affine_rank(points):
    """Dimension of the affine hull of a point list (-1 for no points)."""
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    return rank([[a - b for a, b in zip(p, base)] for p in pts[1:]])


def solve_affine(A, b):
    """Solve A x = b exactly.

    Returns (x0, basis) with the solution set x0 + span(basis), or None when
    the system is inconsistent.
    """
    n = len(A[0]) if A else 0
    if not A:
        return [ZERO] * n, [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    red, piv = rref(aug, ncols=n + 1)
    if n in piv:
        return None
    x0 = [ZERO] * n
    for row, c in zip(red, piv):
        x0[c] = row[n]
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, c in zip(red, piv):
            v[c] = -row[f]
        basis.append(v)
    return x0, basis


def solve_unique(A, b):
    sol = solve_affine(A, b)
    if sol is None or sol[1]:
        return None
    return sol[0]


def nullspace(A, n=None):
    n = len(A[0]) if A else n
    sol = solve_affine(A, [ZERO] * len(A)) if A else ([ZERO] * n, [[ONE if i == j else ZERO for i in range(n)] for j in range(n)])
    return sol[1]


def _normalize(coeffs, rhs):
    for c in coeffs:
        if c != 0:
            s = abs(c)
            return tuple(v / s for v in coeffs), rhs / s
    return coeffs, rhs


def _add_constraint(store, coeffs, rhs, strict):
    """Insert a <=/< constraint keeping only the tightest per direction.

    Returns False when a constant constraint is violated.
    """
    coeffs, rhs = _normalize(coeffs, rhs)
    if all(c == 0 for c in coeffs):
        return rhs > 0 or (rhs == 0 and not strict)
    old = store.get(coeffs)
    if old is None or rhs < old[0] or (rhs == old[0] and strict and not old[1]):
        store[coeffs] = (rhs, strict)
    return True


def _pick(lo, lo_strict, hi, hi_strict):
    if lo is not None and hi is not None:
        if lo < hi:
            return (lo + hi) / 2
        if lo == hi and not lo_strict and not hi_strict:
            return lo
        return None
    if lo is not None:
        return lo + 1 if lo_strict else lo
    if hi is not None:
        return hi - 1 if hi_strict else hi
    return ZERO


def feasible(nvars, eqs=(), ineqs=()):
    """Find x with all equalities and inequalities satisfied, or None.

    eqs: iterable of (coeffs, rhs) meaning coeffs . x == rhs
    ineqs: iterable of (coeffs, rhs, strict) meaning coeffs . x < rhs when
    strict, else coeffs . x <= rhs.
    """
    eqs = list(eqs)
    sol = solve_affine([list(map(Q, a)) for a, _ in eqs], [Q(b) for _, b in eqs]) if eqs else (
        [ZERO] * nvars, [[ONE if i == j else ZERO for i in range(nvars)] for j in range(nvars)])
    if sol is None:
        return None
    x0, basis = sol
    nf = len(basis)
    if nf <= 1:
        return _feasible_line(x0, basis, ineqs)
    store = {}
    for a, rhs, strict in ineqs:
        a = [Q(v) for v in a]
        red = tuple(sum((ai * bv[i] for i, ai in enumerate(a)), ZERO) for bv in basis)
        r = Q(rhs) - sum((ai * xi for ai, xi in zip(a, x0)), ZERO)
        if not _add_constraint(store, red, r, strict):
            return None
    z = _fm_solve(nf, store)
    if z is None:
        return None
    return [x0[i] + sum((z[j] * basis[j][i] for j in range(nf)), ZERO) for i in range(nvars)]


def _feasible_line(x0, basis, ineqs):
    """Feasibility on a point or a line: intersect the per-constraint intervals."""
    d0 = basis[0] if basis else None
    lo = hi = None
    lo_strict = hi_strict = False
    for a, rhs, strict in ineqs:
        a = [v if type(v) is Q_TYPE else Q(v) for v in a]
        r = Q(rhs) - sum((ai * xi for ai, xi in zip(a, x0)), ZERO)
        d = sum((ai * di for ai, di in zip(a, d0)), ZERO) if d0 else ZERO
        if d == 0:
            if r < 0 or (r == 0 and strict):
                return None
            continue
        bound = r / d
        if d > 0:
            if hi is None or bound < hi or (bound == hi and strict):
                hi, hi_strict = bound, strict
        elif lo is None or bound > lo or (bound == lo and strict):
            lo, lo_strict = bound, strict
    if d0 is None:
        return list(x0)
    z = _pick(lo, lo_strict, hi, hi_strict)
    if z is None:
        return None
    return [x + z * v for x, v in zip(x0, d0)]


def _fm_solve(nf, store):
    stages = []
    order = []
    remaining = list(range(nf))
    while remaining:
        # eliminate the variable producing the fewest combinations
        best = None
        for v in remaining:
            pos = sum(1 for c in store if c[v] > 0)
            neg = sum(1 for c in store if c[v] < 0)
            cost = pos * neg - pos - neg
            if best is None or cost < best[0]:
                best = (cost, v)
        v = best[1]
        stages.append(dict(store))
        order.append(v)
        remaining.remove(v)
        pos, neg, new = [], [], {}
        for c, (rhs, st) in store.items():
            if c[v] > 0:
                pos.append((c, rhs, st))
            elif c[v] < 0:
                neg.append((c, rhs, st))
            else:
                new[c] = (rhs, st)
        for cp, rp, sp in pos:
            for cn, rn, sn in neg:
                fp, fn = 1 / cp[v], 1 / -cn[v]
                coeffs = tuple(a * fp + b * fn for a, b in zip(cp, cn))
                coeffs = coeffs[:v] + (ZERO,) + coeffs[v + 1:]
                if not _add_constraint(new, coeffs, rp * fp + rn * fn, sp or sn):
                    return None
        store = new
    for c, (rhs, st) in store.items():
        if rhs < 0 or (rhs == 0 and st):
            return None
    z = [ZERO] * nf
    known = set()
    for v, stage in zip(reversed(order), reversed(stages)):
        lo = hi = None
        lo_s = hi_s = False
        for c, (rhs, st) in stage.items():
            if c[v] == 0:
                continue
            if any(c[u] != 0 and u != v and u not in known for u in range(nf)):
                continue
            r = rhs - sum((c[u] * z[u] for u in known), ZERO)
            bound = r / c[v]
            if c[v] > 0:
                if hi is None or bound < hi or (bound == hi and st):
                    hi, hi_s = bound, st
            else:
                if lo is None or bound > lo or (bound == lo and st):
                    lo, lo_s = bound, st
        val = _pick(lo, lo_s, hi, hi_s)
        if val is None:
            return None
        z[v] = val
        known.add(v)
    return z
