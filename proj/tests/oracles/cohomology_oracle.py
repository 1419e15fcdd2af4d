"""Independent rank oracle for the frozen cohomology dimensions in the C++ tests.

Written straight from the coboundary formulas with sympy's exact QQ domain
matrices; shares no code with the library. Run:
    python3 tests/oracles/cohomology_oracle.py
"""
import itertools
import json

from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix


def bracket_fn(dim, consts):
    table = {}
    for i, j, k, c in consts:
        table.setdefault((i - 1, j - 1), [Rational(0)] * dim)[k - 1] += Rational(c)
    def br(x, y):
        out = [Rational(0)] * dim
        for (i, j), v in table.items():
            if x[i] and y[j]:
                for k in range(dim):
                    out[k] += x[i] * y[j] * v[k]
        return out
    return br


def unit(n, i):
    v = [Rational(0)] * n
    v[i] = Rational(1)
    return v


def matvec(m, v):
    return [sum((m[r][c] * v[c] for c in range(len(v))), Rational(0)) for r in range(len(m))]


def regular(dim, br, kv):
    left = [[br(unit(dim, i), unit(dim, j)) for j in range(dim)] for i in range(dim)]  # left[i][j] = column j
    right = [[br(unit(dim, j), unit(dim, i)) for j in range(dim)] for i in range(dim)]
    as_mat = lambda cols: [[cols[c][r] for c in range(dim)] for r in range(dim)]
    return dim, [as_mat(c) for c in left], [as_mat(c) for c in right], kv


class Cochain:
    """f as a dict from basis tuples to V-vectors, extended multilinearly."""

    def __init__(self, dim, dimv, n, values):
        self.dim, self.dimv, self.n, self.values = dim, dimv, n, values

    def __call__(self, args):
        out = [Rational(0)] * self.dimv
        supports = [[(i, a[i]) for i in range(self.dim) if a[i] != 0] for a in args]
        for combo in itertools.product(*supports):
            coef = Rational(1)
            for _, c in combo:
                coef *= c
            val = self.values.get(tuple(i for i, _ in combo))
            if val is not None:
                for v in range(self.dimv):
                    out[v] += coef * val[v]
        return out


def basis_cochains(dim, dimv, n):
    for tup in itertools.product(range(dim), repeat=n):
        for v in range(dimv):
            yield Cochain(dim, dimv, n, {tup: unit(dimv, v)})


def coboundary(dim, br, rep, f):
    dimv, rl, rr, _ = rep
    n = f.n
    act = lambda mats, x: [[sum((x[i] * mats[i][r][c] for i in range(dim)), Rational(0)) for c in range(dimv)]
                           for r in range(dimv)]
    vals = {}
    for tup in itertools.product(range(dim), repeat=n + 1):
        xs = [unit(dim, t) for t in tup]
        out = [Rational(0)] * dimv
        for i in range(n):
            sign = 1 if i % 2 == 0 else -1  # (-1)^{(i+1)+1}
            term = matvec(act(rl, xs[i]), f(xs[:i] + xs[i + 1:]))
            out = [o + sign * t for o, t in zip(out, term)]
        sign = 1 if (n + 1) % 2 == 0 else -1
        term = matvec(act(rr, xs[n]), f(xs[:n]))
        out = [o + sign * t for o, t in zip(out, term)]
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                sign = -1 if i % 2 == 0 else 1  # (-1)^{i+1} with 1-based i
                args = xs[:i] + xs[i + 1:j] + [br(xs[i], xs[j])] + xs[j + 1:]
                out = [o + sign * t for o, t in zip(out, f(args))]
        vals[tup] = out
    return vals


def phi(dim, K, lam, rep, f):
    dimv, _, _, kv = rep
    n = f.n
    vals = {}
    for tup in itertools.product(range(dim), repeat=n):
        xs = [unit(dim, t) for t in tup]
        kxs = [matvec(K, x) for x in xs]
        out = [Rational(0)] * dimv
        for subset in itertools.product([False, True], repeat=n):
            r = sum(subset)
            args = [xs[t] if subset[t] else kxs[t] for t in range(n)]
            val = f(args)
            if r == 0:
                w, use_kv = Rational(1), False
            elif r % 2 == 1:
                w, use_kv = -(-lam) ** ((r - 1) // 2), True
            else:
                w, use_kv = (-lam) ** (r // 2), False
            if use_kv:
                val = matvec(kv, val)
            out = [o + w * v for o, v in zip(out, val)]
        vals[tup] = out
    return vals


def flat(dim, dimv, n, vals):
    col = []
    for tup in itertools.product(range(dim), repeat=n):
        col.extend(vals.get(tup, [Rational(0)] * dimv))
    return col


def matrix_from_columns(cols, rows):
    if not cols:
        return DomainMatrix.zeros((rows, 0), QQ)
    data = [[QQ(cols[c][r].p, cols[c][r].q) for c in range(len(cols))] for r in range(rows)]
    return DomainMatrix(data, (rows, len(cols)), QQ)


def rank(m):
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    return m.rank()


def derived(dim, br, K):
    def brk(x, y):
        a = br(matvec(K, x), y)
        b = br(x, matvec(K, y))
        return [p + q for p, q in zip(a, b)]
    return brk


def induced(dim, rep, K):
    dimv, rl, rr, kv = rep
    def twist(mats):
        out = []
        for i in range(dim):
            kx = matvec(K, unit(dim, i))
            m = [[sum((kx[t] * mats[t][r][c] for t in range(dim)), Rational(0)) for c in range(dimv)]
                 for r in range(dimv)]
            kvm = [[sum((kv[r][s] * mats[i][s][c] for s in range(dimv)), Rational(0)) for c in range(dimv)]
                   for r in range(dimv)]
            out.append([[m[r][c] - kvm[r][c] for c in range(dimv)] for r in range(dimv)])
        return out
    return dimv, twist(rl), twist(rr), kv


def dims(fixture, max_degree=3):
    dim = fixture["dim"]
    br = bracket_fn(dim, fixture["bracket"])
    K = [[Rational(x) for x in row] for row in fixture["K"]]
    lam = Rational(fixture["weight"])
    if "rep" in fixture:
        r = fixture["rep"]
        conv = lambda ms: [[[Rational(x) for x in row] for row in m] for m in ms]
        rep = (r["dimV"], conv(r["rhoL"]), conv(r["rhoR"]), conv([r["kV"]])[0])
    else:
        rep = regular(dim, br, K)
    dimv = rep[0]
    brk = derived(dim, br, K)
    rep_k = induced(dim, rep, K)

    delta, partial, phis = {}, {}, {}
    for n in range(max_degree + 2):
        rows = dimv * dim ** (n + 1)
        dcols, pcols, fcols = [], [], []
        for f in basis_cochains(dim, dimv, n):
            if n <= max_degree:
                dcols.append(flat(dim, dimv, n + 1, coboundary(dim, br, rep, f)))
                pcols.append(flat(dim, dimv, n + 1, coboundary(dim, brk, rep_k, f)))
            fcols.append(flat(dim, dimv, n, phi(dim, K, lam, rep, f)))
        if n <= max_degree:
            delta[n] = matrix_from_columns(dcols, rows)
            partial[n] = matrix_from_columns(pcols, rows)
        phis[n] = matrix_from_columns(fcols, dimv * dim ** n)

    def cone(n):
        # d^n(f, g) = (delta f, -partial g - Phi f); C^n_cone = C^n (+) C^{n-1}
        cn, cn1 = dimv * dim ** n, (dimv * dim ** (n - 1) if n > 0 else 0)
        out_rows = dimv * dim ** (n + 1) + dimv * dim ** n
        cols = []
        dl, pt, ph = delta[n].to_Matrix(), (partial[n - 1].to_Matrix() if n > 0 else None), phis[n].to_Matrix()
        for c in range(cn):
            col = [dl[r, c] for r in range(dl.rows)] + [-ph[r, c] for r in range(ph.rows)]
            cols.append([Rational(x) for x in col])
        for c in range(cn1):
            col = [0] * dl.rows + [-pt[r, c] for r in range(pt.rows)]
            cols.append([Rational(x) for x in col])
        return matrix_from_columns(cols, out_rows)

    def table(mats, size):
        out, prev = [], 0
        for n in range(max_degree + 1):
            rk = rank(mats(n))
            out.append(size(n) - rk - prev)
            prev = rk
        return out

    leib = table(lambda n: delta[n], lambda n: dimv * dim ** n)
    op = table(lambda n: partial[n], lambda n: dimv * dim ** n)
    cone_dims = table(cone, lambda n: dimv * dim ** n + (dimv * dim ** (n - 1) if n > 0 else 0))

    # chain map check, as a sanity guard on this oracle itself
    for n in range(max_degree + 1):
        lhs = phis[n + 1] * delta[n]
        rhs = partial[n] * phis[n]
        assert lhs == rhs, f"chain map fails at n={n}"
    return {"leibniz": leib, "operator": op, "cone": cone_dims}


FIXTURES = {
    "g3_k0_w1": {"dim": 3, "bracket": [(1, 1, 3, 1)], "K": [[1, 0, 0], [0, 0, 0], [0, 0, 0]], "weight": 1},
    "g3_ka_w4": {"dim": 3, "bracket": [(1, 1, 3, 1)], "K": [[2, 0, 0], [1, 1, 0], [1, 1, 0]], "weight": 4},
    "g3_kb_w0": {"dim": 3, "bracket": [(1, 1, 3, 1)], "K": [[0, 0, 0], [1, 1, 0], [0, 1, 1]], "weight": 0},
    "r2_rot_w1": {"dim": 2, "bracket": [(1, 2, 2, 1), (2, 1, 2, -1)], "K": [[0, 1], [-1, 0]], "weight": 1},
    "zero1_w0": {"dim": 1, "bracket": [], "K": [[0]], "weight": 0},
    "g3_k0_w1_trivial_kv2": {
        "dim": 3, "bracket": [(1, 1, 3, 1)], "K": [[1, 0, 0], [0, 0, 0], [0, 0, 0]], "weight": 1,
        "rep": {"dimV": 1, "rhoL": [[[0]]] * 3, "rhoR": [[[0]]] * 3, "kV": [[2]]},
    },
}

if __name__ == "__main__":
    results = {name: dims(fx) for name, fx in FIXTURES.items()}
    print(json.dumps(results, indent=1))
