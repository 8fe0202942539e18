"""Independent dense oracle for the frozen regression constants.

Computes quotient dimensions of Q[t1..tm]/(ideal + m^N) by dense row
reduction over Fractions, the Milnor and Tyurina numbers with the
stabilization rule, and dim H^{m-1}_dR(R', I') for R' = Q[t]/(f, m^N).
Nothing here imports the C++ engine; run with plain python3.
"""
from fractions import Fraction
from itertools import combinations
import sympy as sp


def monomials(m, below):
    out = []
    def rec(i, left, cur):
        if i == m:
            out.append(tuple(cur))
            return
        for e in range(left + 1):
            rec(i + 1, left - e, cur + [e])
    for deg in range(below):
        tmp = []
        out_len = len(out)
        rec(0, deg, [])
        # keep only exact degree
        out[out_len:] = [x for x in out[out_len:] if sum(x) == deg]
    return out


def rank(rows, ncols):
    rows = [list(r) for r in rows]
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / pv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def poly_dict(expr, ts):
    p = sp.Poly(sp.expand(expr), *ts)
    return {tuple(k): Fraction(int(sp.fraction(v)[0]), int(sp.fraction(v)[1])) for k, v in p.terms()}


def ideal_rows(gens, m, N):
    mons = monomials(m, N)
    idx = {mo: i for i, mo in enumerate(mons)}
    rows = []
    for g in gens:
        for mo in mons:
            row = [Fraction(0)] * len(mons)
            nz = False
            for k, v in g.items():
                e = tuple(a + b for a, b in zip(k, mo))
                if sum(e) < N:
                    row[idx[e]] += v
                    nz = True
            if nz:
                rows.append(row)
    return mons, idx, rows


def quotient_dim(gens, m, N):
    mons, idx, rows = ideal_rows(gens, m, N)
    return len(mons) - rank(rows, len(mons))


def stabilized_dim(gens, m, N):
    """Return quotient dim if some degree d < N has all monomials in the span."""
    mons, idx, rows = ideal_rows(gens, m, N)
    base = rank(rows, len(mons))
    for d in range(1, N):
        extra = []
        ok = True
        for mo in mons:
            if sum(mo) == d:
                row = [Fraction(0)] * len(mons)
                row[idx[mo]] = Fraction(1)
                if rank(rows + [row], len(mons)) != base:
                    ok = False
                    break
        if ok:
            return len(mons) - base, d
    return None


def milnor_tyurina(fexpr, ts, N_start=4, N_max=24):
    m = len(ts)
    jac = [poly_dict(sp.diff(fexpr, t), ts) for t in ts]
    f = poly_dict(fexpr, ts)
    res = {}
    for name, gens in (("mu", jac), ("tau", jac + [f])):
        for N in range(N_start, N_max + 1):
            s = stabilized_dim(gens, m, N)
            if s:
                res[name] = (s[0], N, s[1])
                break
    return res


def words(m, n):
    return list(combinations(range(m), n))


def form_space(gens, m, N, n):
    """Dense presentation of Omega^n of Q[t]/(gens + m^N): (cols, rel rows)."""
    mons = monomials(m, N)
    ws = words(m, n)
    cols = [(mo, w) for w in ws for mo in mons]
    cidx = {c: i for i, c in enumerate(cols)}
    allg = list(gens) + [{mo: Fraction(1)} for mo in monomials(m, N + 1) if sum(mo) == N]
    rows = []
    for g in allg:
        for mo in mons:
            for w in ws:   # g*mo*w
                row = [Fraction(0)] * len(cols)
                for k, v in g.items():
                    e = tuple(a + b for a, b in zip(k, mo))
                    if sum(e) < N:
                        row[cidx[(e, w)]] += v
                if any(row):
                    rows.append(row)
            for w in words(m, n - 1) if n >= 1 else []:
                row = [Fraction(0)] * len(cols)
                for i in range(m):
                    if i in w:
                        continue
                    sign = (-1) ** sum(1 for j in w if j < i)
                    nw = tuple(sorted(w + (i,)))
                    for k, v in g.items():
                        if k[i] == 0:
                            continue
                        e = list(a + b for a, b in zip(k, mo))
                        e[i] -= 1
                        e = tuple(e)
                        if sum(e) < N:
                            row[cidx[(e, nw)]] += sign * k[i] * v
                if any(row):
                    rows.append(row)
    return cols, cidx, rows


def d_matrix(m, N, n, cols_src, cols_dst, cidx_dst):
    out = []
    for (mo, w) in cols_src:
        row = [Fraction(0)] * len(cols_dst)
        for i in range(m):
            if mo[i] == 0 or i in w:
                continue
            sign = (-1) ** sum(1 for j in w if j < i)
            e = list(mo); e[i] -= 1
            nw = tuple(sorted(w + (i,)))
            row[cidx_dst[(tuple(e), nw)]] += sign * mo[i]
        out.append(row)
    return out


def relative_cohomology(gens, m, N):
    """dims of H^n(R, I) for R = Q[t]/(gens + m^N), I the augmentation ideal."""
    spaces = [form_space(gens, m, N, n) for n in range(m + 1)]
    dims, ranks_d = [], []
    for n in range(m + 1):
        cols, cidx, rel = spaces[n]
        dims.append(len(cols) - rank(rel, len(cols)))
    for n in range(m):
        cols, cidx, rel = spaces[n]
        cols1, cidx1, rel1 = spaces[n + 1]
        dm = d_matrix(m, N, n, cols, cols1, cidx1)
        ranks_d.append(rank(rel1 + dm, len(cols1)) - rank(rel1, len(cols1)))
    ranks_d.append(0)
    rel_dims = list(dims)
    rel_dims[0] -= 1  # remove constants: Omega^0_{R,I} = I
    h = []
    for n in range(m + 1):
        ker = rel_dims[n] - ranks_d[n]
        im = ranks_d[n - 1] if n > 0 else 0
        h.append(ker - im)
    return h, rel_dims


if __name__ == "__main__":
    t1, t2 = sp.symbols("t1 t2")
    t = sp.symbols("t")
    gk = t1**4 + t1**2 * t2**3 + t2**5
    jac = [poly_dict(sp.diff(gk, v), (t1, t2)) for v in (t1, t2)]
    print("GK Q[t]/(df, m^6) dim:", quotient_dim(jac, 2, 6))
    print("GK H^n(R,I) for R=Q[t]/(df,m^6):", relative_cohomology(jac, 2, 6))
    for name, fe, ts in [("t^2", t**2, (t,)), ("t^3", t**3, (t,)), ("t^5", t**5, (t,)),
                         ("t1^2+t2^2", t1**2 + t2**2, (t1, t2)),
                         ("t1^3+t2^3", t1**3 + t2**3, (t1, t2)),
                         ("GK", gk, (t1, t2)),
                         ("t1^4+t1*t2^4", t1**4 + t1 * t2**4, (t1, t2))]:
        mt = milnor_tyurina(fe, ts)
        print(name, mt)
        if len(ts) == 2:
            f = poly_dict(fe, ts)
            for N in range(max(mt["mu"][1], mt["tau"][1]), max(mt["mu"][1], mt["tau"][1]) + 3):
                print("   R'=Q[t]/(f,m^%d): H =" % N, relative_cohomology([f], 2, N)[0])
