"""Independent reference computations used to cross-check the library."""
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def rational_table(g):
    """Structure constants as {(i, j): {k: Fraction}} for a rational algebra, both orders."""
    out = {}
    for (i, j), vec in g.brackets.items():
        row = {}
        for k, c in vec.items():
            if any(c.coeffs[1:]):
                raise ValueError("algebra is not defined over Q")
            row[k] = Fraction(c.coeffs[0])
        out[(i, j)] = row
        out[(j, i)] = {k: -v for k, v in row.items()}
    return out


def _bracket(table, u, v):
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            for k, c in table.get((i, j), {}).items():
                out[k] = out.get(k, 0) + a * b * c
    return {k: v for k, v in out.items() if v}


def _rank(rows, ncols):
    if not rows:
        return 0
    M = DomainMatrix([[QQ(int(x.numerator), int(x.denominator)) for x in r] for r in rows], (len(rows), ncols), QQ)
    return M.rank()


def _solution_dim(d, equations):
    """equations: callable (i, j, ...) -> list of linear forms as {(row, col): coeff} in the unknown D."""
    rows = []
    for eq in equations:
        if eq:
            r = [Fraction(0)] * (d * d)
            for (a, b), c in eq.items():
                r[a * d + b] += c
            rows.append(r)
    return d * d - _rank(rows, d * d)


def der_dimension(g) -> int:
    """dim of {D : D[x,y] = [Dx,y] + [x,Dy]} by brute-force linear algebra over Q."""
    d, t = g.dim, rational_table(g)
    eqs = []
    for i in range(d):
        for j in range(i + 1, d):
            for l in range(d):
                eq = {}
                for k, c in t.get((i, j), {}).items():
                    eq[(l, k)] = eq.get((l, k), 0) + c
                for m in range(d):
                    c1 = t.get((m, j), {}).get(l, 0)
                    if c1:
                        eq[(m, i)] = eq.get((m, i), 0) - c1
                    c2 = t.get((i, m), {}).get(l, 0)
                    if c2:
                        eq[(m, j)] = eq.get((m, j), 0) - c2
                eqs.append({k: v for k, v in eq.items() if v})
    return _solution_dim(d, eqs)


def pder_dimension(g) -> int:
    """dim of {D : D[x,[y,z]] = [Dx,[y,z]] + [x,[Dy,z]] + [x,[y,Dz]]}."""
    d, t = g.dim, rational_table(g)
    e = [{i: Fraction(1)} for i in range(d)]
    eqs = []
    for i in range(d):
        for j in range(d):
            for k in range(j + 1, d):
                yz = _bracket(t, e[j], e[k])
                lhs = _bracket(t, e[i], yz)
                for l in range(d):
                    eq = {}
                    # D applied to [x_i,[x_j,x_k]]: coefficient of x_l is sum_m D[l,m] * lhs[m]
                    for m, c in lhs.items():
                        eq[(l, m)] = eq.get((l, m), 0) + c
                    # [D x_i, [x_j, x_k]]
                    for m in range(d):
                        c = _bracket(t, e[m], yz).get(l, 0)
                        if c:
                            eq[(m, i)] = eq.get((m, i), 0) - c
                        c = _bracket(t, e[i], _bracket(t, e[m], e[k])).get(l, 0)
                        if c:
                            eq[(m, j)] = eq.get((m, j), 0) - c
                        c = _bracket(t, e[i], _bracket(t, e[j], e[m])).get(l, 0)
                        if c:
                            eq[(m, k)] = eq.get((m, k), 0) - c
                    eqs.append({a: v for a, v in eq.items() if v})
    return _solution_dim(d, eqs)


def lyndon_words(length: int, k: int):
    """Duval's algorithm restricted to a single length."""
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == length:
            yield tuple(w)
        m = len(w)
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


def free_nilpotent_dimension(c: int, g: int) -> int:
    return sum(sum(1 for _ in lyndon_words(d, g)) for d in range(1, c + 1))
