"""Independent sympy re-derivations used as test oracles.

These work directly on coefficient arrays with sympy rationals and symbols,
sharing no code with the engine beyond reading its input tables.
"""

from itertools import product

import sympy as sp


def sym(p, params):
    syms = sp.symbols(params) if params else ()
    if len(params) == 1:
        syms = (syms,) if not isinstance(syms, tuple) else syms
    out = sp.Integer(0)
    for e, c in p.terms():
        term = sp.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            term *= s ** k
        out += term
    return out


def tables(M, name="nabla"):
    """(g, c, G) as sympy objects: g[i][j], c[i][j][k] = c^k_ij, G[i][j][k] = Gamma^k_ij."""
    n = M.dim
    g = sp.Matrix(n, n, lambda i, j: sp.Rational(M.metric[i][j].numerator, M.metric[i][j].denominator))
    c = [[[sym(M.brackets[i][j][k], M.parameters) for k in range(n)] for j in range(n)] for i in range(n)]
    G = None
    if name is not None:
        conn = M.connection(name)
        G = [[[sym(conn.gamma[i][j][k], M.parameters) for k in range(n)] for j in range(n)] for i in range(n)]
    return g, c, G


def koszul(M):
    """Levi-Civita coefficients from the Koszul formula on a constant-metric frame."""
    g, c, _ = tables(M, None)
    n = M.dim
    gi = g.inv()

    def cl(i, j, k):  # g([e_i, e_j], e_k)
        return sum(c[i][j][m] * g[m, k] for m in range(n))

    low = [[[sp.Rational(1, 2) * (cl(i, j, k) - cl(j, k, i) + cl(k, i, j)) for k in range(n)] for j in range(n)]
           for i in range(n)]
    return [[[sp.expand(sum(low[i][j][m] * gi[m, k] for m in range(n))) for k in range(n)] for j in range(n)]
            for i in range(n)]


def dual(M, G):
    g, c, _ = tables(M, None)
    n = M.dim
    gi = g.inv()
    # 0 = g(nabla_i e_j, e_k) + g(e_j, nabla*_i e_k) for constant g
    low = [[[-sum(G[i][j][m] * g[m, k] for m in range(n)) for j in range(n)] for k in range(n)] for i in range(n)]
    return [[[sp.expand(sum(low[i][k][m] * gi[m, j] for m in range(n))) for j in range(n)] for k in range(n)]
            for i in range(n)]


def curvature(M, G, sign=1):
    """R[i][j][k][l] = l-component of R(e_i, e_j) e_k with R = nabla_i nabla_j - nabla_j nabla_i - nabla_[i,j]."""
    _, c, _ = tables(M, None)
    n = M.dim

    def nab(i, v):  # nabla_{e_i} of a frame-constant field with components v
        return [sum(v[j] * G[i][j][k] for j in range(n)) for k in range(n)]

    R = [[[[0] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i, j, k in product(range(n), repeat=3):
        ek = [1 if t == k else 0 for t in range(n)]
        a = nab(i, nab(j, ek))
        b = nab(j, nab(i, ek))
        cc = [sum(c[i][j][m] * G[m][k][l] for m in range(n)) for l in range(n)]
        for l in range(n):
            R[i][j][k][l] = sp.expand(sign * (a[l] - b[l] - cc[l]))
    return R


def ricci(R):
    n = len(R)
    return [[sp.expand(sum(R[i][j][k][i] for i in range(n))) for k in range(n)] for j in range(n)]
