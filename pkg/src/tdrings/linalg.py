"""Exact integer and rational matrix helpers.

Matrices are lists of rows. Lattices are handled as lists of generator
vectors; a lattice basis in Hermite normal form is returned as its columns.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import InvalidInput


def xgcd(a, b):
    """Return (g, x, y) with x*a + y*b == g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(x * y for x, y in zip(row, v)) for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def det(M):
    """Bareiss fraction-free determinant."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def inverse(M):
    """Exact inverse over Q (Fractions). Raises on singular input."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise InvalidInput("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def integer_inverse(M):
    """Inverse of a unimodular integer matrix, as integers."""
    inv = inverse(M)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise InvalidInput("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def triangular_adjugate(T):
    """(adj(T), det(T)) for an upper-triangular integer matrix, in integers.

    Column j of adj(T) solves T y = det(T) e_j; back substitution divides
    exactly because the solution is integral.
    """
    n = len(T)
    d = 1
    for i in range(n):
        d *= T[i][i]
    if d == 0:
        raise InvalidInput("matrix is singular")
    Y = [[0] * n for _ in range(n)]
    for j in range(n):
        Y[j][j] = d // T[j][j]
        for i in range(j - 1, -1, -1):
            row = T[i]
            s = 0
            for k in range(i + 1, j + 1):
                s += row[k] * Y[k][j]
            Y[i][j] = -s // row[i]
    return Y, d


def nullspace(M):
    """Basis of the right kernel of M over Q, as lists of Fractions."""
    rows = [[Fraction(x) for x in r] for r in M]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def primitive_integer_vector(v):
    """Scale a rational vector to a primitive integer vector, first nonzero entry > 0."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in w:
        g = math.gcd(g, x)
    if g == 0:
        raise InvalidInput("zero vector")
    w = [x // g for x in w]
    lead = next(x for x in w if x)
    return [-x for x in w] if lead < 0 else w


def hnf_columns(vectors, n):
    """Hermite normal form of the lattice spanned by ``vectors`` in Z^n.

    Returns the basis columns b_0..b_{n-1}: b_j vanishes below row j, its
    pivot b_j[j] is positive, and every entry b_j[i] (i < j) lies in
    [0, b_i[i]). Raises if the lattice is not of full rank.
    """
    vecs = [list(v) for v in vectors if any(v)]
    basis = [None] * n
    for i in range(n - 1, -1, -1):
        piv = None
        rest = []
        for v in vecs:
            b = v[i]
            if b == 0:
                rest.append(v)
                continue
            if piv is None:
                piv = v
                continue
            a = piv[i]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, piv)]
            else:
                g, x, y = xgcd(a, b)
                ag, bg = a // g, b // g
                piv, v = (
                    [x * s + y * t for s, t in zip(piv, v)],
                    [ag * t - bg * s for s, t in zip(piv, v)],
                )
            if any(v[: i]):
                rest.append(v)
        if piv is None:
            raise InvalidInput("lattice is not of full rank")
        if piv[i] < 0:
            piv = [-x for x in piv]
        basis[i] = piv
        vecs = rest
    # reduce above-pivot entries, bottom row first
    for i in range(n - 1, -1, -1):
        bi = basis[i]
        p = bi[i]
        for j in range(i + 1, n):
            bj = basis[j]
            q = bj[i] // p
            if q:
                basis[j] = [s - q * t for s, t in zip(bj, bi)]
    return basis


def smith_normal_form(M):
    """Return (U, D, V) with U*M*V == D diagonal, d_1 | d_2 | ..., U and V unimodular.

    M is an m x k integer matrix (list of rows); diagonal entries are >= 0.
    """
    A = [list(map(int, r)) for r in M]
    m = len(A)
    k = len(A[0]) if m else 0
    U = identity(m)
    V = identity(k)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_combine(i, j, a, b, c, d):
        # (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j), ad - bc = 1
        for X in (A, U):
            ri, rj = X[i], X[j]
            X[i] = [a * s + b * t for s, t in zip(ri, rj)]
            X[j] = [c * s + d * t for s, t in zip(ri, rj)]

    def col_combine(i, j, a, b, c, d):
        for X in (A, V):
            for row in X:
                s, t = row[i], row[j]
                row[i] = a * s + b * t
                row[j] = c * s + d * t

    t = 0
    while t < min(m, k):
        # choose a nonzero pivot of minimal absolute value
        best = None
        for i in range(t, m):
            for j in range(t, k):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    a, b = A[t][t], A[i][t]
                    if b % a == 0:
                        row_combine(t, i, 1, 0, -(b // a), 1)
                    else:
                        g, x, y = xgcd(a, b)
                        row_combine(t, i, x, y, -b // g, a // g)
                        done = False
            for j in range(t + 1, k):
                if A[t][j]:
                    a, b = A[t][t], A[t][j]
                    if b % a == 0:
                        col_combine(t, j, 1, 0, -(b // a), 1)
                    else:
                        g, x, y = xgcd(a, b)
                        col_combine(t, j, x, y, -b // g, a // g)
                        done = False
            if not done:
                continue
            # enforce divisibility of the remaining block by the pivot
            p = A[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, k) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_combine(t, bad[0], 1, 1, 0, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, A, V


def invariant_factors(relations, ncols):
    """Nontrivial invariant factors of Z^ncols modulo the rows of ``relations``.

    A zero diagonal entry (infinite cyclic factor) is reported as 0.
    """
    if not relations:
        return [0] * ncols
    _, D, _ = smith_normal_form(relations)
    diag = [D[i][i] for i in range(min(len(D), ncols))]
    diag += [0] * (ncols - len(diag))
    return [d for d in diag if d != 1]
