"""Integer matrices with characteristic polynomial (x-a_1)...(x-a_n).

Conjugacy classes over Z are put into triangular form, reduced into the
fundamental domain Omega_0 (0 <= c_ij < a_j - a_i) and finally canonicalized
over the sign-diagonal group. Counting is done by enumerating Omega_0.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import NamedTuple

from . import kernels
from .arithmetic import RootConfig
from .errors import BudgetExceeded, CharPolyMismatch, InvalidInput
from .linalg import identity, integer_inverse, matmul, nullspace, primitive_integer_vector, xgcd, det

DEFAULT_BUDGET = 10**7


def enumeration_budget(budget=None):
    if budget is not None:
        return int(budget)
    env = os.environ.get("TDRINGS_MAX_DELTA")
    return int(env) if env else DEFAULT_BUDGET


def _check_budget(cfg, budget):
    limit = enumeration_budget(budget)
    if cfg.delta > limit:
        raise BudgetExceeded(cfg.delta, limit)


def upper_positions(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@dataclass(frozen=True, order=True)
class OmegaMatrix:
    """Upper-triangular integer matrix with diagonal (a_1, ..., a_n).

    ``upper`` holds the entries above the diagonal in row-major order.
    """

    roots: tuple
    upper: tuple

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(self.roots))
        object.__setattr__(self, "upper", tuple(map(int, self.upper)))
        n = len(self.roots)
        if len(self.upper) != n * (n - 1) // 2:
            raise InvalidInput("wrong number of upper entries")

    @property
    def n(self):
        return len(self.roots)

    @property
    def reduced(self):
        return all(
            0 <= c < self.roots[j] - self.roots[i]
            for c, (i, j) in zip(self.upper, upper_positions(self.n))
        )

    def entry(self, i, j):
        if i == j:
            return self.roots[i]
        if i > j:
            return 0
        return self.upper[upper_positions(self.n).index((i, j))]

    def matrix(self):
        n = self.n
        M = [[0] * n for _ in range(n)]
        for i in range(n):
            M[i][i] = self.roots[i]
        for c, (i, j) in zip(self.upper, upper_positions(n)):
            M[i][j] = c
        return M

    @classmethod
    def from_matrix(cls, A, roots):
        roots = tuple(roots)
        n = len(roots)
        if len(A) != n or any(len(r) != n for r in A):
            raise InvalidInput("matrix has the wrong shape")
        if any(A[i][j] for i in range(n) for j in range(i)):
            raise InvalidInput("matrix is not upper triangular")
        if tuple(A[i][i] for i in range(n)) != roots:
            raise InvalidInput("diagonal does not match the roots")
        return cls(roots, tuple(A[i][j] for i, j in upper_positions(n)))

    def index(self):
        """Mixed-radix position inside Omega_0 (requires ``reduced``)."""
        return kernels.encode(self.roots, self.upper)

    @classmethod
    def from_index(cls, roots, idx):
        return cls(roots, tuple(kernels.decode(tuple(roots), idx)))


@dataclass(frozen=True, order=True)
class ClassLabel:
    """Canonical representative of an ideal class: the lexicographically
    least Omega_0 matrix in the sign-conjugation orbit."""

    omega: OmegaMatrix

    @property
    def roots(self):
        return self.omega.roots

    @property
    def upper(self):
        return self.omega.upper

    def matrix(self):
        return self.omega.matrix()


class IcmResult(NamedTuple):
    order: int
    method: str
    proved: bool


def _cfg(cfg):
    return cfg if isinstance(cfg, RootConfig) else RootConfig(tuple(cfg))


def in_omega(A, roots):
    n = len(roots)
    return all(A[i][i] == roots[i] for i in range(n)) and not any(
        A[i][j] for i in range(n) for j in range(i)
    )


def check_charpoly(A, cfg: RootConfig):
    """Raise CharPolyMismatch unless det(xI - A) = (x - a_1)...(x - a_n).

    (A - a_1)...(A - a_n) = 0 makes A diagonalizable with eigenvalues among
    the roots; singularity of every A - a_i forces each root to occur, and
    with n distinct roots each occurs exactly once.
    """
    n = cfg.n
    if len(A) != n or any(len(r) != n for r in A):
        raise CharPolyMismatch(f"expected a {n}x{n} matrix")
    if in_omega(A, cfg.roots):
        return
    prod = identity(n)
    for a in cfg.roots:
        S = [[A[i][j] - (a if i == j else 0) for j in range(n)] for i in range(n)]
        if det(S) != 0:
            raise CharPolyMismatch(f"{a} is not an eigenvalue")
        prod = matmul(prod, S)
    if any(any(r) for r in prod):
        raise CharPolyMismatch("product of (A - a_i I) is not zero")


def primitive_extend(v):
    """Unimodular matrix whose first column is the primitive vector v."""
    v = [int(x) for x in v]
    n = len(v)
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g != 1:
        raise InvalidInput(f"vector {v} is not primitive (gcd {g})")
    w = list(v)
    M = identity(n)  # accumulates E^{-1}, where E v = e_1
    for i in range(n - 1, 0, -1):
        if w[i] == 0:
            continue
        a, b = w[0], w[i]
        g, x, y = xgcd(a, b)
        ag, bg = a // g, b // g
        w[0], w[i] = g, 0
        for row in M:
            c0, ci = row[0], row[i]
            row[0] = c0 * ag + ci * bg
            row[i] = -c0 * y + ci * x
    if w[0] == -1:
        for row in M:
            row[0] = -row[0]
    return M


def triangularize(A, cfg):
    """Return (T, U) with T in Omega, U unimodular and U A U^{-1} = T."""
    cfg = _cfg(cfg)
    check_charpoly(A, cfg)
    n = cfg.n
    M = [list(map(int, r)) for r in A]
    U = identity(n)
    if in_omega(M, cfg.roots):
        return OmegaMatrix.from_matrix(M, cfg.roots), U
    for k in range(n - 1):
        a = cfg.roots[k]
        m = n - k
        sub = [[M[k + i][k + j] - (a if i == j else 0) for j in range(m)] for i in range(m)]
        ker = nullspace(sub)
        if len(ker) != 1:
            raise CharPolyMismatch("eigenspace is not one-dimensional")
        v = primitive_integer_vector(ker[0])
        P = primitive_extend(v)
        Pinv = integer_inverse(P)
        E = identity(n)
        Einv = identity(n)
        for i in range(m):
            for j in range(m):
                E[k + i][k + j] = Pinv[i][j]
                Einv[k + i][k + j] = P[i][j]
        M = matmul(matmul(E, M), Einv)
        U = matmul(E, U)
    return OmegaMatrix.from_matrix(M, cfg.roots), U


def reduce_to_omega0(T: OmegaMatrix):
    """Return (T0, V): T0 in Omega_0, V unipotent upper-triangular, V T V^{-1} = T0."""
    roots = T.roots
    n = len(roots)
    M = T.matrix()
    V = identity(n)
    for i in range(n - 2, -1, -1):
        for j in range(i + 1, n):
            g = roots[j] - roots[i]
            t = -(M[i][j] // g)
            if not t:
                continue
            # conjugation by I + t E_ij: row_i += t row_j, then col_j -= t col_i
            M[i] = [x + t * y for x, y in zip(M[i], M[j])]
            for r in range(n):
                M[r][j] -= t * M[r][i]
            V[i] = [x + t * y for x, y in zip(V[i], V[j])]
    return OmegaMatrix.from_matrix(M, roots), V


def sign_vectors(n, fix_first=True):
    for rest in itertools.product((1, -1), repeat=n - 1):
        yield (1,) + rest
    if not fix_first:
        for rest in itertools.product((1, -1), repeat=n - 1):
            yield (-1,) + rest


def sign_conjugate(T: OmegaMatrix, signs) -> OmegaMatrix:
    pos = upper_positions(T.n)
    return OmegaMatrix(T.roots, tuple(c * signs[i] * signs[j] for c, (i, j) in zip(T.upper, pos)))


def canonicalize(A, cfg):
    """Return (label, U) with U unimodular and U A U^{-1} = label.matrix()."""
    cfg = _cfg(cfg)
    T, U = triangularize(A, cfg)
    best = None
    for signs in sign_vectors(cfg.n):
        R, V = reduce_to_omega0(sign_conjugate(T, signs))
        if best is None or R.upper < best[0].upper:
            best = (R, V, signs)
    R, V, signs = best
    D = [[signs[i] if i == j else 0 for j in range(cfg.n)] for i in range(cfg.n)]
    return ClassLabel(R), matmul(matmul(V, D), U)


def canonical_label(A, cfg) -> ClassLabel:
    cfg = _cfg(cfg)
    if isinstance(A, OmegaMatrix):
        T = A
    elif in_omega(A, cfg.roots):
        T = OmegaMatrix.from_matrix(A, cfg.roots)
    else:
        T, _ = triangularize(A, cfg)
    return ClassLabel(OmegaMatrix(cfg.roots, kernels.canonical_flat(cfg.roots, T.upper)))


def label_from_upper(roots, upper) -> ClassLabel:
    """Canonical label of the Omega matrix with the given upper entries."""
    return ClassLabel(OmegaMatrix(roots, kernels.canonical_flat(roots, upper)))


def omega0(cfg):
    cfg = _cfg(cfg)
    ranges = [range(cfg.gap(i, j)) for i, j in upper_positions(cfg.n)]
    for upper in itertools.product(*ranges):
        yield OmegaMatrix(cfg.roots, upper)


def icm_representatives(cfg, budget=None):
    """Canonical labels of all ideal classes, in increasing order."""
    cfg = _cfg(cfg)
    _check_budget(cfg, budget)
    _, _, reps = kernels.scan_omega0(cfg.roots, want_reps=True)
    return [ClassLabel(OmegaMatrix.from_index(cfg.roots, idx)) for idx in reps]


def icm_order_bruteforce(cfg, budget=None) -> int:
    """Number of distinct canonical labels over Omega_0."""
    cfg = _cfg(cfg)
    _check_budget(cfg, budget)
    orbits, _, _ = kernels.scan_omega0(cfg.roots)
    return orbits


def fix_counts(cfg, budget=None):
    """{sign vector with first entry +1: number of fixed U_n-orbits}."""
    cfg = _cfg(cfg)
    _check_budget(cfg, budget)
    _, fix, _ = kernels.scan_omega0(cfg.roots)
    n = cfg.n
    out = {}
    for s, count in enumerate(fix):
        signs = (1,) + tuple(-1 if (s >> (k - 1)) & 1 else 1 for k in range(1, n))
        out[signs] = count
    return out


def icm_order_burnside(cfg, budget=None) -> int:
    """Average number of fixed points over the full sign group D_n."""
    counts = fix_counts(cfg, budget)
    total = 2 * sum(counts.values())  # -P acts like P
    n = _cfg(cfg).n
    q, r = divmod(total, 2**n)
    if r:
        raise ArithmeticError("Burnside average is not an integer")
    return q


def fix_count(cfg, signs, budget=None) -> int:
    cfg = _cfg(cfg)
    signs = tuple(int(s) for s in signs)
    if len(signs) != cfg.n or any(s not in (1, -1) for s in signs):
        raise InvalidInput("signs must be n entries from {+1, -1}")
    if signs[0] == -1:
        signs = tuple(-s for s in signs)
    return fix_counts(cfg, budget)[signs]


def fix_bound(cfg, signs) -> int:
    """Upper bound 2^{|J|(n-|J|)} * prod_{i<j in J} * prod_{i<j not in J} on |Fix(P_J)|."""
    cfg = _cfg(cfg)
    J = {i for i, s in enumerate(signs) if s == -1}
    n = cfg.n
    out = 2 ** (len(J) * (n - len(J)))
    for i, j in upper_positions(n):
        if (i in J) == (j in J):
            out *= cfg.gap(i, j)
    return out


def _even(*values):
    return int(all(v % 2 == 0 for v in values))


def icm_formula_n2(cfg):
    return (cfg.gap(0, 1)) // 2 + 1


def icm_formula_n3(cfg):
    d12, d13, d23 = cfg.gap(0, 1), cfg.gap(0, 2), cfg.gap(1, 2)
    total = (
        cfg.delta
        + d23 * (1 + _even(d12) + _even(d13))
        + d13 * (1 + _even(d12) + _even(d23))
        + d12 * (1 + _even(d13) + _even(d23))
    )
    q, r = divmod(total, 4)
    if r:
        raise ArithmeticError("cubic formula is not an integer")
    return q


def icm_formula_n4(cfg):
    """Conjectural count for n = 4 (not proved)."""
    d = {(i + 1, j + 1): cfg.gap(i, j) for i, j in upper_positions(4)}
    E = _even
    total = (
        cfg.delta
        + (1 + E(d[1, 2]) + E(d[1, 3]) + E(d[1, 4])) * d[2, 3] * d[2, 4] * d[3, 4]
        + (1 + E(d[1, 2]) + E(d[2, 3]) + E(d[2, 4])) * d[1, 3] * d[1, 4] * d[3, 4]
        + (1 + E(d[1, 3]) + E(d[2, 3]) + E(d[3, 4])) * d[1, 2] * d[1, 4] * d[2, 4]
        + (1 + E(d[1, 4]) + E(d[2, 4]) + E(d[3, 4])) * d[1, 2] * d[2, 3] * d[1, 3]
        + (1 + E(d[2, 3]) + E(d[1, 3]) + E(d[2, 4]) + E(d[1, 4])
           + E(d[1, 4], d[2, 3]) + E(d[2, 4], d[1, 3])) * d[1, 2] * d[3, 4]
        + (1 + E(d[1, 2]) + E(d[1, 4]) + E(d[2, 3]) + E(d[3, 4])
           + E(d[1, 2], d[3, 4]) + E(d[1, 4], d[2, 3])) * d[1, 3] * d[2, 4]
        + (1 + E(d[1, 2]) + E(d[1, 3]) + E(d[2, 4]) + E(d[3, 4])
           + E(d[2, 4], d[1, 3]) + E(d[1, 2], d[3, 4])) * d[1, 4] * d[2, 3]
    )
    return total // 8, total % 8


def icm_order_formula(cfg) -> IcmResult:
    cfg = _cfg(cfg)
    if cfg.n == 2:
        return IcmResult(icm_formula_n2(cfg), "formula", True)
    if cfg.n == 3:
        return IcmResult(icm_formula_n3(cfg), "formula", True)
    if cfg.n == 4:
        q, r = icm_formula_n4(cfg)
        if r:
            raise ArithmeticError(f"conjectural n=4 expression is not an integer for {cfg}")
        return IcmResult(q, "formula", False)
    raise InvalidInput(f"no closed formula for n = {cfg.n}")


def icm_order(cfg, method="auto", budget=None) -> IcmResult:
    """|ICM(R)| by the requested route.

    ``auto`` uses the proved formulas for n <= 3, enumeration within budget
    for larger n, and the conjectural n = 4 expression only as a last resort.
    """
    cfg = _cfg(cfg)
    if method == "formula":
        return icm_order_formula(cfg)
    if method == "bruteforce":
        return IcmResult(icm_order_bruteforce(cfg, budget), "bruteforce", True)
    if method == "burnside":
        return IcmResult(icm_order_burnside(cfg, budget), "burnside", True)
    if method != "auto":
        raise InvalidInput(f"unknown method {method!r}")
    if cfg.n <= 3:
        return icm_order_formula(cfg)
    try:
        return IcmResult(icm_order_burnside(cfg, budget), "burnside", True)
    except BudgetExceeded:
        if cfg.n == 4:
            return icm_order_formula(cfg)
        raise
