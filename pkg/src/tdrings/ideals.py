"""Fractional ideals of R as lattices in Q^n.

K = Q (x) R is identified with Q^n by evaluating at the roots, so ideal
products are componentwise and R-stability means stability under
coordinatewise multiplication by (a_1, ..., a_n). A lattice is stored as a
positive denominator d and an integer basis in column Hermite normal form;
the lattice is (1/d) times the column span.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .arithmetic import RootConfig, lcm
from .errors import InvalidInput, StabilityError
from .linalg import hnf_columns, invariant_factors, nullspace, triangular_adjugate
from .matrices import (
    ClassLabel,
    OmegaMatrix,
    _check_budget,
    _cfg,
    check_charpoly,
    icm_representatives,
    in_omega,
)


@dataclass(frozen=True)
class LatticeIdeal:
    """(1/denominator) * span of ``basis`` columns; basis stored column-wise."""

    roots: tuple
    denominator: int
    basis: tuple  # tuple of n column tuples, HNF

    @property
    def n(self):
        return len(self.roots)

    def basis_matrix(self):
        """Row-major matrix whose columns are the generators."""
        n = self.n
        return [[self.basis[j][i] for j in range(n)] for i in range(n)]

    def covolume(self):
        """Index-like volume: det(basis) / d^n as a Fraction."""
        out = 1
        for j, col in enumerate(self.basis):
            out *= col[j]
        return Fraction(out, self.denominator**self.n)

    def vectors(self):
        d = self.denominator
        return [[Fraction(x, d) for x in col] for col in self.basis]

    def contains(self, v) -> bool:
        """Membership of a rational vector."""
        d = self.denominator
        w = [Fraction(x) * d for x in v]
        if any(x.denominator != 1 for x in w):
            return False
        w = [int(x) for x in w]
        n = self.n
        for j in range(n - 1, -1, -1):
            col = self.basis[j]
            if w[j] % col[j]:
                return False
            q = w[j] // col[j]
            if q:
                w = [x - q * y for x, y in zip(w, col)]
        return not any(w)

    def scaled(self, k) -> "LatticeIdeal":
        """Coordinatewise product k * I for a vector k of nonzero rationals."""
        k = [Fraction(x) for x in k]
        if any(x == 0 for x in k):
            raise InvalidInput("scaling vector must have nonzero entries")
        gens = [[ki * Fraction(x, self.denominator) for ki, x in zip(k, col)] for col in self.basis]
        return from_generators(self.roots, gens)

    def to_json(self):
        return {"denominator": self.denominator, "basis": self.basis_matrix()}

    @classmethod
    def from_json(cls, roots, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            d = int(data["denominator"])
            rows = data["basis"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput("ideal JSON needs 'denominator' and 'basis'") from exc
        n = len(roots)
        if d <= 0 or len(rows) != n or any(len(r) != n for r in rows):
            raise InvalidInput("malformed ideal JSON")
        gens = [[Fraction(rows[i][j], d) for i in range(n)] for j in range(n)]
        ideal = from_generators(roots, gens)
        check_stable(ideal)
        return ideal


def _normalize(roots, d, columns):
    g = d
    for col in columns:
        for x in col:
            g = math.gcd(g, x)
            if g == 1:
                break
    if g > 1:
        d //= g
        columns = [[x // g for x in col] for col in columns]
    return LatticeIdeal(tuple(roots), d, tuple(tuple(c) for c in columns))


def from_integer_generators(roots, d, vectors):
    n = len(roots)
    return _normalize(roots, d, hnf_columns(vectors, n))


def from_generators(roots, vectors) -> LatticeIdeal:
    """Z-span of rational vectors (must have full rank)."""
    roots = tuple(roots)
    vecs = [[Fraction(x) for x in v] for v in vectors]
    if any(len(v) != len(roots) for v in vecs):
        raise InvalidInput("generator length does not match n")
    d = lcm(*(x.denominator for v in vecs for x in v))
    ints = [[int(x * d) for x in v] for v in vecs]
    return from_integer_generators(roots, d, ints)


def _power_rows(roots):
    n = len(roots)
    return [[a**k for a in roots] for k in range(n)]


def ideal_from_generators(cfg, elements) -> LatticeIdeal:
    """R-module generated by the given elements of K (as Q^n vectors)."""
    cfg = _cfg(cfg)
    powers = _power_rows(cfg.roots)
    gens = [[x * p for x, p in zip(e, pw)] for e in elements for pw in powers]
    return from_generators(cfg.roots, gens)


def polynomial_element(cfg, coeffs):
    """Image of sum c_k x^k under evaluation at the roots."""
    cfg = _cfg(cfg)
    return [sum(c * a**k for k, c in enumerate(coeffs)) for a in cfg.roots]


@lru_cache(maxsize=512)
def _r_lattice(roots):
    return from_integer_generators(roots, 1, _power_rows(roots))


def canonical_r_lattice(cfg) -> LatticeIdeal:
    """phi(R): the span of the Vandermonde columns (a_i^k)."""
    return _r_lattice(_cfg(cfg).roots)


def _solve_in_basis(basis, v):
    """Integer coordinates of integer vector v in an upper HNF basis, or None."""
    n = len(basis)
    w = list(v)
    out = [0] * n
    for j in range(n - 1, -1, -1):
        col = basis[j]
        if w[j] % col[j]:
            return None
        q = w[j] // col[j]
        out[j] = q
        if q:
            for i in range(j + 1):
                w[i] -= q * col[i]
    return out


def check_stable(I: LatticeIdeal):
    """Raise StabilityError unless diag(a) I is contained in I."""
    for col in I.basis:
        if _solve_in_basis(I.basis, [a * x for a, x in zip(I.roots, col)]) is None:
            raise StabilityError("lattice is not stable under multiplication by x")


def is_stable(I: LatticeIdeal) -> bool:
    try:
        check_stable(I)
    except StabilityError:
        return False
    return True


def _same_ring(I, J):
    if I.roots != J.roots:
        raise InvalidInput("ideals live over different roots")


def ideal_product(I: LatticeIdeal, J: LatticeIdeal) -> LatticeIdeal:
    _same_ring(I, J)
    gens = [[x * y for x, y in zip(b, c)] for b in I.basis for c in J.basis]
    return from_integer_generators(I.roots, I.denominator * J.denominator, gens)


def colon(I: LatticeIdeal, J: LatticeIdeal) -> LatticeIdeal:
    """(I:J) = {k in Q^n : k * J contained in I}.

    With I = (1/dI) B Z^n the condition on k for each generator b/dJ of J is
    dI adj(B) diag(b) k in dJ det(B) Z^n. Stacking these for all b gives a
    row lattice W and the solution set D W^{-1} Z^n.
    """
    _same_ring(I, J)
    n = I.n
    B = I.basis_matrix()
    adj, detB = triangular_adjugate(B)
    D = J.denominator * detB
    rows = []
    for b in J.basis:
        for r in adj:
            rows.append([I.denominator * r[i] * b[i] for i in range(n)])
    # HNF vectors w_j vanish below j: as columns they form the upper-triangular W^T
    Wt = [list(r) for r in zip(*hnf_columns(rows, n))]
    adjWt, detW = triangular_adjugate(Wt)
    adjW = [list(r) for r in zip(*adjWt)]
    # k = D * W^{-1} z = (D / detW) * adj(W) z
    cols = [[D * adjW[i][j] for i in range(n)] for j in range(n)]
    return from_integer_generators(I.roots, detW, cols)


def is_invertible(I: LatticeIdeal) -> bool:
    """Gorenstein criterion: I is invertible iff (I:I) = R."""
    return colon(I, I) == canonical_r_lattice(RootConfig(I.roots))


def _omega_eigen_rows(upper, roots):
    """Integer generators and denominator for an Omega matrix.

    Row i is the left eigenvector for a_i with r_i[i] = 1. Writing
    r_i[j] = s_i[j] / prod_{i<k<=j} (a_i - a_k) keeps s_i integral:
    s_i[j] = sum_{i<=k<j} s_i[k] T[k][j] prod_{k<m<j} (a_i - a_m).
    """
    n = len(roots)
    T = [[0] * n for _ in range(n)]
    p = 0
    for i in range(n):
        for j in range(i + 1, n):
            T[i][j] = upper[p]
            p += 1
    rows, scales = [], []
    for i in range(n):
        ai = roots[i]
        s = [0] * n
        s[i] = 1
        for j in range(i + 1, n):
            acc = 0
            w = 1  # prod_{k<m<j} (a_i - a_m), built from k = j-1 downwards
            for k in range(j - 1, i - 1, -1):
                acc += s[k] * T[k][j] * w
                w *= ai - roots[k]
            s[j] = acc
        # denominators prod_{i<k<=j}(a_i - a_k) all divide c_i = prod_{k>i}(a_i - a_k)
        c = 1
        for k in range(i + 1, n):
            c *= ai - roots[k]
        tail = 1
        for j in range(n - 1, i - 1, -1):
            s[j] *= tail
            tail *= ai - roots[j]
        rows.append(s)
        scales.append(c)
    d = 1
    for c in scales:
        d = d * abs(c) // math.gcd(d, abs(c))
    cols = [[rows[i][j] * (d // scales[i]) for i in range(n)] for j in range(n)]
    return d, cols


def _left_eigenvectors(A, roots):
    n = len(roots)
    out = []
    for a in roots:
        Mt = [[A[j][i] - (a if i == j else 0) for j in range(n)] for i in range(n)]
        r = nullspace(Mt)[0]
        lead = next(x for x in r if x != 0)
        out.append([x / lead for x in r])
    return out


def matrix_to_ideal(A, cfg) -> LatticeIdeal:
    """Lattice attached to Z^n with x acting as A.

    Row i of the eigen-matrix is a left eigenvector for a_i (first nonzero
    entry 1); its columns span the lattice.
    """
    cfg = _cfg(cfg)
    if isinstance(A, (OmegaMatrix, ClassLabel)):
        if isinstance(A, ClassLabel):
            A = A.omega
        if A.roots != cfg.roots:
            raise InvalidInput("matrix diagonal does not match the roots")
        d, cols = _omega_eigen_rows(A.upper, cfg.roots)
        return from_integer_generators(cfg.roots, d, cols)
    check_charpoly(A, cfg)
    if in_omega(A, cfg.roots):
        upper = tuple(A[i][j] for i in range(cfg.n) for j in range(i + 1, cfg.n))
        d, cols = _omega_eigen_rows(upper, cfg.roots)
        return from_integer_generators(cfg.roots, d, cols)
    rows = _left_eigenvectors(A, cfg.roots)
    n = cfg.n
    cols = [[rows[i][j] for i in range(n)] for j in range(n)]
    return from_generators(cfg.roots, cols)


def _omega_upper(I: LatticeIdeal):
    n = I.n
    roots = I.roots
    cols = I.basis
    S = []
    for j in range(n):
        s = _solve_in_basis(cols, [roots[i] * cols[j][i] for i in range(n)])
        if s is None:
            raise StabilityError("lattice is not stable under multiplication by x")
        S.append(s)
    return tuple(S[j][i] for i in range(n) for j in range(i + 1, n))


def ideal_to_omega(I: LatticeIdeal) -> OmegaMatrix:
    """Matrix of multiplication by x in the HNF basis.

    The basis is upper triangular, so S = B^{-1} diag(a) B is upper triangular
    with diagonal (a_1, ..., a_n) and lies in Omega directly.
    """
    return OmegaMatrix(I.roots, _omega_upper(I))


def ideal_to_matrix(I: LatticeIdeal):
    return ideal_to_omega(I).matrix()


def ideal_label(I: LatticeIdeal) -> ClassLabel:
    return ClassLabel(OmegaMatrix(I.roots, kernels.canonical_flat(I.roots, _omega_upper(I))))


def equivalent(I: LatticeIdeal, J: LatticeIdeal) -> bool:
    _same_ring(I, J)
    return ideal_label(I) == ideal_label(J)


def quadratic_ideal(cfg, u) -> LatticeIdeal:
    """The ideal (x - b, u) for roots (a, b)."""
    cfg = _cfg(cfg)
    if cfg.n != 2:
        raise InvalidInput("quadratic ideals need n = 2")
    a, b = cfg.roots
    return ideal_from_generators(cfg, [[a - b, 0], [u, u]])


class CayleyTable:
    """Multiplication of the invertible ideal classes.

    Elements are canonical labels in increasing order; products are computed
    on demand through lattice arithmetic and memoized, so the full k x k table
    is only materialized when asked for.
    """

    def __init__(self, cfg, labels, identity_label):
        self.cfg = cfg
        self.elements = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.elements)}
        self.identity = self.index[identity_label]
        self._ideals = {}
        self._memo = {}

    def __len__(self):
        return len(self.elements)

    def ideal(self, i):
        I = self._ideals.get(i)
        if I is None:
            I = matrix_to_ideal(self.elements[i].omega, self.cfg)
            self._ideals[i] = I
        return I

    def product(self, i, j):
        key = (i, j) if i <= j else (j, i)
        k = self._memo.get(key)
        if k is None:
            lab = ideal_label(ideal_product(self.ideal(i), self.ideal(j)))
            k = self.index.get(lab)
            if k is None:
                raise ArithmeticError("product left the set of invertible classes")
            self._memo[key] = k
        return k

    @property
    def table(self):
        k = len(self)
        return [[self.product(i, j) for j in range(k)] for i in range(k)]

    def check_group_axioms(self) -> bool:
        T = self.table
        k = len(T)
        e = self.identity
        if any(T[e][i] != i for i in range(k)):
            return False
        if any(sorted(row) != list(range(k)) for row in T):
            return False
        if any(T[i][j] != T[j][i] for i in range(k) for j in range(k)):
            return False
        return all(
            T[T[i][j]][l] == T[i][T[j][l]] for i in range(k) for j in range(k) for l in range(k)
        )

    def presentation(self):
        """Generators (greedy, smallest label first) and a relation matrix.

        Adding g to the subgroup H already generated, the least m with
        g^m in H gives one relation; together these present the group, since
        the relation matrix is triangular with determinant |G|.
        """
        e = self.identity
        vec = {e: ()}
        gens, rels = [], []
        for g in range(len(self)):
            if g in vec:
                continue
            r = len(gens)
            gens.append(g)
            for rel in rels:
                rel.append(0)
            old = {h: v + (0,) for h, v in vec.items()}
            new = dict(old)
            m, gm = 1, g
            while gm not in old:
                for h, v in old.items():
                    new[self.product(h, gm)] = v[:r] + (m,)
                gm = self.product(gm, g)
                m += 1
            rels.append([-x for x in old[gm][:r]] + [m])
            vec = new
        self.coordinates = vec
        return gens, rels

    def invariant_factors(self):
        gens, rels = self.presentation()
        if not gens:
            return []
        return sorted(invariant_factors(rels, len(gens)))


def class_group_bruteforce(cfg, budget=None) -> CayleyTable:
    """Enumerate ICM labels, keep the invertible classes, return the table."""
    cfg = _cfg(cfg)
    _check_budget(cfg, budget)
    R = canonical_r_lattice(cfg)
    identity_label = ideal_label(R)
    keep = []
    for lab in icm_representatives(cfg, budget):
        if is_invertible(matrix_to_ideal(lab.omega, cfg)):
            keep.append(lab)
    return CayleyTable(cfg, keep, identity_label)


def count_invertible_classes(cfg, budget=None) -> int:
    cfg = _cfg(cfg)
    _check_budget(cfg, budget)
    return sum(
        1 for lab in icm_representatives(cfg, budget)
        if is_invertible(matrix_to_ideal(lab.omega, cfg))
    )
