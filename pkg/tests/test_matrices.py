import itertools
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import conjugate, orbit_count_union_find, random_unimodular, small_configs
from tdrings.arithmetic import RootConfig
from tdrings.errors import BudgetExceeded, CharPolyMismatch, InvalidInput
from tdrings.linalg import det, matmul
from tdrings.matrices import (
    ClassLabel,
    OmegaMatrix,
    canonical_label,
    canonicalize,
    check_charpoly,
    fix_bound,
    fix_count,
    fix_counts,
    icm_formula_n2,
    icm_formula_n3,
    icm_formula_n4,
    icm_order,
    icm_order_bruteforce,
    icm_order_burnside,
    icm_order_formula,
    icm_representatives,
    label_from_upper,
    omega0,
    primitive_extend,
    reduce_to_omega0,
    sign_conjugate,
    triangularize,
)


class TestOmegaMatrix:
    def test_matrix_and_entries(self):
        T = OmegaMatrix((0, 2, 6), (1, 3, 2))
        assert T.matrix() == [[0, 1, 3], [0, 2, 2], [0, 0, 6]]
        assert T.entry(0, 2) == 3 and T.entry(2, 0) == 0 and T.entry(1, 1) == 2
        assert T.reduced
        assert not OmegaMatrix((0, 2, 6), (2, 0, 0)).reduced
        assert OmegaMatrix.from_matrix(T.matrix(), (0, 2, 6)) == T

    def test_from_matrix_rejects(self):
        with pytest.raises(InvalidInput):
            OmegaMatrix.from_matrix([[0, 1], [1, 2]], (0, 2))
        with pytest.raises(InvalidInput):
            OmegaMatrix.from_matrix([[1, 1], [0, 2]], (0, 2))
        with pytest.raises(InvalidInput):
            OmegaMatrix((0, 2), (1, 1))

    def test_index_roundtrip(self):
        roots = (0, 2, 5)
        for k, T in enumerate(omega0(RootConfig(roots))):
            assert T.index() == k
            assert OmegaMatrix.from_index(roots, k) == T


class TestCharpoly:
    def test_accepts_conjugates(self):
        r = random.Random(1)
        cfg = RootConfig((0, 3, 7))
        A = OmegaMatrix(cfg.roots, (2, 5, 1)).matrix()
        for _ in range(20):
            check_charpoly(conjugate(random_unimodular(3, r), A), cfg)

    def test_rejects(self):
        cfg = RootConfig((0, 1))
        with pytest.raises(CharPolyMismatch):
            check_charpoly([[0, 1], [0, 0]], cfg)
        with pytest.raises(CharPolyMismatch):
            check_charpoly([[1, 0], [0, 1]], cfg)
        with pytest.raises(CharPolyMismatch):
            check_charpoly([[0, 0, 0], [0, 1, 0], [0, 0, 2]], cfg)
        # same trace and determinant as diag(0, 1, 5) is not enough
        with pytest.raises(CharPolyMismatch):
            check_charpoly([[0, 0, 0], [0, 3, 1], [0, -4, 3]], RootConfig((0, 1, 5)))

    def test_against_sympy_charpoly(self):
        r = random.Random(2)
        x = sympy.Symbol("x")
        for _ in range(200):
            roots = (0, 1, 4)
            A = [[r.randint(-3, 3) for _ in range(3)] for _ in range(3)]
            want = sympy.expand(sympy.Matrix(A).charpoly(x).as_expr() - x * (x - 1) * (x - 4)) == 0
            try:
                check_charpoly(A, RootConfig(roots))
                got = True
            except CharPolyMismatch:
                got = False
            assert got == want


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=5))
def test_primitive_extend(v):
    g = 0
    for x in v:
        g = sympy.igcd(g, x)
    if g != 1:
        with pytest.raises(InvalidInput):
            primitive_extend(v)
        return
    M = primitive_extend(v)
    assert [row[0] for row in M] == v
    assert abs(det(M)) == 1


class TestTriangularize:
    @pytest.mark.parametrize("roots", [(0, 1), (0, 5), (0, 2, 6), (-3, 1, 2, 9), (0, 1, 3, 4, 8)])
    def test_conjugation_identity(self, roots):
        r = random.Random(len(roots))
        cfg = RootConfig(roots)
        n = cfg.n
        for _ in range(15):
            upper = tuple(r.randint(-9, 9) for _ in range(n * (n - 1) // 2))
            A = conjugate(random_unimodular(n, r), OmegaMatrix(roots, upper).matrix())
            T, U = triangularize(A, cfg)
            assert abs(det(U)) == 1
            assert matmul(U, A) == matmul(T.matrix(), U)

    def test_reduce_to_omega0(self):
        r = random.Random(3)
        roots = (0, 2, 3, 7)
        for _ in range(50):
            T = OmegaMatrix(roots, tuple(r.randint(-40, 40) for _ in range(6)))
            R, V = reduce_to_omega0(T)
            assert R.reduced
            assert all(V[i][i] == 1 for i in range(4)) and all(V[i][j] == 0 for i in range(4) for j in range(i))
            assert matmul(V, T.matrix()) == matmul(R.matrix(), V)


class TestCanonicalLabel:
    @pytest.mark.parametrize("roots", [(0, 6), (0, 2, 5), (1, 2, 4, 7)])
    def test_invariant_under_conjugation(self, roots):
        r = random.Random(sum(roots))
        cfg = RootConfig(roots)
        n = cfg.n
        for T in itertools.islice(omega0(cfg), 0, None, 3):
            want = canonical_label(T, cfg)
            A = conjugate(random_unimodular(n, r), T.matrix())
            assert canonical_label(A, cfg) == want
            label, U = canonicalize(A, cfg)
            assert label == want
            assert matmul(U, A) == matmul(label.matrix(), U)

    def test_sign_orbit(self):
        T = OmegaMatrix((0, 3, 7), (1, 2, 3))
        lab = canonical_label(T, (0, 3, 7))
        for signs in itertools.product((1, -1), repeat=3):
            R, _ = reduce_to_omega0(sign_conjugate(T, signs))
            assert canonical_label(R, (0, 3, 7)) == lab
        assert lab.upper <= min(
            reduce_to_omega0(sign_conjugate(T, s))[0].upper for s in itertools.product((1, -1), repeat=3)
        )

    def test_label_from_upper(self):
        assert label_from_upper((0, 5), (4,)) == ClassLabel(OmegaMatrix((0, 5), (1,)))
        assert label_from_upper((0, 5), (-7,)) == ClassLabel(OmegaMatrix((0, 5), (2,)))


class TestCounting:
    def test_quadratic(self):
        for m in range(1, 30):
            cfg = RootConfig((0, m))
            assert icm_order_bruteforce(cfg) == icm_order_burnside(cfg) == icm_formula_n2(cfg) == m // 2 + 1

    def test_examples(self):
        assert icm_order_bruteforce(RootConfig((0, 1, 3))) == 4
        assert icm_order_bruteforce(RootConfig((0, 1, 5))) == 9
        assert icm_formula_n3(RootConfig((0, 1, 5))) == 9
        assert fix_counts(RootConfig((0, 5))) == {(1, 1): 5, (1, -1): 1}

    def test_union_find_oracle(self):
        for cfg in list(small_configs(3, 7)) + [RootConfig((0, 1, 2, 4)), RootConfig((0, 2, 3, 5))]:
            assert orbit_count_union_find(cfg.roots) == icm_order_bruteforce(cfg), cfg

    def test_representatives(self):
        cfg = RootConfig((0, 2, 6))
        reps = icm_representatives(cfg)
        assert len(reps) == icm_formula_n3(cfg)
        assert reps == sorted(reps)
        assert {canonical_label(T, cfg) for T in omega0(cfg)} == set(reps)

    def test_fix_bound_dominates(self):
        for cfg in list(small_configs(3, 8)) + list(small_configs(4, 6)):
            for signs in itertools.product((1, -1), repeat=cfg.n):
                assert fix_count(cfg, signs) <= fix_bound(cfg, signs)
        with pytest.raises(InvalidInput):
            fix_count(RootConfig((0, 1)), (1, 0))

    def test_identity_fix_is_everything(self):
        cfg = RootConfig((0, 3, 4))
        assert fix_count(cfg, (1, 1, 1)) == fix_count(cfg, (-1, -1, -1)) == cfg.delta
        assert fix_bound(cfg, (1, 1, 1)) == cfg.delta

    def test_n4_formula_shape(self):
        q, r = icm_formula_n4(RootConfig((0, 1, 2, 3)))
        assert r == 0 and q == icm_order_bruteforce(RootConfig((0, 1, 2, 3)))
        assert icm_order_formula(RootConfig((0, 1, 2, 3))).proved is False
        with pytest.raises(InvalidInput):
            icm_order_formula(RootConfig((0, 1, 2, 3, 4)))


class TestDispatch:
    def test_methods(self):
        cfg = RootConfig((0, 2, 5))
        got = {icm_order(cfg, m).order for m in ("auto", "formula", "bruteforce", "burnside")}
        assert got == {icm_formula_n3(cfg)}
        assert icm_order(cfg).method == "formula"
        assert icm_order(RootConfig((0, 1, 2, 4))).method == "burnside"
        with pytest.raises(InvalidInput):
            icm_order(cfg, "guess")

    def test_budget(self, monkeypatch):
        cfg = RootConfig((0, 1, 3, 7))
        with pytest.raises(BudgetExceeded):
            icm_order_bruteforce(cfg, budget=10)
        res = icm_order(cfg, budget=10)
        assert res.method == "formula" and res.proved is False
        monkeypatch.setenv("TDRINGS_MAX_DELTA", "5")
        with pytest.raises(BudgetExceeded):
            icm_order_burnside(cfg)

    def test_budget_n5_raises(self):
        with pytest.raises(BudgetExceeded):
            icm_order(RootConfig((0, 1, 2, 3, 100)), budget=1000)


@given(st.integers(-20, 20), st.integers(1, 15), st.integers(1, 15))
@settings(max_examples=40, deadline=None)
def test_shift_invariance(a, g1, g2):
    cfg = RootConfig((a, a + g1, a + g1 + g2))
    assert icm_order_bruteforce(cfg) == icm_order_bruteforce(cfg.normalized()) == icm_formula_n3(cfg)
