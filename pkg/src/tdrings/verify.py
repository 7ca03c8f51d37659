"""Property suites run by ``tdrings verify``.

Each suite draws pseudorandom or exhaustive cases from a seeded generator and
returns a summary dict with case and failure counts; a suite that cannot reach
its minimum case count within the enumeration budget raises BudgetExceeded.
"""
from __future__ import annotations

import itertools
import random

from . import kernels
from .arithmetic import (
    RootConfig,
    check_delta_ap_equivalence,
    primes_up_to,
    rho,
    unit_group,
    vandermonde_divisibility,
)
from .errors import BudgetExceeded
from .experiments import conjecture_campaign_n4
from .formulas import cl_order_formula, cl_structure_n3, cl_structure_n3_coprime
from .ideals import class_group_bruteforce, ideal_label, matrix_to_ideal
from .matrices import OmegaMatrix, icm_formula_n2, icm_formula_n3, upper_positions

DEFAULT_SEED = 20240613


def random_config(rng, max_n=6, bound=10**6):
    n = rng.randint(2, max_n)
    return RootConfig(tuple(sorted(rng.sample(range(-bound, bound + 1), n))))


def configs_up_to_delta(n, max_delta):
    """All configs with a_1 = 0 and Delta <= max_delta, in lexicographic order."""
    out = []

    def grow(roots):
        if len(roots) == n:
            out.append(RootConfig(tuple(roots)))
            return
        nxt = roots[-1] + 1
        while True:
            delta = 1
            trial = roots + [nxt]
            for i, j in itertools.combinations(range(len(trial)), 2):
                delta *= trial[j] - trial[i]
            # remaining roots can only multiply Delta further
            if delta > max_delta:
                return
            grow(trial)
            nxt += 1

    grow([0])
    return out


class _Tally:
    def __init__(self, suite, seed):
        self.suite = suite
        self.seed = seed
        self.cases = 0
        self.failures = 0
        self.examples = []

    def check(self, ok, detail):
        self.cases += 1
        if not ok:
            self.failures += 1
            if len(self.examples) < 10:
                self.examples.append(detail)

    def summary(self, **extra):
        out = {"suite": self.suite, "seed": self.seed, "cases": self.cases,
               "failures": self.failures, "failure_examples": self.examples}
        out.update(extra)
        return out


def suite_delta_ap(cases=10000, seed=DEFAULT_SEED, max_n=6, bound=10**6, max_prime=100):
    rng = random.Random(seed)
    t = _Tally("delta-ap", seed)
    primes = primes_up_to(max_prime)
    for _ in range(cases):
        cfg = random_config(rng, max_n, bound)
        ok = all(
            check_delta_ap_equivalence(cfg, p, l) for p in primes for l in range(1, cfg.n)
        )
        t.check(ok, list(cfg.roots))
    return t.summary()


def suite_rho(cases=10000, seed=DEFAULT_SEED, max_m=8, bound=10**9):
    rng = random.Random(seed)
    t = _Tally("rho", seed)
    for _ in range(cases):
        m = rng.randint(2, max_m)
        values = [rng.randint(-bound, bound) for _ in range(m)]
        t.check(vandermonde_divisibility(values), values)
    for _ in range(max(1, cases // 10)):
        cfg = random_config(rng, 6, 1000)
        ok = all(cfg.profile[l] % rho(l) == 0 for l in range(1, cfg.n))
        t.check(ok, list(cfg.roots))
    return t.summary()


def expected_units(cfg):
    """The unit group predicted from the span: {+-1} or one of the listed larger shapes."""
    n, span = cfg.n, cfg.span
    signs = set(itertools.product((1, -1), repeat=n))
    if (n == 2 and span <= 2) or (n == 3 and span == 2):
        return signs
    if n in (3, 4) and span == 3:
        return {s for s in signs if s[0] == s[-1]}
    # every remaining config, span >= 4 or (n, span) = (2, 3), has only +-1
    return {(1,) * n, (-1,) * n}


def suite_units(max_span=12, max_n=6, seed=DEFAULT_SEED):
    t = _Tally("units", seed)
    for n in range(2, max_n + 1):
        for rest in itertools.combinations(range(1, max_span + 1), n - 1):
            cfg = RootConfig((0,) + rest)
            t.check(unit_group(cfg) == expected_units(cfg), list(cfg.roots))
    return t.summary()


def suite_lm_roundtrip(max_delta=2000, seed=DEFAULT_SEED, dims=(2, 3), min_cases=1):
    t = _Tally("lm-roundtrip", seed)
    for n in dims:
        for cfg in configs_up_to_delta(n, max_delta):
            ranges = [range(cfg.gap(i, j)) for i, j in upper_positions(n)]
            for upper in itertools.product(*ranges):
                want = kernels.canonical_flat(cfg.roots, upper)
                got = ideal_label(matrix_to_ideal(OmegaMatrix(cfg.roots, upper), cfg)).upper
                t.check(got == want, [list(cfg.roots), list(upper)])
    if t.cases < min_cases:
        raise BudgetExceeded(min_cases, t.cases)
    return t.summary()


def suite_burnside(max_delta=5000, seed=DEFAULT_SEED, dims=(2, 3, 4), min_cases=1):
    t = _Tally("burnside", seed)
    for n in dims:
        for cfg in configs_up_to_delta(n, max_delta):
            orbits, fix, _ = kernels.scan_omega0(cfg.roots)
            burn, rem = divmod(2 * sum(fix), 2**n)
            ok = rem == 0 and burn == orbits
            if n == 2:
                ok = ok and orbits == icm_formula_n2(cfg)
            elif n == 3:
                ok = ok and orbits == icm_formula_n3(cfg)
            t.check(ok, list(cfg.roots))
    if t.cases < min_cases:
        raise BudgetExceeded(min_cases, t.cases)
    return t.summary()


def suite_conjecture_n4(max_span=8, seed=DEFAULT_SEED, budget=None):
    report = conjecture_campaign_n4(max_span, budget)
    t = _Tally("conjecture-n4", seed)
    for row in report.rows:
        if row.agree is not None:
            t.check(row.agree, list(row.roots))
    out = t.summary(**report.as_dict())
    if report.skipped:
        out["note"] = "configs above the enumeration budget were skipped"
    return out


def suite_cubic_structure(max_delta=5000, seed=DEFAULT_SEED, min_cases=1):
    t = _Tally("cubic-structure", seed)
    for cfg in configs_up_to_delta(3, max_delta):
        if cfg.span < 4:
            continue
        table = class_group_bruteforce(cfg)
        brute = tuple(table.invariant_factors())
        theory = cl_structure_n3(cfg).invariant_factors
        ok = brute == theory and len(table) == cl_order_formula(cfg)
        if cfg.profile[1] == 1:
            ok = ok and cl_structure_n3_coprime(cfg).invariant_factors == brute
        t.check(ok, [list(cfg.roots), list(brute), list(theory)])
    if t.cases < min_cases:
        raise BudgetExceeded(min_cases, t.cases)
    return t.summary()


SUITES = {
    "delta-ap": suite_delta_ap,
    "rho": suite_rho,
    "units": suite_units,
    "lm-roundtrip": suite_lm_roundtrip,
    "burnside": suite_burnside,
    "conjecture-n4": suite_conjecture_n4,
    "cubic-structure": suite_cubic_structure,
}
