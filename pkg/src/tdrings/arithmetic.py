"""Integer invariants of the ring Z[x]/((x-a_1)...(x-a_n)).

Everything here is exact and works on Python integers of any size.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce

from .errors import InvalidInput

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 1 << 64


@dataclass(frozen=True)
class RootConfig:
    """Strictly increasing integer roots a_1 < ... < a_n, n >= 2."""

    roots: tuple

    def __post_init__(self):
        roots = tuple(int(a) for a in self.roots)
        object.__setattr__(self, "roots", roots)
        if len(roots) < 2:
            raise InvalidInput("need at least two roots")
        if len(set(roots)) != len(roots):
            raise InvalidInput(f"roots must be distinct: {roots}")
        if any(x >= y for x, y in zip(roots, roots[1:])):
            raise InvalidInput(f"roots must be strictly increasing: {roots}")

    @classmethod
    def of(cls, *roots):
        if len(roots) == 1 and not isinstance(roots[0], int):
            roots = tuple(roots[0])
        return cls(tuple(roots))

    @property
    def n(self):
        return len(self.roots)

    @property
    def span(self):
        return self.roots[-1] - self.roots[0]

    def gap(self, i, j):
        """a_j - a_i with 0-based indices."""
        return self.roots[j] - self.roots[i]

    def shifted(self, c):
        return RootConfig(tuple(a + c for a in self.roots))

    def normalized(self):
        return self.shifted(-self.roots[0])

    @cached_property
    def profile(self):
        return delta_profile(self)

    @property
    def delta(self):
        return self.profile.delta

    @cached_property
    def delta_primes(self):
        """Primes dividing Delta, found by factoring the individual differences."""
        primes = set()
        for i, j in itertools.combinations(range(self.n), 2):
            primes.update(_prime_divisors(self.gap(i, j)))
        return tuple(sorted(primes))

    def __str__(self):
        return ",".join(map(str, self.roots))


@dataclass(frozen=True)
class DeltaProfile:
    delta: int
    deltas: tuple  # deltas[l-1] = Delta_l for l = 1..n-1

    def __getitem__(self, l):
        if not 1 <= l <= len(self.deltas):
            raise IndexError(l)
        return self.deltas[l - 1]


def subset_delta(roots, subset):
    """Delta_S: product of a_j - a_i over i < j in S."""
    out = 1
    for i, j in itertools.combinations(sorted(subset), 2):
        out *= roots[j] - roots[i]
    return out


def delta_profile(cfg: RootConfig) -> DeltaProfile:
    roots = cfg.roots
    n = len(roots)
    if n < 2:
        raise InvalidInput("need n >= 2")
    deltas = []
    for l in range(1, n):
        g = 0
        for subset in itertools.combinations(range(n), l + 1):
            g = math.gcd(g, subset_delta(roots, subset))
            if g == 1:
                break
        deltas.append(g)
    return DeltaProfile(delta=deltas[-1], deltas=tuple(deltas))


def rho(m: int) -> int:
    """prod_{1 <= i < j <= m+1} (j - i) = 1! 2! ... m!."""
    if m < 1:
        raise InvalidInput(f"rho needs m >= 1, got {m}")
    out, f = 1, 1
    for k in range(1, m + 1):
        f *= k
        out *= f
    return out


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, valid below 2**64."""
    if p < 2:
        return False
    if p >= _MR_LIMIT:
        raise InvalidInput(f"primality test supports p < 2**64, got {p}")
    for q in _MR_BASES:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def primes_up_to(n):
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, f in enumerate(sieve) if f]


def residue_class_count(cfg: RootConfig, p: int) -> int:
    """A(p): number of distinct residues of the roots modulo the prime p."""
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    return len({a % p for a in cfg.roots})


def check_delta_ap_equivalence(cfg: RootConfig, p: int, l: int) -> bool:
    if not 1 <= l <= cfg.n - 1:
        raise InvalidInput(f"l must be in 1..{cfg.n - 1}")
    divides = cfg.profile[l] % p == 0
    return divides == (residue_class_count(cfg, p) <= l)


def _check_length(cfg, values):
    values = [int(v) for v in values]
    if len(values) != cfg.n:
        raise InvalidInput(f"expected {cfg.n} values, got {len(values)}")
    return values


def interpolation_member(cfg: RootConfig, values) -> bool:
    """True iff some f in Z[x] has f(a_i) = values[i] for all i.

    Every divided difference of an integer polynomial at integer nodes is an
    integer, and the Newton form has the top-path differences as coefficients,
    so integrality at every step decides membership.
    """
    vals = _check_length(cfg, values)
    x = cfg.roots
    n = len(x)
    for level in range(1, n):
        for i in range(n - level):
            num = vals[i + 1] - vals[i]
            den = x[i + level] - x[i]
            if num % den:
                return False
            vals[i] = num // den
        vals.pop()
    return True


def rprime_member(cfg: RootConfig, values) -> bool:
    """Membership in R' = {b : b_j = b_i mod (a_j - a_i)}."""
    vals = _check_length(cfg, values)
    x = cfg.roots
    return all(
        (vals[j] - vals[i]) % (x[j] - x[i]) == 0
        for i, j in itertools.combinations(range(len(x)), 2)
    )


def unit_group(cfg: RootConfig) -> set:
    """Sign vectors lying in the image of R in Z^n, i.e. the units of R."""
    return {
        signs
        for signs in itertools.product((1, -1), repeat=cfg.n)
        if interpolation_member(cfg, signs)
    }


def difference_product(values):
    out = 1
    for i, j in itertools.combinations(range(len(values)), 2):
        out *= values[j] - values[i]
    return out


def vandermonde_divisibility(values) -> bool:
    values = [int(v) for v in values]
    m = len(values)
    if m < 2:
        raise InvalidInput("need at least two values")
    return difference_product(values) % rho(m - 1) == 0


def factorize(m: int) -> dict:
    """Trial-division factorization of |m| as {prime: exponent}."""
    m = abs(int(m))
    if m == 0:
        raise InvalidInput("cannot factor 0")
    out = {}
    for p in (2, 3):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    p, step = 5, 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += step
        step = 6 - step
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@lru_cache(maxsize=8192)
def _prime_divisors(m: int) -> tuple:
    # sweeps revisit the same differences row after row
    return tuple(factorize(m))


def totient(m: int, primes=None) -> int:
    """Euler's totient.

    ``primes``, when given, must contain every prime divisor of m; it lets
    huge values with known small support skip the trial division.
    """
    m = int(m)
    if m < 1:
        raise InvalidInput(f"totient needs m >= 1, got {m}")
    if primes is None:
        primes = factorize(m)
    out = m
    for p in primes:
        if m % p == 0:
            out = out // p * (p - 1)
    return out


def lcm(*values):
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)
