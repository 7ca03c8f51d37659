"""Order and structure of the class group Cl(R).

Orders come from the closed totient formula. Structures are computed as
quotients of explicit unit groups: each (Z/m)^x is split into cyclic
factors, subgroup generators are written in those coordinates with discrete
logarithms, and Smith normal form yields the invariant factors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .arithmetic import factorize, totient
from .errors import InvalidInput
from .linalg import hnf_columns, smith_normal_form
from .matrices import _cfg

ENUMERATION_LIMIT = 20000


@dataclass(frozen=True)
class AbelianStructure:
    """Invariant factors d_1 | d_2 | ... | d_k, all >= 2; empty means trivial."""

    invariant_factors: tuple = ()

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        if any(d < 2 for d in f):
            raise InvalidInput(f"invariant factors must be >= 2: {f}")
        if any(b % a for a, b in zip(f, f[1:])):
            raise InvalidInput(f"not a divisibility chain: {f}")

    @property
    def order(self):
        return math.prod(self.invariant_factors)

    def to_json(self):
        return list(self.invariant_factors)

    @classmethod
    def from_factors(cls, factors):
        """Normalize any list of cyclic orders into invariant factors."""
        factors = [int(d) for d in factors if int(d) != 1]
        if any(d <= 0 for d in factors):
            raise InvalidInput("cyclic orders must be positive")
        if not factors:
            return cls(())
        D = [[d if i == j else 0 for j in range(len(factors))] for i, d in enumerate(factors)]
        _, S, _ = smith_normal_form(D)
        return cls(tuple(S[i][i] for i in range(len(factors)) if S[i][i] != 1))

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def cl_order_formula(cfg) -> int:
    """|Cl(R)| = phi(Delta)/2^(n-1) * prod_{l=1}^{n-2} phi(Delta_l)/Delta_l, or 1 for span < 4."""
    cfg = _cfg(cfg)
    if cfg.span < 4:
        return 1
    primes = cfg.delta_primes
    prof = cfg.profile
    num = totient(prof.delta, primes)
    den = 2 ** (cfg.n - 1)
    for l in range(1, cfg.n - 1):
        num *= totient(prof[l], primes)
        den *= prof[l]
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"class number formula is not an integer for {cfg}")
    return q


def quotient_structure(cyclic_orders, subgroup_generators) -> AbelianStructure:
    """Structure of (prod Z/c_i) / <generators>."""
    orders = [int(c) for c in cyclic_orders]
    if any(c < 1 for c in orders):
        raise InvalidInput("cyclic orders must be positive")
    r = len(orders)
    rows = [[c if i == j else 0 for j in range(r)] for i, c in enumerate(orders)]
    for g in subgroup_generators:
        g = list(g)
        if len(g) != r:
            raise InvalidInput("generator length does not match the number of factors")
        rows.append([x % c for x, c in zip(g, orders)])
    if r == 0:
        return AbelianStructure(())
    basis = hnf_columns(rows, r)
    _, S, _ = smith_normal_form([list(b) for b in basis])
    return AbelianStructure(tuple(S[i][i] for i in range(r) if S[i][i] != 1))


def _bsgs(g, h, order, mod):
    """Least k >= 0 with g^k = h (mod mod), g of the given order."""
    h %= mod
    m = math.isqrt(order) + 1
    baby = {}
    x = 1
    for j in range(m):
        baby.setdefault(x, j)
        x = x * g % mod
    step = pow(g, -m, mod)
    y = h
    for i in range(m + 1):
        j = baby.get(y)
        if j is not None:
            return (i * m + j) % order
        y = y * step % mod
    raise ArithmeticError(f"{h} is not a power of {g} mod {mod}")


@lru_cache(maxsize=4096)
def _primitive_root(p):
    if p == 2:
        return 1
    qs = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ArithmeticError(f"no primitive root mod {p}")


class UnitGroup:
    """(Z/m)^x as a product of cyclic groups, with discrete logarithms."""

    def __init__(self, m):
        m = int(m)
        if m < 1:
            raise InvalidInput("modulus must be positive")
        self.modulus = m
        self.order = totient(m)
        # (prime power q, local generator, local order, kind)
        self._local = []
        for p, e in sorted(factorize(m).items()) if m > 1 else []:
            q = p**e
            if p == 2:
                if e >= 2:
                    self._local.append((q, q - 1, 2, "sign"))
                if e >= 3:
                    self._local.append((q, 5, 2 ** (e - 2), "five"))
            else:
                g = _primitive_root(p)
                if e > 1 and pow(g, p - 1, p * p) == 1:
                    g += p
                self._local.append((q, g, q // p * (p - 1), "cyclic"))
        self.orders = tuple(o for _, _, o, _ in self._local)
        self.generators = tuple(self._lift(q, g) for q, g, _, _ in self._local)

    def _lift(self, q, g):
        # element = g mod q and 1 mod m/q
        rest = self.modulus // q
        if rest == 1:
            return g % q
        t = (g - 1) * pow(rest, -1, q) % q
        return (1 + rest * t) % self.modulus

    def dlog(self, u):
        """Exponent vector of the unit u in terms of ``generators``."""
        u = int(u) % self.modulus
        if math.gcd(u, self.modulus) != 1:
            raise InvalidInput(f"{u} is not a unit mod {self.modulus}")
        out = []
        for q, g, order, kind in self._local:
            x = u % q
            if kind == "sign":
                out.append(0 if x % 4 == 1 else 1)
            elif kind == "five":
                if x % 4 != 1:
                    x = (-x) % q
                out.append(_bsgs(5, x, order, q))
            else:
                out.append(_bsgs(g, x, order, q))
        return out

    def element(self, vec):
        out = 1
        for g, k in zip(self.generators, vec):
            out = out * pow(g, k, self.modulus) % self.modulus
        return out

    def units(self):
        m = self.modulus
        return [u for u in range(m) if math.gcd(u, m) == 1] if m > 1 else [0]


def _product_structure(groups, elements) -> AbelianStructure:
    """Quotient of prod (units of groups) by the subgroup generated by ``elements``."""
    orders = [o for G in groups for o in G.orders]
    gens = []
    for tup in elements:
        vec = []
        for G, u in zip(groups, tup):
            vec.extend(G.dlog(u))
        gens.append(vec)
    return quotient_structure(orders, gens)


def cl_structure_n2(cfg) -> AbelianStructure:
    """(Z/(b-a))^x / {+-1}."""
    cfg = _cfg(cfg)
    if cfg.n != 2:
        raise InvalidInput("quadratic structure needs n = 2")
    m = cfg.span
    if m <= 2:
        return AbelianStructure(())
    return _product_structure([UnitGroup(m)], [(-1,)])


@dataclass(frozen=True)
class CubicKernelSpec:
    """The data G, H, K describing Cl(R) for n = 3 and c - a >= 4."""

    ab: int
    bc: int
    ac: int

    @classmethod
    def of(cls, cfg):
        cfg = _cfg(cfg)
        if cfg.n != 3:
            raise InvalidInput("cubic structure needs n = 3")
        a, b, c = cfg.roots
        return cls(b - a, c - b, c - a)

    @property
    def modulus_u(self):
        return self.ab * self.ac

    @property
    def modulus_v(self):
        return self.bc * self.ac

    @property
    def H(self):
        mu, mv = self.modulus_u, self.modulus_v
        return [(1, 1), (1, mv - 1), (mu - 1, 1), (mu - 1, mv - 1)]

    def in_G(self, u, v):
        return math.gcd(u, self.modulus_u) == 1 and math.gcd(v, self.modulus_v) == 1

    def in_K(self, u, v) -> bool:
        """The three divisibility conditions (representatives are immaterial)."""
        if (u - 1) % self.ab or (v - 1) % self.bc:
            return False
        return (u * ((v - 1) // self.bc) - (u - 1) // self.ab) % self.ac == 0

    def in_N(self, u, v) -> bool:
        mu, mv = self.modulus_u, self.modulus_v
        return any(self.in_K(u * s % mu, v * t % mv) for s, t in self.H)

    def mul(self, x, y):
        return (x[0] * y[0] % self.modulus_u, x[1] * y[1] % self.modulus_v)

    def K_elements(self):
        """All of K: u = 1 mod (b-a) a unit, v then forced by the third condition."""
        mu, mv = self.modulus_u, self.modulus_v
        out = []
        for t in range(self.ac):
            u = (1 + self.ab * t) % mu
            if math.gcd(u, mu) != 1:
                continue
            s = (u - 1) // self.ab * pow(u, -1, self.ac) % self.ac if self.ac > 1 else 0
            v = (1 + self.bc * s) % mv
            if math.gcd(v, mv) != 1:
                raise ArithmeticError("kernel element with non-unit v")
            out.append((u, v))
        return out

    def G_order(self):
        return totient(self.modulus_u) * totient(self.modulus_v)


def _structure_from_power_counts(order, count_torsion) -> AbelianStructure:
    """Invariant factors of a finite abelian group from torsion counts.

    ``count_torsion(e)`` must return #{g : g^e = 1}.
    """
    factors = []  # per prime: list of exponents of cyclic p-parts
    for p, e in factorize(order).items() if order > 1 else []:
        sizes = [0]
        k = 0
        while sizes[-1] < e:
            k += 1
            c = count_torsion(p**k)
            lg = round(math.log(c, p))
            if p**lg != c:
                raise ArithmeticError("torsion count is not a prime power")
            sizes.append(lg)
        # number of cyclic factors of order >= p^k is sizes[k] - sizes[k-1]
        ge = [sizes[i] - sizes[i - 1] for i in range(1, len(sizes))]
        exps = []
        for i, cnt in enumerate(ge):
            nxt = ge[i + 1] if i + 1 < len(ge) else 0
            exps += [i + 1] * (cnt - nxt)
        factors.append((p, exps))
    width = max((len(ex) for _, ex in factors), default=0)
    inv = [1] * width
    for p, exps in factors:
        exps = sorted(exps, reverse=True)
        for i, x in enumerate(exps):
            inv[width - 1 - i] *= p**x
    return AbelianStructure(tuple(d for d in inv if d > 1))


def _cubic_by_enumeration(spec: CubicKernelSpec) -> AbelianStructure:
    mu, mv = spec.modulus_u, spec.modulus_v
    Us = UnitGroup(mu).units()
    Vs = UnitGroup(mv).units()
    N = set()
    for k in spec.K_elements():
        for h in spec.H:
            N.add(spec.mul(k, h))
    G_order = len(Us) * len(Vs)
    if G_order % len(N):
        raise ArithmeticError("|N| does not divide |G|")
    Q = G_order // len(N)

    def count(e):
        hits = 0
        pu = [pow(u, e, mu) for u in Us]
        pv = [pow(v, e, mv) for v in Vs]
        for x in pu:
            for y in pv:
                if (x, y) in N:
                    hits += 1
        return hits // len(N)

    return _structure_from_power_counts(Q, count)


def cl_structure_n3(cfg, method="auto") -> AbelianStructure:
    """Cl(R) = G / HK for n = 3.

    ``method`` is ``enumerate`` (brute force over G, used as an oracle),
    ``snf`` (discrete logs and Smith form), or ``auto``.
    """
    cfg = _cfg(cfg)
    spec = CubicKernelSpec.of(cfg)
    if cfg.span <= 3:
        return AbelianStructure(())
    if method == "auto":
        method = "enumerate" if spec.G_order() <= ENUMERATION_LIMIT else "snf"
    if method == "enumerate":
        return _cubic_by_enumeration(spec)
    if method != "snf":
        raise InvalidInput(f"unknown method {method!r}")
    groups = [UnitGroup(spec.modulus_u), UnitGroup(spec.modulus_v)]
    elements = [(spec.modulus_u - 1, 1), (1, spec.modulus_v - 1)] + spec.K_elements()
    return _product_structure(groups, elements)


def cl_structure_n3_coprime(cfg) -> AbelianStructure:
    """G'/H' with G' = (Z/(b-a))^x (Z/(c-b))^x (Z/(c-a))^x, valid when Delta_1 = 1."""
    cfg = _cfg(cfg)
    if cfg.n != 3:
        raise InvalidInput("cubic structure needs n = 3")
    if cfg.span < 4:
        raise InvalidInput("the coprime description needs c - a >= 4")
    if cfg.profile[1] != 1:
        raise InvalidInput("the coprime description needs Delta_1 = 1")
    a, b, c = cfg.roots
    groups = [UnitGroup(b - a), UnitGroup(c - b), UnitGroup(c - a)]
    return _product_structure(groups, [(1, -1, -1), (-1, 1, -1)])


def cl_structure(cfg) -> AbelianStructure:
    cfg = _cfg(cfg)
    if cfg.n == 2:
        return cl_structure_n2(cfg)
    if cfg.n == 3:
        return cl_structure_n3(cfg)
    raise InvalidInput("no structure theorem for n >= 4")


def quadratic_representatives(cfg):
    """u in {1, ..., floor((b-a)/2)} and b - a, indexing the classes (x - b, u)."""
    cfg = _cfg(cfg)
    if cfg.n != 2:
        raise InvalidInput("the quadratic monoid needs n = 2")
    m = cfg.span
    return sorted(set(range(1, m // 2 + 1)) | {m})


def fold_quadratic(m, w):
    """Representative of (x - b, w) under w ~ -w ~ w +- m (m | w maps to m)."""
    if w % m == 0:
        return m
    r = w % m
    return min(r, m - r)


def quadratic_monoid_table(cfg):
    """(representatives, table) with table[i][j] the class of (x-b,u_i)(x-b,u_j)."""
    cfg = _cfg(cfg)
    reps = quadratic_representatives(cfg)
    m = cfg.span
    a, b = cfg.roots
    table = [[fold_quadratic(m, u * v // math.gcd(math.gcd(u, v), a - b)) for v in reps] for u in reps]
    return reps, table
