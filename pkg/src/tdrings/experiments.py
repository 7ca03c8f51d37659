"""Root families, sweeps over them, and the n = 4 counting campaign."""
from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from importlib import resources
from typing import Optional

from . import kernels
from .arithmetic import RootConfig, primes_up_to, rho, totient
from .errors import BudgetExceeded, InvalidInput
from .formulas import cl_order_formula
from .matrices import enumeration_budget, icm_formula_n4, icm_order

CSV_FIELDS = [
    "roots", "delta", "icm", "cl",
    "ratio_icm_num", "ratio_icm_den", "ratio_cl_num", "ratio_cl_den",
    "ratio_icm_decimal", "ratio_cl_decimal", "icm_method", "icm_proved",
    "delta_l_equals_rho", "note",
]


def load_bands():
    """Tolerance bands for the asymptotic checks, as exact fractions."""
    raw = json.loads(resources.files("tdrings").joinpath("data/bands.json").read_text())
    out = {}
    for name, band in raw.items():
        out[name] = {k: Fraction(v) if isinstance(v, str) else v for k, v in band.items()}
    return out


def limsup_constant(n: int) -> Fraction:
    """prod over primes p <= n-2 of (1 - 1/p)^(n-1-p)."""
    if n < 2:
        raise InvalidInput("n must be at least 2")
    out = Fraction(1)
    for p in primes_up_to(n - 2):
        out *= (1 - Fraction(1, p)) ** (n - 1 - p)
    return out


def primorial(k: int) -> int:
    if k < 0:
        raise InvalidInput("k must be nonnegative")
    out = 1
    bound = 16
    while len(primes_up_to(bound)) < k:
        bound *= 2
    for p in primes_up_to(bound)[:k]:
        out *= p
    return out


@dataclass(frozen=True)
class Family:
    """A parametrized list of root configurations.

    kind ``ap``: a_i = start + (i-1) m for each step m in ``params``.
    kind ``tail``: roots 1, 2, ..., n-1, N for each N in ``params``.
    kind ``explicit``: ``params`` is a list of root tuples.
    """

    kind: str
    n: int = 0
    params: tuple = ()
    start: int = 0

    def __post_init__(self):
        if self.kind not in ("ap", "tail", "explicit"):
            raise InvalidInput(f"unknown family kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(self.params))
        if self.kind != "explicit" and self.n < 2:
            raise InvalidInput("family needs n >= 2")

    @classmethod
    def arithmetic_progression(cls, n, steps, start=0):
        return cls("ap", n, tuple(steps), start)

    @classmethod
    def tail(cls, n, tops):
        return cls("tail", n, tuple(tops))

    @classmethod
    def explicit(cls, configs):
        return cls("explicit", 0, tuple(tuple(c) for c in configs))

    def configs(self):
        for p in self.params:
            if self.kind == "ap":
                yield p, RootConfig(tuple(self.start + i * p for i in range(self.n)))
            elif self.kind == "tail":
                yield p, RootConfig(tuple(range(1, self.n)) + (p,))
            else:
                yield p, RootConfig(tuple(p))


def _decimal(q: Optional[Fraction]):
    if q is None:
        return None
    with localcontext() as ctx:
        ctx.prec = 12
        return str(Decimal(q.numerator) / Decimal(q.denominator))


@dataclass(frozen=True)
class SweepRow:
    roots: tuple
    delta: int
    cl: int
    ratio_cl: Fraction
    icm: Optional[int] = None
    ratio_icm: Optional[Fraction] = None
    icm_method: Optional[str] = None
    icm_proved: Optional[bool] = None
    delta_l_equals_rho: bool = False
    note: str = ""

    def as_dict(self):
        def num(q):
            return None if q is None else q.numerator

        def den(q):
            return None if q is None else q.denominator

        return {
            "roots": list(self.roots),
            "delta": self.delta,
            "icm": self.icm,
            "cl": self.cl,
            "ratio_icm_num": num(self.ratio_icm),
            "ratio_icm_den": den(self.ratio_icm),
            "ratio_cl_num": num(self.ratio_cl),
            "ratio_cl_den": den(self.ratio_cl),
            "ratio_icm_decimal": _decimal(self.ratio_icm),
            "ratio_cl_decimal": _decimal(self.ratio_cl),
            "icm_method": self.icm_method,
            "icm_proved": self.icm_proved,
            "delta_l_equals_rho": self.delta_l_equals_rho,
            "note": self.note,
        }


def sweep_row(cfg: RootConfig, with_icm=True, method="auto", budget=None) -> SweepRow:
    n = cfg.n
    delta = cfg.delta
    cl = cl_order_formula(cfg)
    ratio_cl = Fraction(cl * 2 ** (n - 1), totient(delta, cfg.delta_primes))
    prof = cfg.profile
    rho_ok = all(prof[l] == rho(l) for l in range(1, n - 1))
    icm = ratio_icm = icm_method = icm_proved = None
    note = ""
    if with_icm:
        try:
            res = icm_order(cfg, method=method, budget=budget)
            icm, icm_method, icm_proved = res.order, res.method, res.proved
            ratio_icm = Fraction(icm * 2 ** (n - 1), delta)
        except BudgetExceeded as exc:
            note = f"icm skipped: {exc}"
        except (InvalidInput, ArithmeticError) as exc:
            note = f"icm unavailable: {exc}"
    return SweepRow(cfg.roots, delta, cl, ratio_cl, icm, ratio_icm, icm_method, icm_proved, rho_ok, note)


def run_sweep(family: Family, budget=None, with_icm=True, method="auto"):
    """Rows in family-parameter order; budget overruns are noted per row."""
    return [sweep_row(cfg, with_icm, method, budget) for _, cfg in family.configs()]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, delimiter=";", lineterminator="\n")
    w.writeheader()
    for r in rows:
        d = r.as_dict()
        d["roots"] = ",".join(map(str, d["roots"]))
        w.writerow({k: "" if v is None else v for k, v in d.items()})
    return buf.getvalue()


def rows_to_jsonl(rows) -> str:
    return "".join(json.dumps(r.as_dict(), sort_keys=True) + "\n" for r in rows)


@dataclass
class CampaignRow:
    roots: tuple
    delta: int
    bruteforce: Optional[int]
    burnside: Optional[int]
    formula_numerator: int
    agree: Optional[bool]

    @property
    def formula(self):
        return Fraction(self.formula_numerator, 8)


@dataclass
class CampaignReport:
    max_span: int
    rows: list = field(default_factory=list)

    @property
    def agreements(self):
        return [r for r in self.rows if r.agree]

    @property
    def disagreements(self):
        return [r for r in self.rows if r.agree is False]

    @property
    def skipped(self):
        return [r for r in self.rows if r.agree is None]

    @property
    def ok(self):
        return not self.disagreements

    def as_dict(self):
        return {
            "max_span": self.max_span,
            "configs": len(self.rows),
            "agreements": len(self.agreements),
            "disagreements": [
                {"roots": list(r.roots), "bruteforce": r.bruteforce,
                 "formula": [r.formula.numerator, r.formula.denominator]}
                for r in self.disagreements
            ],
            "skipped": [list(r.roots) for r in self.skipped],
        }


def conjecture_campaign_n4(max_span: int, budget=None) -> CampaignReport:
    """Compare the conjectural n = 4 count with enumeration for 0 < b < c < d <= max_span."""
    limit = enumeration_budget(budget)
    report = CampaignReport(max_span)
    for b, c, d in itertools.combinations(range(1, max_span + 1), 3):
        cfg = RootConfig((0, b, c, d))
        q, r = icm_formula_n4(cfg)
        num = 8 * q + r
        if cfg.delta > limit:
            report.rows.append(CampaignRow(cfg.roots, cfg.delta, None, None, num, None))
            continue
        orbits, fix, _ = kernels.scan_omega0(cfg.roots)
        burn = Fraction(2 * sum(fix), 16)
        burn = int(burn) if burn.denominator == 1 else None
        agree = r == 0 and orbits == q and burn == orbits
        report.rows.append(CampaignRow(cfg.roots, cfg.delta, orbits, burn, num, agree))
    return report
