"""Exact checks of the row-energy inequality, energy sums and bound tables.

Inequalities are decided with integers and :class:`fractions.Fraction` only;
floating point appears solely in reported totals and the Behrend-type bound.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import _backend
from .core import DomainError, NaturalSet, PointSet
from .search import SearchConfig, max_ap_free

#: Largest point set for which ``energy_partial`` also returns the exact sum.
EXACT_ENERGY_LIMIT = 10**5


def _fraction_sum(terms: Sequence[Fraction]) -> Fraction:
    # pairwise summation keeps intermediate denominators balanced
    terms = list(terms)
    if not terms:
        return Fraction(0)
    while len(terms) > 1:
        nxt = [terms[i] + terms[i + 1] for i in range(0, len(terms) - 1, 2)]
        if len(terms) % 2:
            nxt.append(terms[-1])
        terms = nxt
    return terms[0]


def row_energy(a: int) -> Fraction:
    """Exact value of sum_{m=1..a} 1 / ((a+m)^2 + m^2)."""
    if a < 1:
        raise DomainError(f"a must be >= 1, got {a}")
    return _fraction_sum([Fraction(1, (a + m) ** 2 + m * m) for m in range(1, a + 1)])


def row_bound_sign(a: int) -> int:
    """Sign of row_energy(a) - 1/(5a), decided exactly.

    A positive sign is first sought through an integer lower bound
    sum floor(2^P / q_m) / 2^P, which is itself an exact rational below the
    true sum; only undecided cases fall back to full rational arithmetic.
    """
    if a < 1:
        raise DomainError(f"a must be >= 1, got {a}")
    if _backend.kernels.row_bound_certify(a):
        return 1
    bits = 64 + 2 * a.bit_length()
    scale = 1 << bits
    lower = sum(scale // ((a + m) ** 2 + m * m) for m in range(1, a + 1))
    if lower * 5 * a > scale:
        return 1
    diff = row_energy(a) - Fraction(1, 5 * a)
    return (diff > 0) - (diff < 0)


def check_row_bound(a: int) -> bool:
    """True iff row_energy(a) >= 1/(5a)."""
    return row_bound_sign(a) >= 0


@dataclass(frozen=True)
class RowBoundSummary:
    max_a: int
    all_hold: bool
    equality_at: tuple[int, ...]
    failures: tuple[int, ...]


def row_bound_sweep(max_a: int) -> RowBoundSummary:
    signs = [(a, row_bound_sign(a)) for a in range(1, max_a + 1)]
    failures = tuple(a for a, sg in signs if sg < 0)
    return RowBoundSummary(
        max_a, not failures, tuple(a for a, sg in signs if sg == 0), failures
    )


@dataclass(frozen=True)
class EnergyReport:
    total: float
    exact: Optional[Fraction]
    points: int


def energy_partial(B: PointSet) -> EnergyReport:
    """Sum of 1/(x^2+y^2) over B: compensated double sum, plus the exact value for |B| <= 1e5."""
    denoms = [x * x + y * y for x, y in B.points]
    exact = None
    if len(denoms) <= EXACT_ENERGY_LIMIT:
        counts: dict[int, int] = {}
        for q in denoms:
            counts[q] = counts.get(q, 0) + 1
        exact = _fraction_sum([Fraction(c, q) for q, c in sorted(counts.items())])
    return EnergyReport(math.fsum(1.0 / q for q in denoms), exact, len(denoms))


def harmonic_partial(A: NaturalSet) -> Fraction:
    return _fraction_sum([Fraction(1, a) for a in A])


@dataclass(frozen=True)
class BoundParams:
    k: int
    N: float
    c: float

    def __post_init__(self):
        if self.k < 3:
            raise DomainError(f"k must be >= 3, got {self.k}")
        if not self.N >= 2:
            raise DomainError(f"N must be >= 2, got {self.N}")
        if not self.c > 0:
            raise DomainError(f"c must be positive, got {self.c}")


def behrend_exponent(log_n: float, k: int, c: float) -> float:
    """-c * (log N)^(1/(k-1))."""
    return -c * log_n ** (1.0 / (k - 1))


def behrend_bound(p: BoundParams) -> float:
    """N * exp(-c (ln N)^(1/(k-1)))."""
    return p.N * math.exp(behrend_exponent(math.log(p.N), p.k, p.c))


@dataclass(frozen=True)
class TableRow:
    N: int
    r: int
    lifted: int
    behrend_form: float
    exact: bool


def grid_bound_table(
    s: int,
    N_list: Iterable[int],
    c: float = 1.0,
    cfg: Optional[SearchConfig] = None,
) -> list[TableRow]:
    """Rows (N, r(2s-1, N), r(2s-1, N)*N, N^2 exp(-c (ln N)^(1/(2s-2))))."""
    if s < 2:
        raise DomainError(f"s must be >= 2, got {s}")
    if not c > 0:
        raise DomainError(f"c must be positive, got {c}")
    rows = []
    for N in N_list:
        res = max_ap_free(2 * s - 1, N, cfg)
        form = float(N * N) * math.exp(behrend_exponent(math.log(N), 2 * s - 1, c))
        rows.append(TableRow(N, res.value, res.value * N, form, res.exact))
    return rows


def fmt_float(x: float) -> str:
    return f"{x:.15g}"


def fmt_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def table_to_csv(rows: Sequence[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "r", "lifted_bound", "behrend_form", "exact"])
    for row in rows:
        w.writerow([row.N, row.r, row.lifted, fmt_float(row.behrend_form), str(row.exact).lower()])
    return buf.getvalue()
