"""Builders for AP-free sets, the diagonal-band lifting and witness conversions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _backend
from .core import (
    MAX_INT,
    ApWitness,
    DomainError,
    GridWitness,
    NaturalSet,
    PointSet,
)


def greedy_ap_free(k: int, N: int) -> NaturalSet:
    """Scan 1..N and keep x whenever it closes no k-term AP with kept elements."""
    if k < 3:
        raise DomainError(f"k must be >= 3, got {k}")
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    return NaturalSet(tuple(_backend.kernels.greedy_ap_free(k, N)))


@dataclass(frozen=True)
class BehrendParams:
    """Digits 0..base_digit_bound-1 in ``dimension`` coordinates, one squared-norm shell."""

    base_digit_bound: int
    dimension: int
    shell_norm: int

    def __post_init__(self):
        if self.base_digit_bound < 2:
            raise DomainError("base_digit_bound must be >= 2")
        if self.dimension < 1:
            raise DomainError("dimension must be >= 1")
        if not 0 <= self.shell_norm <= self.dimension * (self.base_digit_bound - 1) ** 2:
            raise DomainError(f"shell_norm {self.shell_norm} out of range")

    @property
    def radix(self) -> int:
        return 2 * self.base_digit_bound - 1

    def pigeonhole(self) -> Fraction:
        """Guaranteed size of the fullest shell, d^n / (n (d-1)^2 + 1)."""
        d, n = self.base_digit_bound, self.dimension
        return Fraction(d**n, n * (d - 1) ** 2 + 1)

    def fits(self, N: int) -> bool:
        return self.radix**self.dimension <= N


def _shell_counts(d: int, n: int) -> list[int]:
    # counts[r] = number of vectors in {0..d-1}^n with squared norm r
    counts = [1]
    for _ in range(n):
        nxt = [0] * (len(counts) + (d - 1) ** 2)
        for r, c in enumerate(counts):
            if c:
                for x in range(d):
                    nxt[r + x * x] += c
        counts = nxt
    return counts


def behrend_params(N: int) -> Optional[BehrendParams]:
    """Pick (d, n) maximising the pigeonhole guarantee subject to (2d-1)^n <= N.

    Ties go to the larger dimension; the shell is the most populous one, the
    smallest norm winning ties.  Returns None when no d >= 2 fits (N < 3).
    """
    best = None
    n = 1
    while 3**n <= N:
        d = 2
        while (2 * d - 1) ** n <= N:
            key = (Fraction(d**n, n * (d - 1) ** 2 + 1), n)
            if best is None or key > best[0]:
                best = (key, d, n)
            d += 1
        n += 1
    if best is None:
        return None
    _, d, n = best
    counts = _shell_counts(d, n)
    shell = max(range(len(counts)), key=lambda r: (counts[r], -r))
    return BehrendParams(d, n, shell)


def shell_size(params: BehrendParams) -> int:
    return _shell_counts(params.base_digit_bound, params.dimension)[params.shell_norm]


def _shell_vectors(d: int, n: int, norm: int):
    top = (d - 1) ** 2
    out = []
    vec = [0] * n

    def fill(i, remaining):
        if i == n:
            if remaining == 0:
                out.append(tuple(vec))
            return
        if remaining > (n - i) * top:
            return
        for x in range(d):
            if x * x > remaining:
                break
            vec[i] = x
            fill(i + 1, remaining - x * x)

    fill(0, norm)
    return out


def behrend_set(N: int, params: Optional[BehrendParams] = None) -> NaturalSet:
    """3-AP-free subset of {1..N} from digit vectors on one sphere shell.

    Each vector (x_1..x_n) maps to 1 + sum x_i (2d-1)^(i-1); digits below d
    never carry when two encodings are added, so a 3-AP in the image would be
    a 3-AP of vectors on a sphere, which cannot happen.
    """
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if params is None:
        params = behrend_params(N)
        if params is None:
            return NaturalSet((1,))
    elif not params.fits(N):
        raise DomainError(f"(2d-1)^n = {params.radix ** params.dimension} exceeds N={N}")
    d, n, radix = params.base_digit_bound, params.dimension, params.radix
    weights = [radix**i for i in range(n)]
    values = sorted(
        1 + sum(x * w for x, w in zip(vec, weights))
        for vec in _shell_vectors(d, n, params.shell_norm)
    )
    return NaturalSet(tuple(values))


def theta(A: NaturalSet, rows: int) -> PointSet:
    """Lift A to the band {(a + m, m) : a in A, 1 <= m <= rows}."""
    if rows < 1:
        raise DomainError(f"rows must be >= 1, got {rows}")
    if len(A) and A.elements[-1] + rows > MAX_INT:
        raise OverflowError(f"a + rows exceeds the 64-bit range")
    return PointSet(frozenset((a + m, m) for m in range(1, rows + 1) for a in A.elements))


def grid_to_ap(w: GridWitness) -> ApWitness:
    """The (2s-1)-term AP of diagonals x - y met by an s-by-s grid."""
    start = (w.x0 - w.y0) - (w.size - 1) * w.side
    if start < 1:
        raise DomainError(
            f"grid at ({w.x0}, {w.y0}) side {w.side} lifts to an AP starting at {start} < 1"
        )
    return ApWitness(start, w.side, 2 * w.size - 1)


def ap_to_grid(w: ApWitness, rows: int) -> Optional[GridWitness]:
    """Lowest s-by-s grid in theta(A, rows) induced by a (2s-1)-term AP of A.

    Returns None when the band is too shallow, i.e. 1 + (s-1)*diff > rows.
    """
    if w.length % 2 == 0:
        raise DomainError(f"AP length must be odd, got {w.length}")
    s = (w.length + 1) // 2
    if 1 + (s - 1) * w.diff > rows:
        return None
    center = w.start + (s - 1) * w.diff
    return GridWitness(center + 1, 1, w.diff, s)
