"""Exact extremal search for r(k, N) and r~(s, N), plus exhaustive oracles.

``max_ap_free`` runs a branch and bound over {1..N} with include-first
ordering, so among all optima it reports the lexicographically smallest.
Upper bounds come from the already computed values r(k, m), m < N: the
undecided elements always form an interval.  The root is split into a fixed
set of prefix subtrees; each subtree is searched independently against the
same static floor r(k, N-1), which makes value, optimum and node count
independent of how many workers run the subtrees.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import _backend
from .construct import theta
from .core import DomainError, NaturalSet, PointSet, find_ap, find_grid

#: Depth of the fixed root split used by ``max_ap_free``.
SPLIT_DEPTH = 5

ORACLE_MAX_N_AP = 24
ORACLE_MAX_N_GRID = 4


@dataclass(frozen=True)
class SearchConfig:
    node_budget: Optional[int] = None
    tie_break: str = "lex-smallest"
    workers: Optional[int] = None

    def __post_init__(self):
        if self.node_budget is not None and self.node_budget < 1:
            raise DomainError("node_budget must be positive")
        if self.tie_break != "lex-smallest":
            raise DomainError(f"unsupported tie_break {self.tie_break!r}")

    def worker_count(self) -> int:
        """Requested workers, capped by APFREE_THREADS (default 1)."""
        cap = os.environ.get("APFREE_THREADS")
        cap = int(cap) if cap else None
        n = self.workers if self.workers is not None else (cap or 1)
        if cap is not None:
            n = min(n, cap)
        return max(1, n)


@dataclass(frozen=True)
class SearchResult:
    value: int
    optimum: Union[NaturalSet, PointSet]
    nodes_explored: int
    elapsed: float
    exact: bool = True
    stats: dict = field(default_factory=dict, compare=False)


def _run_ap_subtree(args):
    kernel_name, k, n, bounds, prefix, floor, budget = args
    if kernel_name != _backend.BACKEND:
        _backend.use(kernel_name)
    return _backend.kernels.ap_dfs(k, n, bounds, prefix, floor, budget)


def _prefixes(k: int, n: int) -> list[tuple[int, ...]]:
    depth = min(SPLIT_DEPTH, n)
    out = []
    # include-first enumeration order == lexicographic order of the subtrees
    for bits in itertools.product((1, 0), repeat=depth):
        chosen = [i + 1 for i, b in enumerate(bits) if b]
        if len(chosen) >= k and find_ap(NaturalSet(tuple(chosen)), k) is not None:
            continue
        out.append(bits)
    return out


class _Runner:
    def __init__(self, workers: int):
        self.workers = workers
        self.pool = ProcessPoolExecutor(workers) if workers > 1 else None

    def map(self, fn, jobs):
        if self.pool is None:
            return [fn(job) for job in jobs]
        return list(self.pool.map(fn, jobs))

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()


def max_ap_free(k: int, N: int, cfg: Optional[SearchConfig] = None) -> SearchResult:
    """r(k, N) with the lexicographically smallest optimal set."""
    if k < 3:
        raise DomainError(f"k must be >= 3, got {k}")
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    cfg = cfg or SearchConfig()
    t0 = time.perf_counter()
    remaining = cfg.node_budget
    runner = _Runner(cfg.worker_count())
    # bounds[m] >= size of any k-AP-free subset of an interval of length m
    bounds = list(range(N + 1))
    best_val, best_set = 0, ()
    total_nodes = 0
    exact = True
    try:
        for m in range(1, N + 1):
            floor = best_val
            prefixes = _prefixes(k, m)
            if remaining is None:
                share = -1
            else:
                share = max(remaining // len(prefixes), 0)
            jobs = [
                (_backend.BACKEND, k, m, bounds[: m + 1], p, floor, share)
                for p in prefixes
            ]
            level_val, level_set, level_exact = -1, (), True
            for val, elems, nodes, complete in runner.map(_run_ap_subtree, jobs):
                total_nodes += nodes
                if remaining is not None:
                    remaining -= nodes
                level_exact &= complete
                if val > level_val:
                    level_val, level_set = val, elems
            if level_val >= best_val:
                best_val, best_set = level_val, level_set
            if level_exact:
                bounds[m] = best_val
            else:
                exact = False
    finally:
        runner.close()
    optimum = NaturalSet(best_set)
    if len(optimum) != best_val or find_ap(optimum, k) is not None:
        raise RuntimeError("search produced an invalid optimum")
    return SearchResult(best_val, optimum, total_nodes, time.perf_counter() - t0, exact)


def max_grid_free(s: int, N: int, cfg: Optional[SearchConfig] = None) -> SearchResult:
    """r~(s, N) with the optimum smallest in (y, x) lexicographic order."""
    if s < 2:
        raise DomainError(f"s must be >= 2, got {s}")
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    cfg = cfg or SearchConfig()
    t0 = time.perf_counter()
    budget = -1 if cfg.node_budget is None else cfg.node_budget
    val, pts, nodes, complete = _backend.kernels.grid_dfs(s, N, budget)
    optimum = PointSet(frozenset(pts))
    if len(optimum) != val or find_grid(optimum, s) is not None:
        raise RuntimeError("search produced an invalid optimum")
    return SearchResult(val, optimum, nodes, time.perf_counter() - t0, complete)


def _ap_masks(k: int, N: int) -> list[int]:
    # bit i stands for element i + 1
    masks = []
    for d in range(1, (N - 1) // (k - 1) + 1):
        for a in range(1, N - (k - 1) * d + 1):
            masks.append(sum(1 << (a - 1 + j * d) for j in range(k)))
    return masks


def _grid_masks(s: int, N: int) -> list[int]:
    # bit (y-1)*N + (x-1) stands for point (x, y)
    masks = []
    for side in range(1, (N - 1) // (s - 1) + 1):
        reach = (s - 1) * side
        for y0 in range(1, N - reach + 1):
            for x0 in range(1, N - reach + 1):
                masks.append(sum(
                    1 << ((y0 + j * side - 1) * N + (x0 + i * side - 1))
                    for i in range(s) for j in range(s)
                ))
    return masks


def _popcount(arr: np.ndarray) -> np.ndarray:
    counts = np.zeros(arr.shape, dtype=np.int64)
    for shift in range(0, 32, 8):
        counts += _BYTE_POP[(arr >> shift) & 0xFF]
    return counts


_BYTE_POP = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def _exhaustive(bits: int, masks: list[int]):
    """All pattern-free subsets of a ``bits``-element ground set: (max size, all maximisers)."""
    chunk = 1 << min(bits, 20)
    best, winners = -1, []
    for lo in range(0, 1 << bits, chunk):
        subsets = np.arange(lo, lo + chunk, dtype=np.uint32)
        free = np.ones(chunk, dtype=bool)
        for m in masks:
            free &= (subsets & np.uint32(m)) != np.uint32(m)
        sizes = _popcount(subsets)
        sizes[~free] = -1
        top = int(sizes.max())
        if top > best:
            best, winners = top, []
        if top == best:
            winners.extend(int(v) for v in subsets[sizes == top])
    return best, winners


def oracle_max_ap_free(k: int, N: int) -> SearchResult:
    """r(k, N) by enumerating every subset of {1..N}; N <= 24."""
    if k < 3:
        raise DomainError(f"k must be >= 3, got {k}")
    if not 1 <= N <= ORACLE_MAX_N_AP:
        raise DomainError(f"oracle needs 1 <= N <= {ORACLE_MAX_N_AP}, got {N}")
    t0 = time.perf_counter()
    best, winners = _exhaustive(N, _ap_masks(k, N))
    sets = [tuple(i + 1 for i in range(N) if w >> i & 1) for w in winners]
    optimum = NaturalSet(min(sets))
    return SearchResult(best, optimum, 1 << N, time.perf_counter() - t0)


def oracle_max_grid_free(s: int, N: int) -> SearchResult:
    """r~(s, N) by enumerating every subset of {1..N}^2; N <= 4."""
    if s < 2:
        raise DomainError(f"s must be >= 2, got {s}")
    if not 1 <= N <= ORACLE_MAX_N_GRID:
        raise DomainError(f"oracle needs 1 <= N <= {ORACLE_MAX_N_GRID}, got {N}")
    t0 = time.perf_counter()
    best, winners = _exhaustive(N * N, _grid_masks(s, N))
    seqs = [
        tuple((q % N + 1, q // N + 1) for q in range(N * N) if w >> q & 1)
        for w in winners
    ]
    # smallest as a sequence of points in (y, x) order
    chosen = min(seqs, key=lambda seq: [(y, x) for x, y in seq])
    return SearchResult(best, PointSet(frozenset(chosen)), 1 << (N * N), time.perf_counter() - t0)


@dataclass(frozen=True)
class CertifiedBound:
    bound: int
    certificate: PointSet
    exact: bool
    optimum: NaturalSet


def certified_lower_bound(s: int, N: int, cfg: Optional[SearchConfig] = None) -> CertifiedBound:
    """r~(s, 2N) >= r(2s-1, N) * N, witnessed by the lifted optimum."""
    if s < 2:
        raise DomainError(f"s must be >= 2, got {s}")
    res = max_ap_free(2 * s - 1, N, cfg)
    cert = theta(res.optimum, N)
    if find_grid(cert, s) is not None:
        raise RuntimeError("lifted optimum contains a grid")
    if len(cert) != res.value * N:
        raise RuntimeError("lifted optimum has the wrong size")
    if any(x > 2 * N or y > 2 * N for x, y in cert.points):
        raise RuntimeError("lifted optimum leaves {1..2N}^2")
    return CertifiedBound(res.value * N, cert, res.exact, res.optimum)
