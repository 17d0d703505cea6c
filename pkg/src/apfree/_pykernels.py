"""Pure-Python versions of the hot kernels.

Every function here has an identically named, identically behaving twin in
the compiled ``_kernels`` extension.  Inputs are plain Python sequences; the
public modules do all validation before calling in.
"""

import numpy as np

#: Fixed dyadic precision used by :func:`row_bound_certify`.
ROW_BOUND_BITS = 60


class _BudgetExceeded(Exception):
    pass


def find_ap(elems, k):
    """Least (start, diff) of a k-AP inside sorted ``elems``, or None."""
    members = set(elems)
    last = elems[-1]
    n = len(elems)
    for i in range(n):
        a = elems[i]
        if last - a < k - 1:
            break
        reach = (last - a) // (k - 1)
        for j in range(i + 1, n):
            b = elems[j]
            d = b - a
            if d > reach:
                break
            t = b
            for _ in range(k - 2):
                t += d
                if t not in members:
                    break
            else:
                return a, d
    return None


def find_grid(points, s):
    """Least (side, x0, y0) s-by-s grid in ``points`` (sorted by (y, x)).

    Returns ``(x0, y0, side)`` or None.  Each grid is enumerated from its
    bottom-left corner and the next point to its right.
    """
    members = set(points)
    rows = {}
    for x, y in points:
        rows.setdefault(y, []).append(x)
    max_y = points[-1][1]
    span = s - 1
    best = None
    for y0, xs in rows.items():
        if max_y - y0 < span:
            break
        row_max = xs[-1]
        for i, x0 in enumerate(xs):
            for x1 in xs[i + 1:]:
                side = x1 - x0
                if best is not None and side > best[0]:
                    break
                if span * side > row_max - x0 or span * side > max_y - y0:
                    break
                if _grid_complete(members, x0, y0, side, s):
                    cand = (side, x0, y0)
                    if best is None or cand < best:
                        best = cand
    if best is None:
        return None
    return best[1], best[2], best[0]


def _grid_complete(members, x0, y0, side, s):
    for j in range(s):
        y = y0 + j * side
        for i in range(s):
            if (x0 + i * side, y) not in members:
                return False
    return True


def greedy_ap_free(k, n):
    chosen = np.zeros(n + 1, dtype=bool)
    picked = []
    for x in range(1, n + 1):
        if picked:
            diffs = x - np.asarray(picked, dtype=np.int64)
            ok = x - (k - 1) * diffs >= 1
            for j in range(2, k):
                if not ok.any():
                    break
                idx = x - j * diffs
                ok &= chosen[np.where(ok, idx, 0)]
            if ok.any():
                continue
        chosen[x] = True
        picked.append(x)
    return picked


def _ap_predecessors(k, n):
    preds = [[] for _ in range(n + 1)]
    for x in range(1, n + 1):
        d = 1
        while x - (k - 1) * d >= 1:
            m = 0
            for j in range(1, k):
                m |= 1 << (x - j * d)
            preds[x].append(m)
            d += 1
    return preds


def ap_dfs(k, n, bounds, prefix, floor, budget):
    """Branch and bound for the largest k-AP-free subset of {1..n}.

    ``prefix`` fixes the include/exclude decision for elements 1..len(prefix).
    ``bounds[m]`` must upper-bound the size of a k-AP-free subset of any
    interval of length m.  Nodes whose bound is below ``floor`` or not above
    the incumbent are pruned; candidates are tried include-first, so the
    first set reaching the best size is the lexicographically smallest.

    Returns ``(best, elements, nodes, complete)``; ``best`` is -1 for an
    infeasible prefix.  A negative ``budget`` means unlimited.
    """
    preds = _ap_predecessors(k, n)
    mask = 0
    count = 0
    for x, take in enumerate(prefix, start=1):
        if take:
            if any(mask & m == m for m in preds[x]):
                return -1, (), 0, True
            mask |= 1 << x
            count += 1

    best = -1
    best_mask = 0
    nodes = 0

    def visit(x, mask, count):
        nonlocal best, best_mask, nodes
        nodes += 1
        if 0 <= budget < nodes:
            raise _BudgetExceeded
        if count > best:
            best = count
            best_mask = mask
        if x > n:
            return
        bound = count + bounds[n - x + 1]
        if bound <= best or bound < floor:
            return
        if not any(mask & m == m for m in preds[x]):
            visit(x + 1, mask | (1 << x), count + 1)
        visit(x + 1, mask, count)

    complete = True
    try:
        visit(len(prefix) + 1, mask, count)
    except _BudgetExceeded:
        complete = False
        nodes = budget
    elems = tuple(x for x in range(1, n + 1) if best_mask >> x & 1)
    return best, elems, nodes, complete


def _grid_predecessors(s, n):
    preds = [[] for _ in range(n * n)]
    span = s - 1
    for y in range(1, n + 1):
        for x in range(1, n + 1):
            idx = (y - 1) * n + (x - 1)
            side = 1
            while x - span * side >= 1 and y - span * side >= 1:
                x0, y0 = x - span * side, y - span * side
                m = 0
                for j in range(s):
                    for i in range(s):
                        q = (y0 + j * side - 1) * n + (x0 + i * side - 1)
                        if q != idx:
                            m |= 1 << q
                preds[idx].append(m)
                side += 1
    return preds


def grid_dfs(s, n, budget):
    """Branch and bound for the largest s-grid-free subset of {1..n}^2.

    Points are decided in (y, x) order, include-first.  Returns
    ``(best, points, nodes, complete)`` with points as (x, y) pairs.
    """
    preds = _grid_predecessors(s, n)
    total = n * n
    best = -1
    best_mask = 0
    nodes = 0

    def visit(idx, mask, count):
        nonlocal best, best_mask, nodes
        nodes += 1
        if 0 <= budget < nodes:
            raise _BudgetExceeded
        if count > best:
            best = count
            best_mask = mask
        if idx == total:
            return
        if count + (total - idx) <= best:
            return
        if not any(mask & m == m for m in preds[idx]):
            visit(idx + 1, mask | (1 << idx), count + 1)
        visit(idx + 1, mask, count)

    complete = True
    try:
        visit(0, 0, 0)
    except _BudgetExceeded:
        complete = False
        nodes = budget
    pts = tuple((q % n + 1, q // n + 1) for q in range(total) if best_mask >> q & 1)
    return best, pts, nodes, complete


def row_bound_certify(a):
    """1 if sum_{m=1..a} 1/((a+m)^2+m^2) > 1/(5a) is proven at fixed precision, else 0.

    Uses exact integer floors of 2^60/q, so a 1 is a rigorous certificate; a 0
    only means the fixed precision was not enough to decide.
    """
    if a < 1 or a > 10**9:
        return 0
    scale = 1 << ROW_BOUND_BITS
    lower = 0
    for m in range(1, a + 1):
        lower += scale // ((a + m) * (a + m) + m * m)
    return 1 if lower * 5 * a > scale else 0
