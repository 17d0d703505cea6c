"""Brute-force references used only by the tests."""

from itertools import combinations


def has_k_ap_brute(values, k):
    """Every k-subset, checked for equal consecutive gaps."""
    for combo in combinations(sorted(values), k):
        d = combo[1] - combo[0]
        if all(combo[i + 1] - combo[i] == d for i in range(k - 1)):
            return True
    return False


def all_aps_brute(values, k):
    out = []
    for combo in combinations(sorted(values), k):
        d = combo[1] - combo[0]
        if all(combo[i + 1] - combo[i] == d for i in range(k - 1)):
            out.append((combo[0], d))
    return out


def all_grids_brute(points, s):
    """Every (side, x0, y0) inside the bounding box whose s*s points all lie in ``points``."""
    pts = set(points)
    if not pts:
        return []
    max_x = max(x for x, _ in pts)
    max_y = max(y for _, y in pts)
    out = []
    for side in range(1, max(max_x, max_y) + 1):
        for x0 in range(1, max_x + 1):
            for y0 in range(1, max_y + 1):
                if all((x0 + i * side, y0 + j * side) in pts for i in range(s) for j in range(s)):
                    out.append((side, x0, y0))
    return out


def greedy_brute(k, n):
    chosen = []
    for x in range(1, n + 1):
        if not has_k_ap_brute_with(chosen, x, k):
            chosen.append(x)
    return chosen


def has_k_ap_brute_with(chosen, x, k):
    return any(x in combo for combo in _ap_combos(chosen + [x], k))


def _ap_combos(values, k):
    for combo in combinations(sorted(values), k):
        d = combo[1] - combo[0]
        if all(combo[i + 1] - combo[i] == d for i in range(k - 1)):
            yield combo
