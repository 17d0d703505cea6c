import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from apfree.construct import (
    BehrendParams,
    ap_to_grid,
    behrend_params,
    behrend_set,
    greedy_ap_free,
    grid_to_ap,
    shell_size,
    theta,
)
from apfree.core import (
    MAX_INT,
    ApWitness,
    DomainError,
    GridWitness,
    NaturalSet,
    find_ap,
    find_grid,
    verify_ap_witness,
    verify_grid_witness,
)
from conftest import SEED
from oracles import greedy_brute, has_k_ap_brute


def ns(*xs):
    return NaturalSet(tuple(xs))


# --- greedy ----------------------------------------------------------------------

@pytest.mark.parametrize("k,n,expected", [(3, 9, (1, 2, 4, 5)), (3, 2, (1, 2)), (4, 5, (1, 2, 3, 5))])
def test_greedy_examples(backend, k, n, expected):
    assert greedy_brute(k, n) == list(expected)
    assert greedy_ap_free(k, n).elements == expected


@pytest.mark.parametrize("k", [3, 4, 5])
def test_greedy_matches_brute(backend, k):
    for n in (1, 7, 20, 31):
        assert list(greedy_ap_free(k, n)) == greedy_brute(k, n)


def test_greedy_k3_is_base3_digits(backend):
    # the greedy 3-AP-free sequence is 1 + (numbers with no digit 2 in base 3)
    n = 3000
    expected = [v + 1 for v in range(n) if "2" not in _base3(v)]
    assert list(greedy_ap_free(3, n)) == expected


def _base3(v):
    digits = ""
    while True:
        digits += str(v % 3)
        v //= 3
        if not v:
            return digits


@pytest.mark.parametrize("k,n", [(3, 500), (4, 400), (5, 300)])
def test_greedy_is_ap_free(backend, k, n):
    assert find_ap(greedy_ap_free(k, n), k) is None


def test_greedy_rejects_bad_args():
    with pytest.raises(DomainError):
        greedy_ap_free(2, 5)
    with pytest.raises(DomainError):
        greedy_ap_free(3, 0)


# --- Behrend ------------------------------------------------------------------------

def _brute_params(N):
    best = None
    for n in range(1, 40):
        for d in range(2, N + 1):
            if (2 * d - 1) ** n > N:
                break
            key = (Fraction(d**n, n * (d - 1) ** 2 + 1), n)
            if best is None or key > best[0]:
                best = (key, d, n)
    return best


@pytest.mark.parametrize("N", [3, 9, 10, 26, 27, 100, 124, 125, 1000, 4096, 10**4, 10**5])
def test_behrend_params_maximise_guarantee(N):
    p = behrend_params(N)
    _, d, n = _brute_params(N)
    assert (p.base_digit_bound, p.dimension) == (d, n)
    assert p.fits(N)
    counts = {}
    for vec in product(range(d), repeat=n):
        r = sum(x * x for x in vec)
        counts[r] = counts.get(r, 0) + 1
    top = max(counts.values())
    assert counts[p.shell_norm] == top == shell_size(p)
    assert p.shell_norm == min(r for r, c in counts.items() if c == top)


def test_behrend_params_invariants():
    with pytest.raises(DomainError):
        BehrendParams(1, 2, 0)
    with pytest.raises(DomainError):
        BehrendParams(3, 2, 9)
    assert BehrendParams(3, 2, 8).pigeonhole() == Fraction(9, 9)


def test_behrend_tiny():
    assert behrend_set(2) == ns(1)
    assert len(behrend_set(3)) >= 1
    with pytest.raises(DomainError):
        behrend_set(1)


@pytest.mark.parametrize("N", [124, 10**2, 10**3, 10**4])
def test_behrend_is_3ap_free_and_bounded(backend, N):
    A = behrend_set(N)
    assert find_ap(A, 3) is None
    assert A.elements[-1] <= N
    assert len(A) == shell_size(behrend_params(N))


def test_behrend_explicit_params_larger_digits(backend):
    # d = 4, n = 3, base 7: shell sizes checked against enumeration
    p = BehrendParams(4, 3, 9)
    A = behrend_set(343, p)
    assert len(A) == sum(1 for v in product(range(4), repeat=3) if sum(x * x for x in v) == 9)
    assert find_ap(A, 3) is None
    assert not has_k_ap_brute(A.elements, 3)
    with pytest.raises(DomainError):
        behrend_set(342, p)


# --- theta ------------------------------------------------------------------------

def test_theta_examples():
    assert theta(ns(1), 2).points == {(2, 1), (3, 2)}
    assert theta(ns(2), 1).points == {(3, 1)}
    B = theta(ns(1, 2, 4, 5), 5)
    assert len(B) == 20
    assert {x - y for x, y in B.points} == {1, 2, 4, 5}


def test_theta_errors():
    with pytest.raises(DomainError):
        theta(ns(1), 0)
    with pytest.raises(OverflowError):
        theta(ns(MAX_INT - 1), 2)


@settings(max_examples=100, deadline=None)
@given(st.sets(st.integers(1, 15), max_size=8), st.integers(1, 12))
def test_theta_membership_and_cardinality(values, rows):
    A = NaturalSet.of(values)
    B = theta(A, rows)
    assert len(B) == len(A) * rows
    for x in range(1, 30):
        for y in range(1, 15):
            assert ((x, y) in B) == (1 <= y <= rows and (x - y) in A)


def test_theta_fits_box():
    A = ns(1, 3, 7, 10)
    B = theta(A, 10)
    assert all(1 <= x <= 20 and 1 <= y <= 20 for x, y in B.points)


# --- witness conversions --------------------------------------------------------------

def test_grid_to_ap_examples():
    assert grid_to_ap(GridWitness(5, 2, 1, 2)) == ApWitness(2, 1, 3)
    assert grid_to_ap(GridWitness(10, 3, 2, 3)) == ApWitness(3, 2, 5)
    A = ns(2, 3, 4)
    w = GridWitness(4, 1, 1, 2)
    assert verify_grid_witness(theta(A, 3), w)
    assert verify_ap_witness(A, grid_to_ap(w))


def test_grid_to_ap_precondition():
    with pytest.raises(DomainError):
        grid_to_ap(GridWitness(2, 1, 1, 2))


def test_ap_to_grid_examples():
    assert ap_to_grid(ApWitness(2, 1, 3), 3) == GridWitness(4, 1, 1, 2)
    assert ap_to_grid(ApWitness(3, 2, 5), 10) == GridWitness(8, 1, 2, 3)
    assert ap_to_grid(ApWitness(1, 5, 3), 3) is None
    with pytest.raises(DomainError):
        ap_to_grid(ApWitness(1, 1, 4), 10)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 50), st.integers(1, 10), st.integers(2, 4), st.integers(1, 40))
def test_round_trip(start, diff, s, rows):
    w = ApWitness(start, diff, 2 * s - 1)
    g = ap_to_grid(w, rows)
    if g is None:
        assert 1 + (s - 1) * diff > rows
        return
    back = grid_to_ap(g)
    assert back.diff == w.diff and back.terms() == w.terms()
    A = NaturalSet.of(w.terms())
    assert verify_grid_witness(theta(A, rows), g)


# --- the reduction at finite scale ------------------------------------------------------

@pytest.mark.parametrize("s", [2, 3])
def test_forward_reduction_random(backend, s):
    rng = random.Random(SEED + s)
    for _ in range(60):
        N = rng.randint(1, 60)
        base = greedy_ap_free(2 * s - 1, N) if rng.random() < 0.5 else behrend_set(max(N, 2))
        if s == 3 and find_ap(base, 5) is not None:
            continue
        A = NaturalSet(tuple(a for a in base if rng.random() < 0.6))
        if find_ap(A, 2 * s - 1) is None:
            assert find_grid(theta(A, rng.randint(1, 60)), s) is None


@pytest.mark.parametrize("s", [2, 3])
def test_converse_reduction_random(backend, s):
    rng = random.Random(SEED + 10 * s)
    for _ in range(60):
        diff = rng.randint(1, 6)
        start = rng.randint(1, 30)
        rows = 1 + (s - 1) * diff + rng.randint(0, 10)
        planted = {start + i * diff for i in range(2 * s - 1)}
        A = NaturalSet.of(planted | {rng.randint(1, 80) for _ in range(10)})
        w = find_grid(theta(A, rows), s)
        assert w is not None
        assert verify_ap_witness(A, grid_to_ap(w))
