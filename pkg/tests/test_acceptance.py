"""Exit criteria; each test records one PASS/FAIL line in the terminal summary."""

import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from apfree.analysis import (
    BoundParams,
    behrend_bound,
    energy_partial,
    harmonic_partial,
    row_bound_sign,
    row_energy,
)
from apfree.construct import (
    ap_to_grid,
    behrend_params,
    behrend_set,
    greedy_ap_free,
    grid_to_ap,
    theta,
)
from apfree.core import (
    ApWitness,
    NaturalSet,
    find_ap,
    find_grid,
    verify_ap_witness,
    verify_grid_witness,
)
from apfree.search import (
    certified_lower_bound,
    max_ap_free,
    max_grid_free,
    oracle_max_ap_free,
    oracle_max_grid_free,
)
from conftest import SEED

TRIALS = 1000


def test_reduction_property_suite(criterion):
    rng = random.Random(SEED)
    greedy = {}

    def base(s, N):
        if (s, N) not in greedy:
            greedy[s, N] = greedy_ap_free(2 * s - 1, N)
        return greedy[s, N]

    t0 = time.perf_counter()
    failures = []
    for trial in range(TRIALS):
        s = rng.choice((2, 3))
        N = rng.randint(1, 200)
        A = NaturalSet(tuple(a for a in base(s, N) if rng.random() < 0.5))
        if find_grid(theta(A, N), s) is not None:
            failures.append(("forward", trial, s, N))
    for trial in range(TRIALS):
        s = rng.choice((2, 3))
        N = rng.randint(s, 200)
        diff = rng.randint(1, (N - 1) // (s - 1))
        start = rng.randint(1, N)
        planted = ApWitness(start, diff, 2 * s - 1)
        kept = {a for a in base(s, N) if rng.random() < 0.5}
        A = NaturalSet.of(kept | set(planted.terms()))
        B = theta(A, N)
        w = find_grid(B, s)
        lifted = ap_to_grid(planted, N)
        ok = (
            w is not None
            and verify_grid_witness(B, w)
            and verify_ap_witness(A, grid_to_ap(w))
            and lifted is not None
            and verify_grid_witness(B, lifted)
        )
        if not ok:
            failures.append(("planted", trial, s, N))
    elapsed = time.perf_counter() - t0
    criterion(
        not failures and elapsed < 60,
        f"{2 * TRIALS} trials, {len(failures)} failures, {elapsed:.1f} s (limit 60 s)",
    )


def test_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    mismatches = []
    for k in (3, 4, 5):
        for N in range(1, 21):
            if max_ap_free(k, N).value != oracle_max_ap_free(k, N).value:
                mismatches.append(("r", k, N))
    for N in range(1, 5):
        if max_grid_free(2, N).value != oracle_max_grid_free(2, N).value:
            mismatches.append(("rtilde", 2, N))
    elapsed = time.perf_counter() - t0
    criterion(
        not mismatches and elapsed < 600,
        f"64 pairs, mismatches={mismatches}, {elapsed:.1f} s (limit 600 s)",
    )


def test_reduction_inequality(criterion):
    problems = []
    for N in range(1, 21):
        cb = certified_lower_bound(2, N)
        r = max_ap_free(3, N)
        if not (cb.exact and r.exact and cb.bound == r.value * N):
            problems.append(("bound", N))
        if find_grid(cb.certificate, 2) is not None or len(cb.certificate) != cb.bound:
            problems.append(("certificate", N))
    exact_pairs = []
    for N in (1, 2):
        g = max_grid_free(2, 2 * N)
        cb = certified_lower_bound(2, N)
        exact_pairs.append((N, g.value, cb.bound))
        if not (g.exact and cb.exact and g.value >= cb.bound):
            problems.append(("exact", N))
    criterion(not problems, f"N=1..20 certified; exact (N, rtilde(2N), bound)={exact_pairs}")


def test_row_inequality(criterion):
    t0 = time.perf_counter()
    signs = [row_bound_sign(a) for a in range(1, 10**4 + 1)]
    elapsed = time.perf_counter() - t0
    failures = [a for a, sg in enumerate(signs, 1) if sg < 0]
    equality = [a for a, sg in enumerate(signs, 1) if sg == 0]
    criterion(
        not failures and equality == [1] and row_energy(1) == Fraction(1, 5) and elapsed < 60,
        f"a=1..10^4, failures={failures}, equality at {equality}, {elapsed:.1f} s (limit 60 s)",
    )


def test_chain_consistency(criterion):
    A = greedy_ap_free(3, 100)
    energy = energy_partial(theta(A, 100)).exact
    rows = sum((row_energy(a) for a in A), Fraction(0))
    fifth = harmonic_partial(A) / 5
    criterion(
        energy is not None and energy >= rows >= fifth,
        f"|A|={len(A)}: {float(energy):.6f} >= {float(rows):.6f} >= {float(fifth):.6f}",
    )


def test_behrend_soundness(criterion):
    sizes = {}
    ok = True
    for N in (10**2, 10**3, 10**4, 10**5):
        A = behrend_set(N)
        sizes[N] = len(A)
        ok &= find_ap(A, 3) is None and A.elements[-1] <= N
    p = behrend_params(10**5)
    guarantee = p.pigeonhole()
    ok &= sizes[10**5] > guarantee
    for N in (10, 10**3, 10**6):
        ok &= abs(behrend_bound(BoundParams(3, N, 1e-9)) - N) <= 1e-6 * N
    cs = [0.01, 0.1, 0.5, 1.0, 2.0, 5.0]
    for k in (3, 4, 5):
        vals = [behrend_bound(BoundParams(k, 10**4, c)) for c in cs]
        ok &= all(a > b for a, b in zip(vals, vals[1:]))
    criterion(ok, f"sizes={sizes}, guarantee at 1e5={float(guarantee):.2f}")


DETERMINISM_COMMANDS = [
    ["construct", "greedy", "--k", "3", "--n", "2000"],
    ["construct", "greedy", "--k", "5", "--n", "300"],
    ["construct", "behrend", "--n", "100000"],
    ["construct", "theta", "--input", "{A}", "--rows", "60"],
    ["search", "r", "--k", "3", "--n", "32"],
    ["search", "r", "--k", "4", "--n", "22"],
    ["search", "r", "--k", "3", "--n", "40", "--budget", "5000"],
    ["search", "rtilde", "--s", "2", "--n", "4"],
    ["search", "bound", "--s", "2", "--n", "20"],
    ["search", "bound", "--s", "3", "--n", "12", "--format", "text"],
]


def test_determinism(criterion, tmp_path):
    a_file = tmp_path / "A.txt"
    a_file.write_text(greedy_ap_free(3, 80).to_text())
    unstable = []
    for cmd in DETERMINISM_COMMANDS:
        argv = [arg.replace("{A}", str(a_file)) for arg in cmd] + ["--no-manifest"]
        outputs = set()
        for threads in ("1", "4"):
            env = dict(os.environ, APFREE_THREADS=threads)
            for _ in range(3):
                proc = subprocess.run(
                    [sys.executable, "-m", "apfree.cli", *argv],
                    capture_output=True, env=env, check=True,
                )
                outputs.add(proc.stdout)
        if len(outputs) != 1:
            unstable.append(" ".join(cmd))
    criterion(
        not unstable,
        f"{len(DETERMINISM_COMMANDS)} commands x 3 runs x workers {{1,4}}, unstable={unstable}",
    )
