"""Exit criteria for the simulator, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

import conftest
from oracles import equal_up_to_phase, haar_unitary, naive_permanent, random_state
from photonic_shor.circuit import CZ, QubitCircuit, random_circuit, shor15_circuit
from photonic_shor.compiler import cz_truth_table, lower, run_photonic
from photonic_shor.experiment import (
    DEFAULT_SHOTS,
    classical_fidelity,
    exact_chip_distribution,
    run_full_report,
    sample_counts,
)
from photonic_shor.fock import apply_unitary, permanent
from photonic_shor.qubit_oracle import statevector_run
from photonic_shor.shor_classical import (
    Classification,
    FactoringInstance,
    classify_and_factor,
    find_order_bruteforce,
    modexp,
    repeat_success_rate,
    shor15_instance,
)


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    conftest.ACCEPTANCE_LINES.append(f"[{status}] AC{number:<2} {title}" + (f" ({detail})" if detail else ""))
    assert ok, f"AC{number} {title}: {detail}"


def test_ac01_bell_pair_output():
    t0 = time.perf_counter()
    res = run_photonic(shor15_circuit())
    elapsed = time.perf_counter() - t0
    # qubits (x1, x2, f1, f2), strings read f2 f1 x2 x1
    expected = {"1000": 0.5, "0010": 0.5, "1101": 0.5, "0111": 0.5}
    ok = equal_up_to_phase(res.logical_state, expected, 1e-9) and elapsed < 1.0
    record(1, "Bell-pair output", ok, f"{elapsed:.3f}s")


def test_ac02_cz_gadget():
    net = lower(QubitCircuit(("c", "t"), (0, 0), (CZ("c", "t"),))).network
    t0 = time.perf_counter()
    table = cz_truth_table(net)
    elapsed = time.perf_counter() - t0
    target = np.diag([1, 1, 1, -1]) / 3
    phase = table[0, 0] / abs(table[0, 0])
    map_ok = np.max(np.abs(table - phase * target)) <= 1e-10
    probs = np.sum(np.abs(table) ** 2, axis=0)
    prob_ok = np.all(np.abs(probs - 1 / 9) <= 1e-12)
    record(2, "CZ gadget map and 1/9 success", bool(map_ok and prob_ok and elapsed < 0.1),
           f"{elapsed * 1e3:.1f} ms, max p err {np.max(np.abs(probs - 1 / 9)):.1e}")


def test_ac03_chip_postselection_probability():
    _, p = exact_chip_distribution()
    record(3, "full-chip post-selection 1/81", abs(p - 1 / 81) <= 1e-12, f"|dp|={abs(p - 1 / 81):.1e}")


def test_ac04_uniform_outcomes():
    dist, _ = exact_chip_distribution()
    even = ["000", "010", "100", "110"]
    ok = all(abs(dist[k] - 0.25) <= 1e-10 for k in even)
    ok &= all(dist[k] < 1e-12 for k in dist if k not in even)
    record(4, "uniform over 000/010/100/110", ok)


def test_ac05_classification():
    inst = shor15_instance()
    cls = {o: classify_and_factor(inst, o) for o in ["000", "010", "100", "110"]}
    ok = all(cls[o].classification is Classification.SUCCESS and cls[o].factors == (3, 5)
             for o in ("010", "110"))
    ok &= cls["100"].classification is Classification.TRIVIAL_OR_INVALID_ORDER
    ok &= cls["000"].classification is Classification.INHERENT_FAILURE
    exact_mass = sum(Fraction(1, 4) for o in cls if cls[o].classification is Classification.SUCCESS)
    report = run_full_report()
    ok &= exact_mass == Fraction(1, 2) and abs(report.success_mass - 0.5) <= 1e-12
    record(5, "outcome classification, success mass 1/2", ok)


def test_ac06_fidelity_statistics():
    t0 = time.perf_counter()
    dist, _ = exact_chip_distribution()
    ideal = {k: (0.25 if k in ("000", "010", "100", "110") else 0.0) for k in dist}
    fids = np.array([
        classical_fidelity(ideal, sample_counts(dist, DEFAULT_SHOTS, seed).frequencies())
        for seed in range(100)
    ])
    elapsed = time.perf_counter() - t0
    ok = fids.mean() >= 0.99 and np.sum(fids >= 0.98) >= 95 and elapsed < 5.0
    record(6, "3000-shot fidelity statistics", bool(ok),
           f"mean {fids.mean():.5f}, {np.sum(fids >= 0.98)}/100 >= 0.98, {elapsed:.2f}s")


def test_ac07_oracle_equivalence_random_circuits():
    rng = np.random.default_rng(20240607)
    t0 = time.perf_counter()
    failures = failures_shared = 0
    for _ in range(200):
        c = random_circuit(rng, int(rng.integers(1, 5)), int(rng.integers(0, 10)), 3)
        res = run_photonic(c)
        oracle = {k: abs(v) ** 2 for k, v in statevector_run(c).as_dict().items()}
        photonic = res.probabilities()
        dist_ok = all(abs(photonic.get(k, 0.0) - p) <= 1e-9 for k, p in oracle.items())
        prob_ok = abs(res.success_probability - (1 / 9) ** c.count("CZ")) <= 1e-10
        if not (dist_ok and prob_ok):
            failures += 1
            cz_qubits = [q for g in c.gates if g.kind == "CZ" for q in g.targets]
            failures_shared += len(cz_qubits) != len(set(cz_qubits))
    elapsed = time.perf_counter() - t0
    # Mismatches come from circuits where two CZ gadgets share a qubit: only
    # the final detection post-selects, so bunched failures of one gadget can
    # be repaired by a later one and pass the filter.
    record(7, "photonic path == state-vector oracle, 200 random circuits",
           failures == 0 and elapsed < 60,
           f"{failures}/200 mismatches, {failures_shared} with a qubit shared by two CZs, {elapsed:.1f}s")


def test_ac08_number_theory():
    t0 = time.perf_counter()
    checked = mismatches = 0
    for n in range(3, 201):
        for a in range(2, n):
            if math.gcd(a, n) != 1:
                continue
            r = find_order_bruteforce(FactoringInstance(n, a, 1))
            if r & (r - 1):
                continue  # no register width makes r divide 2^m
            m = max(1, r.bit_length() - 1)
            inst = FactoringInstance(n, a, m)
            conditions = r % 2 == 0 and modexp(a, r // 2, n) != n - 1
            for s in range(r):
                k = (2**m * s) // r
                res = classify_and_factor(inst, format(k, f"0{m}b"))
                checked += 1
                if s == 0:
                    good = res.classification is Classification.INHERENT_FAILURE
                elif math.gcd(s, r) == 1:
                    good = res.candidate_order == r
                    if conditions:
                        good &= res.classification is Classification.SUCCESS
                        f0, f1 = res.factors
                        good &= f0 * f1 == n and 1 < f0 <= f1 < n
                    else:
                        good &= res.classification is Classification.TRIVIAL_OR_INVALID_ORDER
                else:
                    good = res.classification is not Classification.SUCCESS
                mismatches += not good
    elapsed = time.perf_counter() - t0
    record(8, "order/factor recovery for N <= 200", mismatches == 0 and elapsed < 10,
           f"{checked} readouts, {mismatches} mismatches, {elapsed:.2f}s")


def test_ac09_numerical_kernel():
    rng = np.random.default_rng(99)
    worst_perm = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 6))
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        worst_perm = max(worst_perm, abs(permanent(a) - naive_permanent(a)))
    worst_norm = 0.0
    for _ in range(100):
        m = int(rng.integers(2, 7))
        n = int(rng.integers(1, 4))
        out = apply_unitary(haar_unitary(rng, m), random_state(rng, m, n, terms=4))
        worst_norm = max(worst_norm, abs(out.norm() - 1))
    record(9, "permanent and norm preservation", worst_perm <= 1e-12 and worst_norm <= 1e-10,
           f"perm err {worst_perm:.1e}, norm err {worst_norm:.1e}")


def test_ac10_repeat_success_rate():
    ok = repeat_success_rate(1, 0.5) == 0.5
    ok &= all(repeat_success_rate(n, 0.5) == 1 - 0.5**n for n in range(1, 31))
    record(10, "repeat success 1 - (1/2)^n", ok)
