import json

import pytest

from photonic_shor.circuit import shor15_circuit
from photonic_shor.experiment import (
    DEFAULT_SHOTS,
    classical_fidelity,
    exact_chip_distribution,
    run_full_report,
    sample_counts,
    write_svg,
)
from photonic_shor.qubit_oracle import marginal_distribution, statevector_run
from photonic_shor.shor_classical import Classification

UNIFORM4 = {"000": 0.25, "010": 0.25, "100": 0.25, "110": 0.25}


def test_exact_distribution_uniform_over_even_labels():
    dist, p_post = exact_chip_distribution()
    for k, p in dist.items():
        if k in UNIFORM4:
            assert p == pytest.approx(0.25, abs=1e-10)
        else:
            assert p < 1e-12
    assert p_post == pytest.approx(1 / 81, abs=1e-12)
    assert p_post * sum(dist.values()) <= 1


def test_exact_distribution_matches_oracle_marginal():
    dist, _ = exact_chip_distribution()
    oracle = marginal_distribution(statevector_run(shor15_circuit()), ["x1", "x2"])
    for x_register, p in oracle.items():
        assert dist[x_register + "0"] == pytest.approx(p, abs=1e-9)


def test_default_shots():
    assert DEFAULT_SHOTS == 3000


def test_sample_point_mass():
    s = sample_counts({"000": 0.0, "010": 1.0}, shots=123, seed=4)
    assert s.counts == {"000": 0, "010": 123}
    assert sum(s.counts.values()) == s.total_shots


def test_sample_reproducible():
    assert sample_counts(UNIFORM4, 500, 9) == sample_counts(UNIFORM4, 500, 9)
    assert sample_counts(UNIFORM4, 500, 9) != sample_counts(UNIFORM4, 500, 10)


def test_sample_rejects_zero_shots():
    with pytest.raises(ValueError):
        sample_counts(UNIFORM4, 0, 0)


def test_large_sample_frequencies():
    ok = 0
    for seed in range(100):
        f = sample_counts(UNIFORM4, 4 * 10**6, seed).frequencies()
        ok += all(abs(v - 0.25) <= 0.002 for v in f.values())
    assert ok >= 99


def test_fidelity_basic():
    assert classical_fidelity(UNIFORM4, UNIFORM4) == pytest.approx(1.0, abs=1e-15)
    assert classical_fidelity({"000": 1.0, "010": 0.0}, {"000": 0.0, "010": 1.0}) == 0.0
    with pytest.raises(ValueError):
        classical_fidelity({"0": 1.0}, {"1": 1.0})


def test_fidelity_exact_vs_ideal():
    dist, _ = exact_chip_distribution()
    ideal = {k: UNIFORM4.get(k, 0.0) for k in dist}
    assert classical_fidelity(dist, ideal) == pytest.approx(1.0, abs=1e-10)


def test_fidelity_3000_shots():
    hits = sum(
        classical_fidelity(UNIFORM4, sample_counts(UNIFORM4, 3000, s).frequencies()) >= 0.98
        for s in range(100)
    )
    assert hits >= 95


def test_full_report_classification():
    rep = run_full_report(3000, 0)
    cls = rep.classification
    for o in ("010", "110"):
        assert cls[o].classification is Classification.SUCCESS
        assert cls[o].factors == (3, 5)
    assert cls["100"].classification is Classification.TRIVIAL_OR_INVALID_ORDER
    assert cls["000"].classification is Classification.INHERENT_FAILURE
    assert rep.success_mass == pytest.approx(0.5, abs=1e-12)


def test_report_deterministic_and_serializable(tmp_path):
    a, b = run_full_report(1000, 3), run_full_report(1000, 3)
    assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())
    doc = json.loads(json.dumps(a.to_dict()))
    assert {"exact_distribution", "sampled", "fidelity", "postselection_probability",
            "classification"} <= set(doc)
    assert doc["sampled"]["total_shots"] == 1000
    assert sum(doc["sampled"]["counts"].values()) == 1000


def test_svg_output(tmp_path):
    path = tmp_path / "outcomes.svg"
    write_svg(run_full_report(3000, 0), path)
    text = path.read_text()
    assert text.lstrip().startswith("<?xml") and "<svg" in text
