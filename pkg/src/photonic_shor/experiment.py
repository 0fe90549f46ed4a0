"""End-to-end run of the compiled N = 15 chip: exact, sampled and classified."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .circuit import shor15_circuit
from .compiler import input_state, lower
from .fock import apply_unitary
from .photonics import network_unitary, postselect
from .shor_classical import Classification, ShorRunResult, classify_and_factor, shor15_instance

REPORT_FORMAT_VERSION = 1
COINCIDENCE_RATE_HZ = 100
INTEGRATION_TIME_S = 30
DEFAULT_SHOTS = COINCIDENCE_RATE_HZ * INTEGRATION_TIME_S
DEFAULT_SEED = 0
MEASURED_QUBITS = ("x1", "x2")

OutcomeDistribution = dict[str, float]


@dataclass(frozen=True)
class SampledCounts:
    counts: dict[str, int]
    total_shots: int
    seed: int

    def frequencies(self) -> OutcomeDistribution:
        return {k: c / self.total_shots for k, c in self.counts.items()}

    def to_dict(self) -> dict:
        return {"counts": dict(self.counts), "total_shots": self.total_shots, "seed": self.seed}


@dataclass(frozen=True)
class ExperimentReport:
    exact_distribution: OutcomeDistribution
    sampled: SampledCounts
    fidelity: float
    postselection_probability: float
    classification: dict[str, ShorRunResult] = field(default_factory=dict)

    @property
    def success_mass(self) -> float:
        return sum(
            p for k, p in self.exact_distribution.items()
            if self.classification[k].classification is Classification.SUCCESS
        )

    def to_dict(self) -> dict:
        return {
            "version": REPORT_FORMAT_VERSION,
            "exact_distribution": dict(self.exact_distribution),
            "sampled": self.sampled.to_dict(),
            "fidelity": self.fidelity,
            "postselection_probability": self.postselection_probability,
            "success_probability": self.success_mass,
            "classification": {k: r.to_dict() for k, r in self.classification.items()},
        }


def readout_label(x_register: str) -> str:
    """Label ``x2 x1 x0`` for a measured ``x2 x1`` string; ``x0`` is always 0."""
    return x_register + "0"


def exact_chip_distribution() -> tuple[OutcomeDistribution, float]:
    """Ideal post-selected outcome distribution over all 3-bit labels."""
    circuit = shor15_circuit()
    net = lower(circuit).network
    result = postselect(apply_unitary(network_unitary(net), input_state(circuit, net)), net)
    positions = [circuit.qubit_labels.index(q) for q in MEASURED_QUBITS]
    n = circuit.num_qubits
    dist = {format(i, "03b"): 0.0 for i in range(8)}
    for bits, amp in result.logical_state.items():
        # bits[n - 1 - q] holds qubit q; MEASURED_QUBITS[0] is least significant
        x_register = "".join(bits[n - 1 - q] for q in reversed(positions))
        dist[readout_label(x_register)] += abs(amp) ** 2
    return dist, result.success_probability


def sample_counts(dist: Mapping[str, float], shots: int = DEFAULT_SHOTS,
                  seed: int = DEFAULT_SEED) -> SampledCounts:
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    keys = sorted(dist)
    p = np.array([dist[k] for k in keys], dtype=float)
    p = np.clip(p, 0.0, None)
    p /= p.sum()
    draws = np.random.default_rng(seed).multinomial(shots, p)
    return SampledCounts({k: int(c) for k, c in zip(keys, draws)}, shots, seed)


def classical_fidelity(p: Mapping[str, float], q: Mapping[str, float]) -> float:
    """Bhattacharyya fidelity ``(sum_i sqrt(p_i q_i))**2``."""
    if set(p) != set(q):
        raise ValueError("distributions must share one outcome space")
    overlap = sum(math.sqrt(max(p[k], 0.0) * max(q[k], 0.0)) for k in sorted(p))
    return min(overlap**2, 1.0)


def run_full_report(shots: int = DEFAULT_SHOTS, seed: int = DEFAULT_SEED) -> ExperimentReport:
    exact, p_post = exact_chip_distribution()
    sampled = sample_counts(exact, shots, seed)
    fidelity = classical_fidelity(exact, sampled.frequencies())
    inst = shor15_instance()
    classes = {k: classify_and_factor(inst, k) for k in sorted(exact)}
    return ExperimentReport(exact, sampled, fidelity, p_post, classes)


def write_svg(report: ExperimentReport, path, labels: Optional[list[str]] = None) -> None:
    """Bar chart of measured frequencies with the ideal distribution dashed."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = labels or sorted(report.exact_distribution)
    freqs = report.sampled.frequencies()
    x = np.arange(len(labels))
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(x, [freqs[k] for k in labels], width=0.6, color="#4c72b0", label="sampled")
    ax.step(np.append(x, x[-1] + 1) - 0.5,
            [report.exact_distribution[k] for k in labels] + [report.exact_distribution[labels[-1]]],
            where="post", linestyle="--", color="k", label="ideal")
    ax.set_xticks(x, labels)
    ax.set_xlabel("outcome x2 x1 x0")
    ax.set_ylabel("probability")
    ax.set_title(f"F = {report.fidelity:.4f}, {report.sampled.total_shots} shots")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
