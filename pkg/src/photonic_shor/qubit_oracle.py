"""Dense state-vector reference simulator for small H/CZ circuits.

Basis index ``i`` has bit ``q`` equal to ``(i >> q) & 1`` where ``q`` is the
position of the qubit in ``circuit.qubit_labels``. Outcome strings follow the
same order, so the first qubit is the rightmost character.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import QubitCircuit

MAX_QUBITS = 12
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


@dataclass(frozen=True)
class QubitState:
    amplitudes: np.ndarray
    qubit_labels: tuple[str, ...]

    @property
    def num_qubits(self) -> int:
        return len(self.qubit_labels)

    def amplitude(self, bits: str) -> complex:
        return complex(self.amplitudes[int(bits, 2)])

    def as_dict(self, tol: float = 0.0) -> dict[str, complex]:
        k = self.num_qubits
        return {
            format(i, f"0{k}b"): complex(a)
            for i, a in enumerate(self.amplitudes)
            if abs(a) > tol
        }


def _apply_h(psi: np.ndarray, q: int, k: int) -> np.ndarray:
    # axis k-1-q of the reshaped tensor carries qubit q
    t = psi.reshape((2,) * k)
    t = np.moveaxis(np.tensordot(_H, t, axes=([1], [k - 1 - q])), 0, k - 1 - q)
    return t.reshape(-1)


def _cz_mask(q1: int, q2: int, k: int) -> np.ndarray:
    idx = np.arange(1 << k)
    both = ((idx >> q1) & 1) & ((idx >> q2) & 1)
    return np.where(both == 1, -1.0, 1.0)


def statevector_run(circuit: QubitCircuit) -> QubitState:
    k = circuit.num_qubits
    if k > MAX_QUBITS:
        raise ValueError(f"oracle supports at most {MAX_QUBITS} qubits, got {k}")
    index = {q: i for i, q in enumerate(circuit.qubit_labels)}
    psi = np.zeros(1 << k, dtype=complex)
    psi[sum(b << i for i, b in enumerate(circuit.initial_bits))] = 1.0
    for gate in circuit.gates:
        if gate.kind == "H":
            psi = _apply_h(psi, index[gate.targets[0]], k)
        elif gate.kind == "CZ":
            psi = psi * _cz_mask(index[gate.targets[0]], index[gate.targets[1]], k)
        else:
            raise ValueError(f"unsupported gate kind {gate.kind!r}")
    return QubitState(psi, tuple(circuit.qubit_labels))


def marginal_distribution(state: QubitState, measured_qubits: Sequence[str]) -> dict[str, float]:
    """Outcome probabilities of ``measured_qubits``, the others summed out.

    Keys are bit strings with ``measured_qubits[0]`` as the rightmost bit.
    """
    if not measured_qubits:
        raise ValueError("at least one qubit must be measured")
    missing = [q for q in measured_qubits if q not in state.qubit_labels]
    if missing:
        raise ValueError(f"unknown qubits {missing}")
    if len(set(measured_qubits)) != len(measured_qubits):
        raise ValueError("measured qubits must be distinct")
    positions = [state.qubit_labels.index(q) for q in measured_qubits]
    probs = np.abs(state.amplitudes) ** 2
    idx = np.arange(len(probs))
    outcome = np.zeros_like(idx)
    for j, q in enumerate(positions):
        outcome |= ((idx >> q) & 1) << j
    totals = np.bincount(outcome, weights=probs, minlength=1 << len(positions))
    m = len(positions)
    return {format(i, f"0{m}b"): float(p) for i, p in enumerate(totals)}
