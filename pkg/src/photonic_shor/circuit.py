"""Abstract qubit circuits made of H and CZ gates."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

CIRCUIT_FORMAT_VERSION = 1
GATE_ARITY = {"H": 1, "CZ": 2}


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "targets", tuple(self.targets))
        if self.kind not in GATE_ARITY:
            raise ValueError(f"unsupported gate kind {self.kind!r}")
        if len(self.targets) != GATE_ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {GATE_ARITY[self.kind]} operand(s), got {self.targets}")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"{self.kind} operands must be distinct, got {self.targets}")


def H(q: str) -> Gate:
    return Gate("H", (q,))


def CZ(control: str, target: str) -> Gate:
    return Gate("CZ", (control, target))


@dataclass(frozen=True)
class QubitCircuit:
    qubit_labels: tuple[str, ...]
    initial_bits: tuple[int, ...]
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "qubit_labels", tuple(self.qubit_labels))
        object.__setattr__(self, "initial_bits", tuple(int(b) for b in self.initial_bits))
        object.__setattr__(self, "gates", tuple(self.gates))
        if len(set(self.qubit_labels)) != len(self.qubit_labels):
            raise ValueError(f"duplicate qubit labels in {self.qubit_labels}")
        if len(self.initial_bits) != len(self.qubit_labels):
            raise ValueError("need exactly one initial bit per qubit")
        if any(b not in (0, 1) for b in self.initial_bits):
            raise ValueError(f"initial bits must be 0 or 1, got {self.initial_bits}")
        declared = set(self.qubit_labels)
        for g in self.gates:
            unknown = [q for q in g.targets if q not in declared]
            if unknown:
                raise ValueError(f"gate {g.kind}{g.targets} references undeclared qubits {unknown}")

    @property
    def num_qubits(self) -> int:
        return len(self.qubit_labels)

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)

    def to_dict(self) -> dict:
        return {
            "version": CIRCUIT_FORMAT_VERSION,
            "qubits": list(self.qubit_labels),
            "initial_bits": list(self.initial_bits),
            "gates": [{"kind": g.kind, "targets": list(g.targets)} for g in self.gates],
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "QubitCircuit":
        version = doc.get("version", CIRCUIT_FORMAT_VERSION)
        if version != CIRCUIT_FORMAT_VERSION:
            raise ValueError(f"unsupported circuit document version {version!r}")
        return cls(
            qubit_labels=tuple(doc["qubits"]),
            initial_bits=tuple(doc["initial_bits"]),
            gates=tuple(Gate(g["kind"], tuple(g["targets"])) for g in doc["gates"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "QubitCircuit":
        return cls.from_dict(json.loads(text))


def shor15_circuit() -> QubitCircuit:
    """Compiled order-finding circuit for N = 15, a = 2.

    Each (x, f) pair ends up in a Bell state:
    (|00> + |11>)/sqrt(2) on (x1, f1) and (|01> + |10>)/sqrt(2) on (x2, f2).
    """
    return QubitCircuit(
        qubit_labels=("x1", "x2", "f1", "f2"),
        initial_bits=(0, 0, 0, 1),
        gates=(
            H("x1"), H("f1"), CZ("x1", "f1"), H("f1"),
            H("x2"), H("f2"), CZ("x2", "f2"), H("f2"),
        ),
    )


def random_circuit(
    rng, num_qubits: int, num_gates: int, max_cz: int, labels: Sequence[str] | None = None
) -> QubitCircuit:
    """Random H/CZ circuit with at most ``max_cz`` CZ gates (test helper)."""
    labels = tuple(labels or (f"q{i}" for i in range(num_qubits)))
    bits = tuple(int(b) for b in rng.integers(0, 2, size=num_qubits))
    gates: list[Gate] = []
    n_cz = 0
    for _ in range(num_gates):
        if num_qubits >= 2 and n_cz < max_cz and rng.random() < 0.4:
            a, b = rng.choice(num_qubits, size=2, replace=False)
            gates.append(CZ(labels[a], labels[b]))
            n_cz += 1
        else:
            gates.append(H(labels[int(rng.integers(num_qubits))]))
    return QubitCircuit(labels, bits, tuple(gates))
