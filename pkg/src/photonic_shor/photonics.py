"""Directional couplers, coupler networks and post-selected readout."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .fock import ModeUnitary, PhotonicState

NETWORK_FORMAT_VERSION = 1


class Convention(str, enum.Enum):
    REAL_SIGNED = "real_signed"
    SYMMETRIC_PHASE = "symmetric_phase"


@dataclass(frozen=True)
class Coupler:
    """Two-mode directional coupler with reflectivity ``reflectivity``.

    Under the ``real_signed`` convention the transfer matrix on
    ``(mode_a, mode_b)`` is ``[[r, t], [t, -r]]`` with ``r = sqrt(eta)`` and
    ``t = sqrt(1 - eta)``; which mode is ``mode_a`` therefore matters.
    """

    mode_a: int
    mode_b: int
    reflectivity: float
    convention: Convention = Convention.REAL_SIGNED

    def __post_init__(self) -> None:
        if self.mode_a == self.mode_b:
            raise ValueError(f"coupler needs two distinct modes, got {self.mode_a} twice")
        if min(self.mode_a, self.mode_b) < 0:
            raise ValueError("mode indices must be non-negative")
        if not 0.0 <= self.reflectivity <= 1.0:
            raise ValueError(f"reflectivity must lie in [0, 1], got {self.reflectivity}")
        object.__setattr__(self, "convention", Convention(self.convention))


def coupler_unitary(c: Coupler) -> np.ndarray:
    r = math.sqrt(c.reflectivity)
    t = math.sqrt(1.0 - c.reflectivity)
    if c.convention is Convention.REAL_SIGNED:
        return np.array([[r, t], [t, -r]], dtype=complex)
    return np.array([[r, 1j * t], [1j * t, r]], dtype=complex)


def embed(c: Coupler, mode_count: int) -> ModeUnitary:
    """Identity on ``mode_count`` modes except the coupler's 2x2 block."""
    if max(c.mode_a, c.mode_b) >= mode_count:
        raise IndexError(
            f"coupler on modes ({c.mode_a}, {c.mode_b}) does not fit in {mode_count} modes"
        )
    u = np.eye(mode_count, dtype=complex)
    idx = np.array([c.mode_a, c.mode_b])
    u[np.ix_(idx, idx)] = coupler_unitary(c)
    return ModeUnitary(u)


@dataclass(frozen=True)
class CouplerNetwork:
    mode_count: int
    couplers: tuple[Coupler, ...]
    rail_map: Mapping[str, tuple[int, int]]
    ancilla_modes: tuple[int, ...] = ()
    metadata: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "couplers", tuple(self.couplers))
        object.__setattr__(
            self, "rail_map", {q: (int(r[0]), int(r[1])) for q, r in self.rail_map.items()}
        )
        object.__setattr__(self, "ancilla_modes", tuple(sorted(int(m) for m in self.ancilla_modes)))
        used = [m for rails in self.rail_map.values() for m in rails] + list(self.ancilla_modes)
        if sorted(used) != list(range(self.mode_count)):
            raise ValueError(
                "rail and ancilla modes must be disjoint and cover "
                f"range({self.mode_count}); got {sorted(used)}"
            )
        for c in self.couplers:
            if max(c.mode_a, c.mode_b) >= self.mode_count:
                raise ValueError(f"{c} references a mode outside range({self.mode_count})")

    @property
    def qubits(self) -> list[str]:
        return list(self.rail_map)

    def with_convention(self, convention: Convention | str) -> "CouplerNetwork":
        couplers = [Coupler(c.mode_a, c.mode_b, c.reflectivity, Convention(convention))
                    for c in self.couplers]
        return CouplerNetwork(self.mode_count, couplers, self.rail_map,
                              self.ancilla_modes, self.metadata)

    def to_dict(self) -> dict:
        return {
            "version": NETWORK_FORMAT_VERSION,
            "mode_count": self.mode_count,
            "couplers": [
                {"a": c.mode_a, "b": c.mode_b, "eta": c.reflectivity,
                 "convention": c.convention.value}
                for c in self.couplers
            ],
            "rail_map": {q: list(r) for q, r in self.rail_map.items()},
            "ancillas": list(self.ancilla_modes),
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "CouplerNetwork":
        version = doc.get("version")
        if version != NETWORK_FORMAT_VERSION:
            raise ValueError(f"unsupported network document version {version!r}")
        couplers = [
            Coupler(int(c["a"]), int(c["b"]), float(c["eta"]),
                    Convention(c.get("convention", Convention.REAL_SIGNED.value)))
            for c in doc["couplers"]
        ]
        return cls(
            mode_count=int(doc["mode_count"]),
            couplers=tuple(couplers),
            rail_map={q: tuple(r) for q, r in doc["rail_map"].items()},
            ancilla_modes=tuple(doc.get("ancillas", ())),
            metadata=doc.get("metadata", ""),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CouplerNetwork":
        return cls.from_dict(json.loads(text))


def network_unitary(net: CouplerNetwork) -> ModeUnitary:
    """Transfer matrix of the whole network; later couplers act on the left."""
    u = np.eye(net.mode_count, dtype=complex)
    for c in net.couplers:
        u = embed(c, net.mode_count).entries @ u
    return ModeUnitary(u)


@dataclass(frozen=True)
class PostselectionPattern:
    """One photon per qubit rail pair, none in any ancilla mode."""

    rail_pairs: tuple[tuple[int, int], ...]
    ancilla_modes: tuple[int, ...]

    @classmethod
    def for_network(cls, net: CouplerNetwork) -> "PostselectionPattern":
        return cls(tuple(net.rail_map.values()), net.ancilla_modes)

    @property
    def photon_number(self) -> int:
        return len(self.rail_pairs)

    def decode(self, occupation: Sequence[int]) -> str | None:
        """Logical bit string for an accepted occupation, else ``None``.

        The first qubit is the rightmost (least significant) character.
        """
        if any(occupation[m] for m in self.ancilla_modes):
            return None
        bits = []
        for r0, r1 in self.rail_pairs:
            if (occupation[r0], occupation[r1]) == (1, 0):
                bits.append("0")
            elif (occupation[r0], occupation[r1]) == (0, 1):
                bits.append("1")
            else:
                return None
        return "".join(reversed(bits))


@dataclass(frozen=True)
class PostselectedResult:
    success_probability: float
    logical_state: dict[str, complex]
    raw_state: PhotonicState
    qubits: tuple[str, ...] = field(default=())

    @property
    def is_empty(self) -> bool:
        """True when no amplitude survived post-selection."""
        return not self.logical_state

    def probabilities(self) -> dict[str, float]:
        return {b: abs(a) ** 2 for b, a in sorted(self.logical_state.items())}

    def to_dict(self) -> dict:
        return {
            "success_probability": self.success_probability,
            "qubits": list(self.qubits),
            "empty": self.is_empty,
            "logical_state": {
                b: {"re": a.real, "im": a.imag} for b, a in sorted(self.logical_state.items())
            },
        }


def postselect(state: PhotonicState, net: CouplerNetwork) -> PostselectedResult:
    pattern = PostselectionPattern.for_network(net)
    if state.mode_count != net.mode_count:
        raise ValueError(
            f"state has {state.mode_count} modes, network has {net.mode_count}"
        )
    if state.photon_number != pattern.photon_number:
        raise ValueError(
            f"state carries {state.photon_number} photons but the network has "
            f"{pattern.photon_number} qubits"
        )
    kept: dict[str, complex] = {}
    for occ, amp in state.sorted_items():
        bits = pattern.decode(occ)
        if bits is not None:
            kept[bits] = kept.get(bits, 0j) + amp
    p = float(sum(abs(a) ** 2 for a in kept.values()))
    qubits = tuple(net.rail_map)
    if p == 0.0:
        return PostselectedResult(0.0, {}, state, qubits)
    scale = 1.0 / math.sqrt(p)
    logical = {b: a * scale for b, a in kept.items()}
    return PostselectedResult(p, logical, state, qubits)
