"""Lowering of H/CZ qubit circuits to dual-rail directional-coupler networks.

Qubit ``i`` owns modes ``(2i, 2i + 1)`` (rail "0", rail "1"). Every CZ gets a
post-selected three-coupler gadget with two fresh vacuum ancillas, appended
after all rail modes in gate order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import CZ, H, Gate, QubitCircuit, shor15_circuit  # noqa: F401
from .fock import PhotonicState, apply_unitary
from .photonics import Coupler, CouplerNetwork, network_unitary, postselect

HADAMARD_REFLECTIVITY = 1 / 2
CZ_REFLECTIVITY = 1 / 3
CZ_SUCCESS_PROBABILITY = 1 / 9


@dataclass(frozen=True)
class LoweringReport:
    network: CouplerNetwork
    expected_success_probability: float
    gadget_count: int


def cz_gadget(c_rails: tuple[int, int], t_rails: tuple[int, int],
              c_ancilla: int, t_ancilla: int) -> list[Coupler]:
    """The three 1/3 couplers of a post-selected CZ.

    Operand order sets the signs under the real_signed convention: the
    central coupler gives +1/3 on |11>, the control rail-0 stays with
    +1/sqrt(3) and the target rail-0 (placed as mode_b) with -1/sqrt(3).
    """
    return [
        Coupler(c_rails[1], t_rails[1], CZ_REFLECTIVITY),
        Coupler(c_rails[0], c_ancilla, CZ_REFLECTIVITY),
        Coupler(t_ancilla, t_rails[0], CZ_REFLECTIVITY),
    ]


def lower(circuit: QubitCircuit) -> LoweringReport:
    k = circuit.num_qubits
    rails = {q: (2 * i, 2 * i + 1) for i, q in enumerate(circuit.qubit_labels)}
    couplers: list[Coupler] = []
    ancillas: list[int] = []
    next_mode = 2 * k
    for gate in circuit.gates:
        if gate.kind == "H":
            r0, r1 = rails[gate.targets[0]]
            couplers.append(Coupler(r0, r1, HADAMARD_REFLECTIVITY))
        elif gate.kind == "CZ":
            c, t = gate.targets
            a_c, a_t = next_mode, next_mode + 1
            next_mode += 2
            ancillas += [a_c, a_t]
            couplers += cz_gadget(rails[c], rails[t], a_c, a_t)
        else:
            raise ValueError(f"cannot lower gate kind {gate.kind!r}")
    n_cz = circuit.count("CZ")
    net = CouplerNetwork(
        mode_count=next_mode,
        couplers=tuple(couplers),
        rail_map=rails,
        ancilla_modes=tuple(ancillas),
        metadata=f"dual-rail lowering: {circuit.count('H')} H, {n_cz} CZ",
    )
    return LoweringReport(net, CZ_SUCCESS_PROBABILITY**n_cz, n_cz)


def dual_rail_state(net: CouplerNetwork, bits) -> PhotonicState:
    """One photon on rail ``bits[i]`` of the i-th qubit in ``net.rail_map``."""
    bits = [int(b) for b in bits]
    if len(bits) != len(net.rail_map):
        raise ValueError(
            f"got {len(bits)} bits for {len(net.rail_map)} qubits {list(net.rail_map)}"
        )
    occ = [0] * net.mode_count
    for b, pair in zip(bits, net.rail_map.values()):
        if b not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got {b}")
        occ[pair[b]] = 1
    return PhotonicState.basis(occ)


def input_state(circuit: QubitCircuit, net: CouplerNetwork) -> PhotonicState:
    if list(net.rail_map) != list(circuit.qubit_labels):
        raise ValueError(
            f"circuit qubits {list(circuit.qubit_labels)} do not match "
            f"network rails {list(net.rail_map)}"
        )
    return dual_rail_state(net, circuit.initial_bits)


def run_photonic(circuit: QubitCircuit):
    """lower -> input_state -> apply_unitary -> postselect."""
    report = lower(circuit)
    net = report.network
    out = apply_unitary(network_unitary(net), input_state(circuit, net))
    return postselect(out, net)


def cz_truth_table(net: CouplerNetwork) -> np.ndarray:
    """Post-selected (unnormalized) logical map of a single-gadget network.

    Entry ``[out, in]`` is the amplitude of logical ``out`` given basis input
    ``in``, with inputs/outputs indexed so that the first qubit is the least
    significant bit.
    """
    if len(net.rail_map) != 2:
        raise ValueError("truth table needs a two-qubit network")
    u = network_unitary(net)
    table = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        bits = (i & 1, (i >> 1) & 1)
        result = postselect(apply_unitary(u, dual_rail_state(net, bits)), net)
        for label, amp in result.logical_state.items():
            table[int(label, 2), i] = amp * np.sqrt(result.success_probability)
    return table
