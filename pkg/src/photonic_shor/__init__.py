"""Exact and sampled simulation of a compiled Shor-15 linear-optical chip."""

from .circuit import CZ, Gate, H, QubitCircuit, shor15_circuit
from .compiler import LoweringReport, cz_truth_table, input_state, lower, run_photonic
from .experiment import (
    ExperimentReport,
    SampledCounts,
    classical_fidelity,
    exact_chip_distribution,
    run_full_report,
    sample_counts,
)
from .fock import (
    CapacityError,
    ModeUnitary,
    PhotonicState,
    apply_unitary,
    enumerate_basis,
    permanent,
)
from .photonics import (
    Convention,
    Coupler,
    CouplerNetwork,
    PostselectedResult,
    coupler_unitary,
    embed,
    network_unitary,
    postselect,
)
from .qubit_oracle import QubitState, marginal_distribution, statevector_run
from .shor_classical import (
    Classification,
    FactoringInstance,
    ShorRunResult,
    classify_and_factor,
    find_order_bruteforce,
    gcd,
    invert_bit_order,
    modexp,
    order_candidate,
    repeat_success_rate,
)

__version__ = "0.1.0"
