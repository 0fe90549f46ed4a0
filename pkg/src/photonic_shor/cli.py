"""Command-line entry point (``photonic-shor``)."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import experiment
from .circuit import QubitCircuit
from .compiler import dual_rail_state, lower
from .fock import apply_unitary
from .photonics import CouplerNetwork, network_unitary, postselect
from .qubit_oracle import marginal_distribution, statevector_run
from .shor_classical import FactoringInstance, classify_and_factor, find_order_bruteforce


def _emit(doc: dict, out: str | None = None) -> None:
    text = json.dumps(doc, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_compile(args) -> None:
    circuit = QubitCircuit.from_json(Path(args.circuit).read_text())
    report = lower(circuit)
    doc = report.network.to_dict()
    if args.out:
        Path(args.out).write_text(report.network.to_json() + "\n")
        print(f"wrote {report.network.mode_count}-mode network to {args.out}; "
              f"expected success {report.expected_success_probability:.6g}")
    else:
        _emit(doc)


def cmd_simulate(args) -> None:
    net = CouplerNetwork.from_json(Path(args.network).read_text())
    state = apply_unitary(network_unitary(net), dual_rail_state(net, args.input_bits))
    if args.postselect:
        _emit({"version": 1, **postselect(state, net).to_dict()})
    else:
        _emit({"version": 1, "state": state.to_dict()})


def cmd_run_shor15(args) -> None:
    report = experiment.run_full_report(args.shots, args.seed)
    _emit(report.to_dict(), args.report)
    if args.svg:
        experiment.write_svg(report, args.svg)


def cmd_factor(args) -> None:
    if args.order_oracle:
        inst = FactoringInstance(args.N, args.a, args.bits)
        _emit({"version": 1, "N": args.N, "a": args.a, "order": find_order_bruteforce(inst)})
        return
    if args.outcome is None:
        raise ValueError("factor needs --outcome or --order-oracle")
    inst = FactoringInstance(args.N, args.a, len(args.outcome))
    _emit({"version": 1, "N": args.N, "a": args.a, **classify_and_factor(inst, args.outcome).to_dict()})


def cmd_oracle(args) -> None:
    circuit = QubitCircuit.from_json(Path(args.circuit).read_text())
    state = statevector_run(circuit)
    doc = {
        "version": 1,
        "qubits": list(circuit.qubit_labels),
        "amplitudes": {b: {"re": a.real, "im": a.imag} for b, a in state.as_dict(1e-15).items()},
        "marginals": {
            q: marginal_distribution(state, [q]) for q in circuit.qubit_labels
        },
    }
    _emit(doc)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="photonic-shor", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="lower a circuit document to a coupler network")
    p.add_argument("--circuit", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("simulate", help="evolve a dual-rail input through a network")
    p.add_argument("--network", required=True)
    p.add_argument("--input-bits", required=True, help="one bit per qubit, in rail_map order")
    p.add_argument("--postselect", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("run-shor15", help="exact + sampled run of the N=15 chip")
    p.add_argument("--shots", type=int, default=experiment.DEFAULT_SHOTS)
    p.add_argument("--seed", type=int, default=experiment.DEFAULT_SEED)
    p.add_argument("--report")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_run_shor15)

    p = sub.add_parser("factor", help="classify a readout or print the brute-force order")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--outcome")
    p.add_argument("--order-oracle", action="store_true")
    p.add_argument("--bits", type=int, default=3, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("oracle", help="state-vector reference run of a circuit")
    p.add_argument("--circuit", required=True)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (OSError, ValueError, KeyError, IndexError, OverflowError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
