"""Command line front end.

Subcommands:

  bench                 time the proof pipeline per app, CSV output
  bench --kernels       compare compiled and pure-Python kernel backends
  scenario run FILE     execute a scenario script, print its trace
  prove INSTANCE        build, key, and prove one instance file
  verify VK IO PROOF    check a proof against a verification key and io
  gas APP [k=v ...]     closed-form on-chain cost estimate

Exit codes: 0 success, 1 proof rejected, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .apps import APP_NAMES, build_circuit, io_shape, parse_instance_text, solve
from .bench import (
    bench_apps,
    bench_kernels,
    kernel_rows_to_text,
    rows_to_csv,
)
from .errors import CicproofError, MalformedScript
from .field import DEFAULT_MODULUS
from .gas import gas_report
from .harness import run_scenario
from .qap import r1cs_to_qap
from .r1cs import to_r1cs
from .snark import (
    deserialize_proof,
    serialize_proof,
    setup,
    prove,
    verify,
    vk_from_bytes,
    vk_to_bytes,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cicproof",
        description="verifiable outsourcing of contract workloads",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bench", help="time the proof pipeline or the kernels")
    p.add_argument("--apps", default=",".join(APP_NAMES), help="comma-separated app list")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", default="0")
    p.add_argument("--modulus", type=int, default=DEFAULT_MODULUS)
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.add_argument(
        "--kernels", action="store_true", help="compare kernel backends instead of apps"
    )
    p.add_argument("--sizes", default="256,1024", help="kernel sizes for --kernels")

    p = sub.add_parser("scenario", help="run multi-actor scenario scripts")
    scn_sub = p.add_subparsers(dest="scenario_command", required=True)
    p = scn_sub.add_parser("run", help="execute a script and print the trace")
    p.add_argument("file")
    p.add_argument("--seed", default="0")
    p.add_argument("--balance", type=int, default=1000)

    p = sub.add_parser("prove", help="prove one instance file end to end")
    p.add_argument("instance", help="instance file with public and private inputs")
    p.add_argument("--seed", default="0", help="key generation seed")
    p.add_argument("--out", help="output path prefix (default: instance path stem)")

    p = sub.add_parser("verify", help="check a proof against a key and public io")
    p.add_argument("vk")
    p.add_argument("io")
    p.add_argument("proof")

    p = sub.add_parser("gas", help="estimate on-chain execution cost")
    p.add_argument("app", choices=APP_NAMES)
    p.add_argument("params", nargs="*", help="parameter overrides as key=value")

    return parser


def _cmd_bench(args) -> int:
    if args.kernels:
        sizes = tuple(int(tok) for tok in args.sizes.split(",") if tok)
        rows = bench_kernels(sizes=sizes, modulus=args.modulus, seed=args.seed)
        print(kernel_rows_to_text(rows))
        return 0
    apps = [tok for tok in args.apps.split(",") if tok]
    for app in apps:
        if app not in APP_NAMES:
            raise MalformedScript(f"unknown app {app!r}")
    rows = bench_apps(apps=apps, reps=args.reps, seed=args.seed, modulus=args.modulus)
    text = rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_scenario_run(args) -> int:
    text = Path(args.file).read_text()
    result = run_scenario(text, seed=args.seed, initial_balance=args.balance)
    sys.stdout.write(result.trace)
    return 0


def _cmd_prove(args) -> int:
    text = Path(args.instance).read_text()
    spec, pub, priv = parse_instance_text(text)
    if priv is None:
        raise MalformedScript(
            "instance file lacks the private inputs needed to build a witness"
        )
    circuit = build_circuit(spec)
    qap = r1cs_to_qap(to_r1cs(circuit))
    ek, vk = setup(qap, seed=args.seed)
    witness, outputs = solve(spec, pub, priv)
    proof = prove(ek, qap, witness)
    io_values = pub + outputs

    prefix = args.out if args.out else str(Path(args.instance).with_suffix(""))
    vk_path = Path(prefix + ".vk")
    io_path = Path(prefix + ".io")
    proof_path = Path(prefix + ".proof")
    vk_path.write_bytes(vk_to_bytes(vk))
    io_path.write_text("io = " + " ".join(str(v) for v in io_values) + "\n")
    proof_path.write_bytes(serialize_proof(proof, spec.modulus))
    print(f"spec: {spec.app}, {qap.num_constraints} constraints, {qap.wire_count} wires")
    print(f"outputs: {' '.join(str(v) for v in outputs)}")
    print(f"wrote {vk_path} {io_path} {proof_path}")
    return 0


def _parse_io_text(text: str) -> list[int]:
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("io"):
            _, _, value = line.partition("=")
            return [int(tok) for tok in value.split()]
    raise MalformedScript("io file has no 'io = ...' line")


def _cmd_verify(args) -> int:
    vk = vk_from_bytes(Path(args.vk).read_bytes())
    io_values = _parse_io_text(Path(args.io).read_text())
    try:
        proof = deserialize_proof(Path(args.proof).read_bytes())
        accepted = verify(vk, io_values, proof)
    except CicproofError as exc:
        print(f"reject ({exc})")
        return 1
    if accepted:
        print("accept")
        return 0
    print("reject")
    return 1


def _cmd_gas(args) -> int:
    params = {}
    for tok in args.params:
        if "=" not in tok:
            raise MalformedScript(f"expected key=value, got {tok!r}")
        key, _, value = tok.partition("=")
        params[key] = int(value)
    print(gas_report(args.app, **params))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "scenario":
            return _cmd_scenario_run(args)
        if args.command == "prove":
            return _cmd_prove(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "gas":
            return _cmd_gas(args)
    except (CicproofError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
