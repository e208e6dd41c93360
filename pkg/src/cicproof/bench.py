"""Benchmarks: per-app proof pipeline timings and kernel backend comparison.

The app benchmark reports, per repetition, how long key generation and
proof generation took in seconds, verification in milliseconds, and the
serialized proof size. Rows go out as CSV with the header

    app,size,rep,keygen_s,proofgen_s,verify_ms,proof_bytes

where size is the circuit's constraint count. The point the numbers make:
proving scales with the workload, verifying does not.

The kernel benchmark times the polynomial arithmetic hot paths on every
available backend (compiled extension and pure Python) so the speedup is
measurable rather than asserted.
"""

from __future__ import annotations

import csv
import io as _io
import time

from . import kernels
from .apps import APP_NAMES, build_circuit, make_spec, random_instance, solve
from .field import DEFAULT_MODULUS
from .qap import r1cs_to_qap
from .r1cs import to_r1cs
from .rng import Drbg
from .snark import prove, serialize_proof, setup, verify

CSV_HEADER = ("app", "size", "rep", "keygen_s", "proofgen_s", "verify_ms", "proof_bytes")


def bench_app(app: str, reps: int = 3, seed=0, modulus: int = DEFAULT_MODULUS, **params):
    """Time the full pipeline for one app; yields one row dict per rep."""
    spec = make_spec(app, modulus=modulus, **params)
    circuit = build_circuit(spec)
    qap = r1cs_to_qap(to_r1cs(circuit))
    rows = []
    for rep in range(reps):
        t0 = time.perf_counter()
        ek, vk = setup(qap, seed=f"{seed}/{rep}")
        t1 = time.perf_counter()
        rng = Drbg(seed, f"bench/{app}/{rep}")
        pub, priv = random_instance(spec, rng)
        witness, outputs = solve(spec, pub, priv)
        t2 = time.perf_counter()
        proof = prove(ek, qap, witness)
        t3 = time.perf_counter()
        accepted = verify(vk, pub + outputs, proof)
        t4 = time.perf_counter()
        if not accepted:
            raise AssertionError(f"benchmark proof rejected for {app} rep {rep}")
        rows.append(
            {
                "app": app,
                "size": qap.num_constraints,
                "rep": rep,
                "keygen_s": round(t1 - t0, 6),
                "proofgen_s": round(t3 - t2, 6),
                "verify_ms": round((t4 - t3) * 1000, 6),
                "proof_bytes": len(serialize_proof(proof, modulus)),
            }
        )
    return rows


def bench_apps(
    apps=APP_NAMES, reps: int = 3, seed=0, modulus: int = DEFAULT_MODULUS
) -> list[dict]:
    rows = []
    for app in apps:
        rows.extend(bench_app(app, reps=reps, seed=seed, modulus=modulus))
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


# -- kernel backend comparison ---------------------------------------------------


def _bench_one_kernel(fn_name: str, backend_module, size: int, modulus: int, rng: Drbg):
    a = [rng.next_int(modulus) for _ in range(size)]
    b = [rng.next_int(modulus) for _ in range(size)]
    if fn_name == "poly_mul":
        work = lambda: backend_module.poly_mul(a, b, modulus)
    elif fn_name == "poly_divmod":
        prod = backend_module.poly_mul(a, b, modulus)
        work = lambda: backend_module.poly_divmod(prod, b, modulus)
    elif fn_name == "interpolate_consecutive":
        work = lambda: backend_module.interpolate_consecutive(a, modulus)
    else:
        raise ValueError(fn_name)
    t0 = time.perf_counter()
    work()
    return time.perf_counter() - t0


def bench_kernels(
    sizes=(256, 1024), modulus: int = DEFAULT_MODULUS, seed=0
) -> list[dict]:
    """Time each hot kernel on every available backend. Returns row dicts."""
    rows = []
    backends = kernels.available_backends()
    for fn_name in ("poly_mul", "poly_divmod", "interpolate_consecutive"):
        for size in sizes:
            timings = {}
            for backend_name, module in backends.items():
                rng = Drbg(seed, f"kbench/{fn_name}/{size}")
                timings[backend_name] = _bench_one_kernel(
                    fn_name, module, size, modulus, rng
                )
            for backend_name, seconds in timings.items():
                rows.append(
                    {
                        "kernel": fn_name,
                        "backend": backend_name,
                        "size": size,
                        "seconds": seconds,
                        "speedup": (
                            timings["python"] / seconds
                            if seconds > 0 and "python" in timings
                            else 1.0
                        ),
                    }
                )
    return rows


def kernel_rows_to_text(rows: list[dict]) -> str:
    lines = [f"active backend: {kernels.BACKEND}"]
    lines.append(f"{'kernel':26s} {'backend':10s} {'size':>6s} {'seconds':>10s} {'vs python':>10s}")
    for row in rows:
        lines.append(
            f"{row['kernel']:26s} {row['backend']:10s} {row['size']:>6d} "
            f"{row['seconds']:>10.4f} {row['speedup']:>9.1f}x"
        )
    return "\n".join(lines)
