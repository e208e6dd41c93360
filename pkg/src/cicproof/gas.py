"""What the workloads would cost to run on-chain, and why nobody does that.

The model charges a fixed price per native arithmetic operation the
contract would execute, plus storage writes for the results and a flat
transaction base. Counts are closed-form in the app parameters, so the
estimates need no execution. Comparing an estimate against the per-block
budget shows the gap verified outsourcing closes: checking a proof costs
a small constant, executing the workload costs orders of magnitude more
than a block allows.

The counts model straight-line native execution, not circuit constraints.
Growing a kernel can shrink the window count, so gas is monotone only in
the parameters that grow the computation itself (matrix size, image size,
variable count, degree, vertex count).
"""

from __future__ import annotations

from .errors import InvalidParameters, KernelLargerThanImage

GAS_COSTS = {
    "field_add": 600,
    "field_mul": 1000,
    "comparison": 900,
    "storage_write": 5000,
}

TX_BASE_GAS = 21_000

# a per-block execution budget in the spirit of mainstream public chains
BLOCK_GAS_LIMIT = 12_000_000

_PARAM_DEFAULTS = {
    "matmul": {"n": 8},
    "image_match": {
        "height": 16,
        "width": 16,
        "kernel_height": 3,
        "kernel_width": 3,
        "bitwidth": 8,
    },
    "multipoly": {"vars": 3, "deg": 2},
    "floyd_warshall": {"n": 6, "bitwidth": 16},
}

# parameters along which the workload, and therefore gas, can only grow
GROWTH_PARAMS = {
    "matmul": ("n",),
    "image_match": ("height", "width"),
    "multipoly": ("vars", "deg"),
    "floyd_warshall": ("n",),
}


def _fill_params(app: str, params: dict) -> dict:
    if app not in _PARAM_DEFAULTS:
        raise InvalidParameters(f"unknown app {app!r}")
    merged = dict(_PARAM_DEFAULTS[app])
    for k, v in params.items():
        if k not in merged:
            raise InvalidParameters(f"{app} does not take parameter {k!r}")
        v = int(v)
        if v < 0:
            raise InvalidParameters(f"{app}: {k} must be non-negative")
        merged[k] = v
    return merged


def op_counts(app: str, **params) -> dict:
    """Native operation counts for one execution of the workload."""
    p = _fill_params(app, params)
    if app == "matmul":
        n = p["n"]
        return {
            "field_mul": n * n * n,
            "field_add": n * n * (n - 1) if n else 0,
            "comparison": 0,
            "storage_write": n * n,
        }
    if app == "image_match":
        rows = p["height"] - p["kernel_height"] + 1
        cols = p["width"] - p["kernel_width"] + 1
        if rows < 1 or cols < 1:
            raise KernelLargerThanImage("kernel does not fit inside the image")
        windows = rows * cols
        taps = p["kernel_height"] * p["kernel_width"]
        return {
            # per window: taps diffs, taps squares, taps-1 sums
            "field_mul": windows * taps,
            "field_add": windows * (2 * taps - 1),
            "comparison": windows - 1,
            "storage_write": 3,
        }
    if app == "multipoly":
        steps = (p["deg"] + 1) ** p["vars"] - 1
        return {
            "field_mul": steps,
            "field_add": steps,
            "comparison": 0,
            "storage_write": 1,
        }
    if app == "floyd_warshall":
        n = p["n"]
        return {
            "field_mul": 0,
            "field_add": n * n * n,
            "comparison": n * n * n,
            "storage_write": n * n,
        }
    raise InvalidParameters(f"unknown app {app!r}")


def estimate_gas(app: str, **params) -> int:
    counts = op_counts(app, **params)
    total = TX_BASE_GAS
    for op, count in counts.items():
        total += GAS_COSTS[op] * count
    return total


def blocks_needed(app: str, **params) -> float:
    return estimate_gas(app, **params) / BLOCK_GAS_LIMIT


def gas_report(app: str, **params) -> str:
    counts = op_counts(app, **params)
    filled = _fill_params(app, params)
    lines = [f"app: {app}"]
    for k, v in filled.items():
        lines.append(f"  {k} = {v}")
    lines.append(f"  {'tx_base':14s} {1:>12d} x {TX_BASE_GAS:>6d} = {TX_BASE_GAS:>14d}")
    total = TX_BASE_GAS
    for op in ("field_mul", "field_add", "comparison", "storage_write"):
        cost = GAS_COSTS[op] * counts[op]
        total += cost
        lines.append(
            f"  {op:14s} {counts[op]:>12d} x {GAS_COSTS[op]:>6d} = {cost:>14d}"
        )
    lines.append(f"  {'total gas':14s} {'':>12s}   {'':>6s}   {total:>14d}")
    lines.append(f"  block limit    {BLOCK_GAS_LIMIT}")
    lines.append(f"  blocks needed  {total / BLOCK_GAS_LIMIT:.2f}")
    return "\n".join(lines)
