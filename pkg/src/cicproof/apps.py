"""The four outsourceable workloads: circuits, native references, instances.

Each app provides three views of the same computation that the tests pin
against each other:

  * a circuit built from the app's parameters (proved and verified),
  * a native reference that computes the result directly on ints,
  * an instance file format so the CLI and the job harness can move
    inputs around as text.

Public inputs are data the verifier sees (they end up in the public io
vector together with the outputs). Private inputs ride along to the worker
but never reach the chain; range constraints for them must live inside the
circuit, which is why image pixels get decomposed while the public edge
weights are only checked at parse time.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .circuit import ArithmeticCircuit, CircuitBuilder, Witness, evaluate_circuit
from .errors import (
    InputArityMismatch,
    InvalidParameters,
    KernelLargerThanImage,
    MalformedScript,
    WeightOutOfRange,
)
from .field import DEFAULT_MODULUS
from .gadgets import bit_decompose, less_than, min_of, select
from .rng import Drbg

APP_NAMES = ("matmul", "image_match", "multipoly", "floyd_warshall")

# parameter order is the canonical serialization order
_PARAM_KEYS = {
    "matmul": ("n",),
    "image_match": ("height", "width", "kernel_height", "kernel_width", "bitwidth"),
    "multipoly": ("vars", "deg"),
    "floyd_warshall": ("n", "bitwidth"),
}

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


def ceil_log2(x: int) -> int:
    if x < 1:
        raise ValueError("ceil_log2 of a non-positive value")
    return (x - 1).bit_length()


def inf_sentinel(bitwidth: int) -> int:
    """Missing-edge marker: the largest value a distance cell may hold."""
    return (1 << (bitwidth - 1)) - 1


def max_weight(bitwidth: int) -> int:
    """Exclusive upper bound for real edge weights."""
    return 1 << (bitwidth - 2)


@dataclass(frozen=True)
class AppSpec:
    """A fully parameterized workload. Hashing its text names the job."""

    app: str
    params: tuple  # ((key, value), ...) in canonical order
    modulus: int = DEFAULT_MODULUS

    def param(self, key: str) -> int:
        for k, v in self.params:
            if k == key:
                return v
        raise KeyError(key)

    def to_text(self) -> str:
        lines = [f"app = {self.app}", f"modulus = {self.modulus}"]
        for k, v in self.params:
            lines.append(f"{k} = {v}")
        return "\n".join(lines) + "\n"


def make_spec(app: str, modulus: int = DEFAULT_MODULUS, **params) -> AppSpec:
    if app not in APP_NAMES:
        raise InvalidParameters(f"unknown app {app!r}")
    keys = _PARAM_KEYS[app]
    merged = dict(_PARAM_DEFAULTS[app])
    for k, v in params.items():
        if k not in keys:
            raise InvalidParameters(f"{app} does not take parameter {k!r}")
        merged[k] = int(v)
    spec = AppSpec(app=app, params=tuple((k, merged[k]) for k in keys), modulus=modulus)
    _validate_spec(spec)
    return spec


def _require_positive(spec: AppSpec, *keys: str):
    for k in keys:
        if spec.param(k) < 1:
            raise InvalidParameters(f"{spec.app}: {k} must be >= 1")


def _check_width(modulus: int, bits: int, what: str):
    # strict: every representable value must be a canonical residue
    if (1 << bits) > modulus:
        raise InvalidParameters(f"{what} needs {bits} bits, too wide for the field")


def _validate_spec(spec: AppSpec):
    if spec.modulus < 3:
        raise InvalidParameters("modulus too small")
    if spec.app == "matmul":
        _require_positive(spec, "n")
    elif spec.app == "image_match":
        _require_positive(
            spec, "height", "width", "kernel_height", "kernel_width", "bitwidth"
        )
        if spec.param("kernel_height") > spec.param("height") or spec.param(
            "kernel_width"
        ) > spec.param("width"):
            raise KernelLargerThanImage(
                "kernel does not fit inside the image"
            )
        _check_width(spec.modulus, score_width(spec) + 1, "match score comparison")
    elif spec.app == "multipoly":
        _require_positive(spec, "vars", "deg")
    elif spec.app == "floyd_warshall":
        _require_positive(spec, "n")
        if spec.param("bitwidth") < 3:
            raise InvalidParameters("floyd_warshall: bitwidth must be >= 3")
        _check_width(spec.modulus, spec.param("bitwidth") + 1, "distance comparison")


def score_width(spec: AppSpec) -> int:
    """Bits needed for any SSD score: K * (2^b - 1)^2 < 2^width."""
    b = spec.param("bitwidth")
    k = spec.param("kernel_height") * spec.param("kernel_width")
    return 2 * b + ceil_log2(k)


# -- io shapes ------------------------------------------------------------------


def io_shape(spec: AppSpec) -> tuple[int, int, int]:
    """(public inputs, public outputs, private inputs) for the workload."""
    if spec.app == "matmul":
        n = spec.param("n")
        return 2 * n * n, n * n, 0
    if spec.app == "image_match":
        kh, kw = spec.param("kernel_height"), spec.param("kernel_width")
        h, w = spec.param("height"), spec.param("width")
        return kh * kw, 3, h * w
    if spec.app == "multipoly":
        nvars, deg = spec.param("vars"), spec.param("deg")
        return (deg + 1) ** nvars + nvars, 1, 0
    if spec.app == "floyd_warshall":
        n = spec.param("n")
        return n * n, n * n, 0
    raise InvalidParameters(f"unknown app {spec.app!r}")


# -- circuit builders -----------------------------------------------------------


def build_matmul(n: int, modulus: int = DEFAULT_MODULUS) -> ArithmeticCircuit:
    """C = A * B over the field; all three matrices are public, row-major."""
    b = CircuitBuilder(
        num_public_inputs=2 * n * n,
        num_public_outputs=n * n,
        num_private_inputs=0,
        modulus=modulus,
    )
    a_wire = lambda i, k: b.public_input(i * n + k)
    b_wire = lambda k, j: b.public_input(n * n + k * n + j)
    for i in range(n):
        for j in range(n):
            terms = {}
            for k in range(n):
                t = b.mul(a_wire(i, k), b_wire(k, j))
                terms[t] = 1
            # the sum folds into the binding row, no add gates needed
            b.bind_output(i * n + j, terms)
    return b.build()


def build_image_match(
    height: int,
    width: int,
    kernel_height: int,
    kernel_width: int,
    bitwidth: int,
    modulus: int = DEFAULT_MODULUS,
) -> ArithmeticCircuit:
    """Best SSD match of a public kernel inside a private image.

    Outputs (row, col, score) of the first minimal window in row-major
    scan order: later windows replace the running best only on a strictly
    smaller score. Pixels are private, so the circuit range-checks each one;
    kernel values are public and validated outside.
    """
    spec = make_spec(
        "image_match",
        modulus=modulus,
        height=height,
        width=width,
        kernel_height=kernel_height,
        kernel_width=kernel_width,
        bitwidth=bitwidth,
    )
    sw = score_width(spec)
    b = CircuitBuilder(
        num_public_inputs=kernel_height * kernel_width,
        num_public_outputs=3,
        num_private_inputs=height * width,
        modulus=modulus,
    )
    ker = [b.public_input(i) for i in range(kernel_height * kernel_width)]
    pix = [b.private_input(i) for i in range(height * width)]
    for wire in pix:
        bit_decompose(b, wire, bitwidth)

    scores = []
    positions = []
    for r in range(height - kernel_height + 1):
        for c in range(width - kernel_width + 1):
            squares = []
            for dr in range(kernel_height):
                for dc in range(kernel_width):
                    d = b.sub(pix[(r + dr) * width + (c + dc)], ker[dr * kernel_width + dc])
                    squares.append(b.mul(d, d))
            scores.append(b.sum_wires(squares))
            positions.append((r, c))

    best_score = scores[0]
    best_row = b.const(positions[0][0])
    best_col = b.const(positions[0][1])
    for i in range(1, len(scores)):
        lt = less_than(b, scores[i], best_score, sw)
        best_score = select(b, lt, scores[i], best_score)
        best_row = select(b, lt, b.const(positions[i][0]), best_row)
        best_col = select(b, lt, b.const(positions[i][1]), best_col)

    b.bind_output(0, best_row)
    b.bind_output(1, best_col)
    b.bind_output(2, best_score)
    return b.build()


def build_multipoly(
    nvars: int, deg: int, modulus: int = DEFAULT_MODULUS
) -> ArithmeticCircuit:
    """Evaluate a dense multivariate polynomial at a public point.

    Coefficient order: flat index sum(e_i * (deg+1)^(nvars-1-i)), so the
    first variable's exponent moves slowest. Lowering is nested Horner,
    one mul per step; the reference oracle deliberately evaluates the
    power-sum form instead.
    """
    ncoef = (deg + 1) ** nvars
    b = CircuitBuilder(
        num_public_inputs=ncoef + nvars,
        num_public_outputs=1,
        num_private_inputs=0,
        modulus=modulus,
    )
    xs = [b.public_input(ncoef + i) for i in range(nvars)]

    def eval_block(var: int, base: int) -> int:
        if var == nvars:
            return b.public_input(base)
        stride = (deg + 1) ** (nvars - var - 1)
        acc = eval_block(var + 1, base + deg * stride)
        for e in range(deg - 1, -1, -1):
            acc = b.add(b.mul(acc, xs[var]), eval_block(var + 1, base + e * stride))
        return acc

    b.bind_output(0, eval_block(0, 0))
    return b.build()


def build_floyd_warshall(
    n: int, bitwidth: int = 16, modulus: int = DEFAULT_MODULUS
) -> ArithmeticCircuit:
    """All-pairs shortest distances, in-place relaxation, INF sentinel.

    Distances never grow past their initial values, so every cell stays
    <= INF = 2^(b-1)-1 and each candidate sum fits in b bits, which is
    exactly what the min gadget needs.
    """
    b = CircuitBuilder(
        num_public_inputs=n * n,
        num_public_outputs=n * n,
        num_private_inputs=0,
        modulus=modulus,
    )
    d = [[b.public_input(i * n + j) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                through = b.add(d[i][k], d[k][j])
                d[i][j], _ = min_of(b, d[i][j], through, bitwidth)
    for i in range(n):
        for j in range(n):
            b.bind_output(i * n + j, d[i][j])
    return b.build()


@functools.lru_cache(maxsize=32)
def build_circuit(spec: AppSpec) -> ArithmeticCircuit:
    if spec.app == "matmul":
        return build_matmul(spec.param("n"), spec.modulus)
    if spec.app == "image_match":
        return build_image_match(
            spec.param("height"),
            spec.param("width"),
            spec.param("kernel_height"),
            spec.param("kernel_width"),
            spec.param("bitwidth"),
            spec.modulus,
        )
    if spec.app == "multipoly":
        return build_multipoly(spec.param("vars"), spec.param("deg"), spec.modulus)
    if spec.app == "floyd_warshall":
        return build_floyd_warshall(
            spec.param("n"), spec.param("bitwidth"), spec.modulus
        )
    raise InvalidParameters(f"unknown app {spec.app!r}")


# -- native references ----------------------------------------------------------


def _ref_matmul(spec: AppSpec, pub: list[int]) -> list[int]:
    n, p = spec.param("n"), spec.modulus
    a, bm = pub[: n * n], pub[n * n :]
    out = []
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc += a[i * n + k] * bm[k * n + j]
            out.append(acc % p)
    return out


def _ref_image_match(spec: AppSpec, pub: list[int], priv: list[int]) -> list[int]:
    h, w = spec.param("height"), spec.param("width")
    kh, kw = spec.param("kernel_height"), spec.param("kernel_width")
    best = None
    for r in range(h - kh + 1):
        for c in range(w - kw + 1):
            ssd = 0
            for dr in range(kh):
                for dc in range(kw):
                    diff = priv[(r + dr) * w + (c + dc)] - pub[dr * kw + dc]
                    ssd += diff * diff
            if best is None or ssd < best[2]:
                best = (r, c, ssd)
    return [best[0], best[1], best[2]]


def _ref_multipoly(spec: AppSpec, pub: list[int]) -> list[int]:
    nvars, deg, p = spec.param("vars"), spec.param("deg"), spec.modulus
    ncoef = (deg + 1) ** nvars
    coeffs, point = pub[:ncoef], pub[ncoef:]
    total = 0
    for flat in range(ncoef):
        term = coeffs[flat]
        rest = flat
        for i in range(nvars):
            exp = rest // (deg + 1) ** (nvars - 1 - i) % (deg + 1)
            term = term * pow(point[i], exp, p) % p
        total += term
    return [total % p]


def _ref_floyd_warshall(spec: AppSpec, pub: list[int]) -> list[int]:
    n = spec.param("n")
    d = [list(pub[i * n : (i + 1) * n]) for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                through = d[i][k] + d[k][j]
                if through < d[i][j]:
                    d[i][j] = through
    return [d[i][j] for i in range(n) for j in range(n)]


def run_reference(spec: AppSpec, pub: list[int], priv: list[int]) -> list[int]:
    """Direct native computation of the app's public outputs."""
    validate_instance(spec, pub, priv)
    if spec.app == "matmul":
        return _ref_matmul(spec, pub)
    if spec.app == "image_match":
        return _ref_image_match(spec, pub, priv)
    if spec.app == "multipoly":
        return _ref_multipoly(spec, pub)
    if spec.app == "floyd_warshall":
        return _ref_floyd_warshall(spec, pub)
    raise InvalidParameters(f"unknown app {spec.app!r}")


def solve(spec: AppSpec, pub: list[int], priv: list[int]):
    """Evaluate the circuit; returns (witness, outputs)."""
    circuit = build_circuit(spec)
    witness = evaluate_circuit(circuit, pub, priv)
    outputs = [witness[circuit.public_output_wire(k)] for k in range(circuit.num_public_outputs)]
    return witness, outputs


# -- instance validation and generation -------------------------------------------


def validate_instance(spec: AppSpec, pub: list[int], priv: list[int]):
    n_pub, _, n_priv = io_shape(spec)
    if len(pub) != n_pub:
        raise InputArityMismatch(
            f"{spec.app} expects {n_pub} public inputs, got {len(pub)}"
        )
    if len(priv) != n_priv:
        raise InputArityMismatch(
            f"{spec.app} expects {n_priv} private inputs, got {len(priv)}"
        )
    for v in pub + priv:
        if not (0 <= v < spec.modulus):
            raise WeightOutOfRange(f"input value {v} is not a canonical residue")
    if spec.app == "image_match":
        bound = 1 << spec.param("bitwidth")
        for v in pub + priv:
            if v >= bound:
                raise WeightOutOfRange(f"sample value {v} exceeds {bound - 1}")
    elif spec.app == "floyd_warshall":
        inf = inf_sentinel(spec.param("bitwidth"))
        bound = max_weight(spec.param("bitwidth"))
        for v in pub:
            if v != inf and v >= bound:
                raise WeightOutOfRange(
                    f"edge weight {v} is neither < {bound} nor the INF sentinel {inf}"
                )


def random_instance(spec: AppSpec, rng: Drbg):
    """Deterministic honest instance for the given spec."""
    p = spec.modulus
    if spec.app == "matmul":
        n = spec.param("n")
        return [rng.next_int(p) for _ in range(2 * n * n)], []
    if spec.app == "image_match":
        bound = 1 << spec.param("bitwidth")
        n_pub, _, n_priv = io_shape(spec)
        pub = [rng.next_int(bound) for _ in range(n_pub)]
        priv = [rng.next_int(bound) for _ in range(n_priv)]
        return pub, priv
    if spec.app == "multipoly":
        n_pub, _, _ = io_shape(spec)
        return [rng.next_int(p) for _ in range(n_pub)], []
    if spec.app == "floyd_warshall":
        n = spec.param("n")
        inf = inf_sentinel(spec.param("bitwidth"))
        bound = max_weight(spec.param("bitwidth"))
        pub = []
        for i in range(n):
            for j in range(n):
                if i == j:
                    pub.append(0)
                elif rng.next_int(4) == 0:
                    pub.append(inf)
                else:
                    pub.append(rng.next_int(bound))
        return pub, []
    raise InvalidParameters(f"unknown app {spec.app!r}")


# -- instance files ----------------------------------------------------------------
#
# Plain "key = value" text. Scalars are decimal ints; vectors are one line of
# space-separated ints. The job harness hashes the public part verbatim, so
# serialization is canonical: fixed key order, single spaces, one trailing
# newline.

_VECTOR_KEYS = {
    "matmul": (("a", "pub"), ("b", "pub")),
    "image_match": (("kernel", "pub"), ("image", "priv")),
    "multipoly": (("coeffs", "pub"), ("point", "pub")),
    "floyd_warshall": (("weights", "pub"),),
}

# how many entries of the pub/priv vector each named section takes
def _vector_sizes(spec: AppSpec) -> dict:
    if spec.app == "matmul":
        n = spec.param("n")
        return {"a": n * n, "b": n * n}
    if spec.app == "image_match":
        return {
            "kernel": spec.param("kernel_height") * spec.param("kernel_width"),
            "image": spec.param("height") * spec.param("width"),
        }
    if spec.app == "multipoly":
        return {
            "coeffs": (spec.param("deg") + 1) ** spec.param("vars"),
            "point": spec.param("vars"),
        }
    if spec.app == "floyd_warshall":
        n = spec.param("n")
        return {"weights": n * n}
    raise InvalidParameters(f"unknown app {spec.app!r}")


def instance_to_text(spec: AppSpec, pub: list[int], priv=None) -> str:
    """Render an instance; priv=None omits the private section entirely."""
    out = [spec.to_text().rstrip("\n")]
    sizes = _vector_sizes(spec)
    pub_off = 0
    priv_off = 0
    for name, kind in _VECTOR_KEYS[spec.app]:
        size = sizes[name]
        if kind == "pub":
            vals = pub[pub_off : pub_off + size]
            pub_off += size
        else:
            if priv is None:
                continue
            vals = priv[priv_off : priv_off + size]
            priv_off += size
        out.append(f"{name} = " + " ".join(str(v) for v in vals))
    return "\n".join(out) + "\n"


def parse_instance_text(text: str):
    """Inverse of instance_to_text; returns (spec, pub, priv_or_None)."""
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise MalformedScript(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key in fields:
            raise MalformedScript(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value

    app = fields.pop("app", None)
    if app is None:
        raise MalformedScript("instance is missing the 'app' key")
    if app not in APP_NAMES:
        raise InvalidParameters(f"unknown app {app!r}")
    try:
        modulus = int(fields.pop("modulus", DEFAULT_MODULUS))
        params = {}
        for k in _PARAM_KEYS[app]:
            if k in fields:
                params[k] = int(fields.pop(k))
        spec = make_spec(app, modulus=modulus, **params)

        sizes = _vector_sizes(spec)
        pub: list[int] = []
        priv: list[int] = []
        saw_private = False
        has_private = False
        for name, kind in _VECTOR_KEYS[app]:
            if kind == "priv":
                has_private = True
            if name not in fields:
                if kind == "pub":
                    raise MalformedScript(f"instance is missing the {name!r} vector")
                continue
            vals = [int(tok) for tok in fields.pop(name).split()]
            if len(vals) != sizes[name]:
                raise InputArityMismatch(
                    f"{name!r} should have {sizes[name]} entries, got {len(vals)}"
                )
            if kind == "pub":
                pub.extend(vals)
            else:
                priv.extend(vals)
                saw_private = True
    except ValueError as exc:
        raise MalformedScript(f"bad integer in instance file: {exc}") from exc
    if fields:
        stray = sorted(fields)[0]
        raise MalformedScript(f"unknown key {stray!r} in instance file")
    if has_private and not saw_private:
        return spec, pub, None
    return spec, pub, priv


def public_instance_text(spec: AppSpec, pub: list[int]) -> str:
    """The document a job publishes and hashes: spec plus public inputs only."""
    return instance_to_text(spec, pub, priv=None)
