"""Arithmetic circuits: gate graph, builder, and witness evaluation.

Wire layout (fixed, documented):

    0                            constant-one wire
    1 .. PI                      public inputs
    PI+1 .. PI+PO                public outputs (sinks, assigned via bindings)
    PI+PO+1 .. PI+PO+PR          private inputs
    PI+PO+PR+1 ..                gate and hint outputs, in node order

Gates are add / mul / cmul(c); additions and constant multiplications are
free at the constraint level (they fold into linear combinations), so only
mul gates, explicit assert rows, and output bindings cost constraints.

Hints compute auxiliary witness values (bit decompositions, inverses) during
evaluation and emit no constraints themselves; the gadget that places a hint
is responsible for constraining its outputs.

Linear combinations are plain dicts {wire: coeff} with canonical residues.
"""

from __future__ import annotations

from typing import NamedTuple, Union

from .errors import InputArityMismatch, MalformedCircuit
from .field import DEFAULT_MODULUS, FieldElement

WIRE_ONE = 0


class Gate(NamedTuple):
    kind: str          # "add" | "mul" | "cmul"
    left: int
    right: int         # unused for cmul (set to -1)
    out: int
    coeff: int | None  # cmul only


class Hint(NamedTuple):
    kind: str               # "bits" | "inv0"
    arg: dict               # input linear combination {wire: coeff}
    outs: tuple[int, ...]
    width: int              # "bits" only; 0 otherwise


Node = Union[Gate, Hint]


class Witness:
    """Wire values, indexed by wire; values[0] is always 1."""

    __slots__ = ("values", "modulus")

    def __init__(self, values: list[int], modulus: int):
        self.values = values
        self.modulus = modulus

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def copy(self) -> "Witness":
        return Witness(list(self.values), self.modulus)

    def elements(self) -> list[FieldElement]:
        p = self.modulus
        return [FieldElement(v, p) for v in self.values]


class ArithmeticCircuit:
    """Frozen gate graph plus assert rows and output bindings."""

    def __init__(
        self,
        *,
        modulus: int,
        num_public_inputs: int,
        num_public_outputs: int,
        num_private_inputs: int,
        nodes: list[Node],
        assert_rows: list[tuple[dict, dict, dict]],
        output_bindings: list[dict],
        wire_count: int,
    ):
        self.modulus = modulus
        self.num_public_inputs = num_public_inputs
        self.num_public_outputs = num_public_outputs
        self.num_private_inputs = num_private_inputs
        self.nodes = tuple(nodes)
        self.assert_rows = tuple(assert_rows)
        self.output_bindings = tuple(output_bindings)
        self.wire_count = wire_count

    # -- wire geometry -----------------------------------------------------

    @property
    def num_public_io(self) -> int:
        return self.num_public_inputs + self.num_public_outputs

    def public_io_range(self) -> range:
        """Contiguous wire indices the verifier sees (inputs then outputs)."""
        return range(1, 1 + self.num_public_io)

    def public_input_wire(self, i: int) -> int:
        return 1 + i

    def public_output_wire(self, k: int) -> int:
        return 1 + self.num_public_inputs + k

    def private_input_wire(self, i: int) -> int:
        return 1 + self.num_public_io + i

    @property
    def gates(self) -> list[Gate]:
        return [n for n in self.nodes if isinstance(n, Gate)]

    @property
    def mul_count(self) -> int:
        return sum(1 for n in self.nodes if isinstance(n, Gate) and n.kind == "mul")

    def public_io(self, witness: Witness) -> list[int]:
        return [witness.values[w] for w in self.public_io_range()]


def evaluate_circuit(
    circuit: ArithmeticCircuit,
    public_inputs,
    private_inputs=(),
) -> Witness:
    """Execute the circuit and return the full wire assignment.

    Inputs may be ints or FieldElements. Gate equations hold over the result
    by construction; assert rows are only as true as the inputs are honest
    (range-violating inputs surface later as unsatisfiable constraints).
    """
    p = circuit.modulus

    def as_int(v):
        if isinstance(v, FieldElement):
            if v.modulus != p:
                raise InputArityMismatch("input from a different field")
            return v.value
        return v % p

    pub = [as_int(v) for v in public_inputs]
    priv = [as_int(v) for v in private_inputs]
    if len(pub) != circuit.num_public_inputs:
        raise InputArityMismatch(
            f"expected {circuit.num_public_inputs} public inputs, got {len(pub)}"
        )
    if len(priv) != circuit.num_private_inputs:
        raise InputArityMismatch(
            f"expected {circuit.num_private_inputs} private inputs, got {len(priv)}"
        )

    values = [0] * circuit.wire_count
    values[WIRE_ONE] = 1
    base = 1
    values[base : base + len(pub)] = pub
    priv_base = 1 + circuit.num_public_io
    values[priv_base : priv_base + len(priv)] = priv

    def eval_lincomb(lc: dict) -> int:
        acc = 0
        for w, c in lc.items():
            acc += values[w] * c
        return acc % p

    for node in circuit.nodes:
        if isinstance(node, Gate):
            if node.kind == "add":
                values[node.out] = (values[node.left] + values[node.right]) % p
            elif node.kind == "mul":
                values[node.out] = values[node.left] * values[node.right] % p
            else:  # cmul
                values[node.out] = values[node.left] * node.coeff % p
        else:  # Hint
            v = eval_lincomb(node.arg)
            if node.kind == "bits":
                # dishonest (out-of-range) values keep only their low bits;
                # the recomposition constraint then fails, which is the point
                for i, w in enumerate(node.outs):
                    values[w] = (v >> i) & 1
            elif node.kind == "inv0":
                values[node.outs[0]] = pow(v, p - 2, p) if v else 0
            else:
                raise MalformedCircuit(f"unknown hint kind {node.kind!r}")

    for k, binding in enumerate(circuit.output_bindings):
        values[circuit.public_output_wire(k)] = eval_lincomb(binding)

    return Witness(values, p)


class CircuitBuilder:
    """Incremental circuit construction; IO counts are declared up front."""

    def __init__(
        self,
        num_public_inputs: int,
        num_public_outputs: int,
        num_private_inputs: int = 0,
        modulus: int = DEFAULT_MODULUS,
    ):
        if min(num_public_inputs, num_public_outputs, num_private_inputs) < 0:
            raise MalformedCircuit("negative IO count")
        self.modulus = modulus
        self.num_public_inputs = num_public_inputs
        self.num_public_outputs = num_public_outputs
        self.num_private_inputs = num_private_inputs
        self._next = 1 + num_public_inputs + num_public_outputs + num_private_inputs
        self._out_lo = 1 + num_public_inputs
        self._out_hi = self._out_lo + num_public_outputs  # exclusive
        self._nodes: list[Node] = []
        self._asserts: list[tuple[dict, dict, dict]] = []
        self._bindings: dict[int, dict] = {}
        self._const_cache: dict[int, int] = {}
        self._built = False

    # -- wire handles ----------------------------------------------------------

    def one(self) -> int:
        return WIRE_ONE

    def public_input(self, i: int) -> int:
        if not 0 <= i < self.num_public_inputs:
            raise MalformedCircuit(f"public input index {i} out of range")
        return 1 + i

    def private_input(self, i: int) -> int:
        if not 0 <= i < self.num_private_inputs:
            raise MalformedCircuit(f"private input index {i} out of range")
        return 1 + self.num_public_inputs + self.num_public_outputs + i

    def _check_operand(self, w: int):
        if not 0 <= w < self._next:
            raise MalformedCircuit(f"wire {w} is not defined yet")
        if self._out_lo <= w < self._out_hi:
            raise MalformedCircuit("public output wires are sinks, not operands")

    def _fresh(self) -> int:
        w = self._next
        self._next += 1
        return w

    # -- gates --------------------------------------------------------------------

    def add(self, x: int, y: int) -> int:
        self._check_operand(x)
        self._check_operand(y)
        out = self._fresh()
        self._nodes.append(Gate("add", x, y, out, None))
        return out

    def mul(self, x: int, y: int) -> int:
        self._check_operand(x)
        self._check_operand(y)
        out = self._fresh()
        self._nodes.append(Gate("mul", x, y, out, None))
        return out

    def cmul(self, x: int, c) -> int:
        self._check_operand(x)
        c = int(c) % self.modulus
        out = self._fresh()
        self._nodes.append(Gate("cmul", x, -1, out, c))
        return out

    def const(self, c) -> int:
        """Wire carrying the constant c (one cmul gate per distinct value)."""
        c = int(c) % self.modulus
        w = self._const_cache.get(c)
        if w is None:
            w = self.cmul(WIRE_ONE, c)
            self._const_cache[c] = w
        return w

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.cmul(y, self.modulus - 1))

    def sum_wires(self, wires) -> int:
        """Fold a nonempty wire list into one wire with add gates."""
        wires = list(wires)
        if not wires:
            raise MalformedCircuit("sum of zero wires")
        acc = wires[0]
        self._check_operand(acc)
        for w in wires[1:]:
            acc = self.add(acc, w)
        return acc

    # -- hints -----------------------------------------------------------------------

    def _norm_lincomb(self, lc) -> dict:
        if isinstance(lc, int):
            lc = {lc: 1}
        p = self.modulus
        out = {}
        for w, c in lc.items():
            self._check_operand(w)
            c = int(c) % p
            if c:
                out[w] = c
        return out

    def hint_bits(self, lc, width: int) -> tuple[int, ...]:
        lc = self._norm_lincomb(lc)
        outs = tuple(self._fresh() for _ in range(width))
        self._nodes.append(Hint("bits", lc, outs, width))
        return outs

    def hint_inv0(self, lc) -> int:
        lc = self._norm_lincomb(lc)
        out = self._fresh()
        self._nodes.append(Hint("inv0", lc, (out,), 0))
        return out

    # -- constraints and outputs --------------------------------------------------------

    def assert_row(self, a, b, c):
        """Constrain <a,s> * <b,s> = <c,s>; each side is a lincomb or wire."""
        self._asserts.append(
            (self._norm_lincomb(a), self._norm_lincomb(b), self._norm_lincomb(c))
        )

    def assert_eq(self, lhs, rhs):
        """Constrain two linear combinations to be equal."""
        self.assert_row(lhs, {WIRE_ONE: 1}, rhs)

    def bind_output(self, k: int, value):
        """Tie public output k to a wire or linear combination."""
        if not 0 <= k < self.num_public_outputs:
            raise MalformedCircuit(f"output index {k} out of range")
        if k in self._bindings:
            raise MalformedCircuit(f"output {k} bound twice")
        self._bindings[k] = self._norm_lincomb(value)

    def build(self) -> ArithmeticCircuit:
        if self._built:
            raise MalformedCircuit("builder already consumed")
        missing = [k for k in range(self.num_public_outputs) if k not in self._bindings]
        if missing:
            raise MalformedCircuit(f"unbound public outputs: {missing}")
        self._built = True
        return ArithmeticCircuit(
            modulus=self.modulus,
            num_public_inputs=self.num_public_inputs,
            num_public_outputs=self.num_public_outputs,
            num_private_inputs=self.num_private_inputs,
            nodes=self._nodes,
            assert_rows=self._asserts,
            output_bindings=[self._bindings[k] for k in range(self.num_public_outputs)],
            wire_count=self._next,
        )


def validate_circuit(circuit: ArithmeticCircuit) -> None:
    """Structural checks; raises MalformedCircuit on the first violation."""
    first_node_wire = 1 + circuit.num_public_io + circuit.num_private_inputs
    out_lo = 1 + circuit.num_public_inputs
    out_hi = out_lo + circuit.num_public_outputs
    next_wire = first_node_wire

    def check_operand(w, defined_up_to):
        if not 0 <= w < defined_up_to:
            raise MalformedCircuit(f"operand wire {w} not defined at use")
        if out_lo <= w < out_hi:
            raise MalformedCircuit("public output wire used as an operand")

    for node in circuit.nodes:
        if isinstance(node, Gate):
            outs = (node.out,)
            check_operand(node.left, next_wire)
            if node.kind == "add" or node.kind == "mul":
                check_operand(node.right, next_wire)
            elif node.kind == "cmul":
                if node.coeff is None:
                    raise MalformedCircuit("cmul gate without a coefficient")
            else:
                raise MalformedCircuit(f"unknown gate kind {node.kind!r}")
        else:
            outs = node.outs
            for w in node.arg:
                check_operand(w, next_wire)
        for w in outs:
            if w != next_wire:
                raise MalformedCircuit("node outputs must be fresh and sequential")
            next_wire += 1

    if next_wire != circuit.wire_count:
        raise MalformedCircuit("wire_count disagrees with the node list")
    if len(circuit.output_bindings) != circuit.num_public_outputs:
        raise MalformedCircuit("output bindings missing")
    for row in circuit.assert_rows:
        for side in row:
            for w in side:
                check_operand(w, next_wire)
    for binding in circuit.output_bindings:
        for w in binding:
            check_operand(w, next_wire)
