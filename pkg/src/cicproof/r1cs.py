"""Rank-1 constraint systems and circuit lowering.

Each constraint is <A,s> * <B,s> = <C,s> with sparse rows {wire: coeff}.
Lowering folds add/cmul gates into the linear combinations of the rows that
reference them, so constraints come only from mul gates, assert rows, and
public output bindings — in that order.
"""

from __future__ import annotations

import heapq

from .circuit import ArithmeticCircuit, Gate, Witness, validate_circuit
from .errors import LengthMismatch

Row = dict  # {wire: coeff}, canonical residues, zero coeffs dropped


class ConstraintSystem:
    def __init__(
        self,
        *,
        modulus: int,
        wire_count: int,
        num_public_inputs: int,
        num_public_outputs: int,
        constraints: list[tuple[Row, Row, Row]],
    ):
        self.modulus = modulus
        self.wire_count = wire_count
        self.num_public_inputs = num_public_inputs
        self.num_public_outputs = num_public_outputs
        self.constraints = constraints

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    @property
    def num_public_io(self) -> int:
        return self.num_public_inputs + self.num_public_outputs

    def public_io_range(self) -> range:
        return range(1, 1 + self.num_public_io)

    def public_io(self, witness) -> list[int]:
        vals = witness.values if isinstance(witness, Witness) else witness
        return [vals[w] for w in self.public_io_range()]

    def check(self, witness) -> bool:
        """True iff every constraint holds for the witness."""
        vals = witness.values if isinstance(witness, Witness) else list(witness)
        if len(vals) != self.wire_count:
            raise LengthMismatch(
                f"witness has {len(vals)} wires, system expects {self.wire_count}"
            )
        p = self.modulus
        for a, b, c in self.constraints:
            left = 0
            for w, k in a.items():
                left += vals[w] * k
            right = 0
            for w, k in b.items():
                right += vals[w] * k
            out = 0
            for w, k in c.items():
                out += vals[w] * k
            if (left % p) * (right % p) % p != out % p:
                return False
        return True

    def first_failing(self, witness) -> int | None:
        """Index of the first violated constraint, or None. Debug aid."""
        vals = witness.values if isinstance(witness, Witness) else list(witness)
        p = self.modulus
        for idx, (a, b, c) in enumerate(self.constraints):
            left = sum(vals[w] * k for w, k in a.items()) % p
            right = sum(vals[w] * k for w, k in b.items()) % p
            out = sum(vals[w] * k for w, k in c.items()) % p
            if left * right % p != out:
                return idx
        return None

    def dump(self) -> str:
        """Line-oriented debug listing: sorted `wire:coeff` pairs for A | B | C."""
        lines = [
            f"# wires={self.wire_count} constraints={self.num_constraints} "
            f"public_inputs={self.num_public_inputs} public_outputs={self.num_public_outputs}"
        ]
        for a, b, c in self.constraints:
            lines.append(" | ".join(_dump_side(s) for s in (a, b, c)))
        return "\n".join(lines) + "\n"


def _dump_side(row: Row) -> str:
    if not row:
        return "-"
    return " ".join(f"{w}:{row[w]}" for w in sorted(row))


def _folded_gates(circuit: ArithmeticCircuit) -> dict[int, Gate]:
    """Map from wire to the add/cmul gate producing it; other wires are base."""
    folded = {}
    for node in circuit.nodes:
        if isinstance(node, Gate) and node.kind != "mul":
            folded[node.out] = node
    return folded


def _expand(lc: Row, folded: dict[int, Gate], p: int) -> Row:
    """Rewrite a lincomb over arbitrary wires as one over base wires only.

    Wires are processed in descending index order so each folded wire is
    expanded exactly once even in reconvergent (shared-subexpression) graphs.
    """
    acc: Row = {}
    pending: Row = {}
    heap: list[int] = []
    for w, c in lc.items():
        if w in folded:
            if w not in pending:
                heapq.heappush(heap, -w)
                pending[w] = c % p
            else:
                pending[w] = (pending[w] + c) % p
        else:
            acc[w] = (acc.get(w, 0) + c) % p
    while heap:
        w = -heapq.heappop(heap)
        c = pending.pop(w, 0)
        if c == 0:
            continue
        gate = folded[w]
        if gate.kind == "add":
            parts = ((gate.left, c), (gate.right, c))
        else:  # cmul
            parts = ((gate.left, gate.coeff * c % p),)
        for src, k in parts:
            if k == 0:
                continue
            if src in folded:
                if src not in pending:
                    heapq.heappush(heap, -src)
                    pending[src] = k
                else:
                    pending[src] = (pending[src] + k) % p
            else:
                acc[src] = (acc.get(src, 0) + k) % p
    return {w: c for w, c in acc.items() if c}


def to_r1cs(circuit: ArithmeticCircuit) -> ConstraintSystem:
    """Lower a circuit to constraints; validates structure first."""
    validate_circuit(circuit)
    p = circuit.modulus
    folded = _folded_gates(circuit)
    one_row = {0: 1}
    constraints: list[tuple[Row, Row, Row]] = []

    for node in circuit.nodes:
        if isinstance(node, Gate) and node.kind == "mul":
            a = _expand({node.left: 1}, folded, p)
            b = _expand({node.right: 1}, folded, p)
            constraints.append((a, b, {node.out: 1}))

    for a, b, c in circuit.assert_rows:
        constraints.append(
            (_expand(a, folded, p), _expand(b, folded, p), _expand(c, folded, p))
        )

    for k, binding in enumerate(circuit.output_bindings):
        a = _expand(binding, folded, p)
        constraints.append((a, dict(one_row), {circuit.public_output_wire(k): 1}))

    return ConstraintSystem(
        modulus=p,
        wire_count=circuit.wire_count,
        num_public_inputs=circuit.num_public_inputs,
        num_public_outputs=circuit.num_public_outputs,
        constraints=constraints,
    )
