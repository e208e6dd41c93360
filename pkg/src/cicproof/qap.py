"""Quadratic arithmetic programs derived from constraint systems.

Constraint i is bound to evaluation point r_i = i+1 (the grid 1..m); the
target polynomial t(x) is the monic vanishing polynomial of the grid. For
each wire j three polynomials v_j, w_j, y_j interpolate the wire's column in
the A, B, C matrices; a witness s satisfies the system iff

    p(x) = (sum_j s_j v_j)(sum_j s_j w_j) - (sum_j s_j y_j)

is divisible by t(x).

Per-wire polynomials are dense once materialized, but materialization is
lazy: key generation only ever needs column evaluations at one secret point
(via the Lagrange basis), and the prover works in evaluation form, so
paper-scale systems never pay the O(wires * m^2) dense cost.
"""

from __future__ import annotations

from . import kernels
from .errors import EmptySystem, LengthMismatch, NotDivisible
from .field import batch_inverse
from .poly import Polynomial
from .r1cs import ConstraintSystem

V, W, Y = 0, 1, 2


class QuadraticProgram:
    def __init__(self, cs: ConstraintSystem):
        m = cs.num_constraints
        if m == 0:
            raise EmptySystem("cannot build a QAP from zero constraints")
        if m >= cs.modulus:
            raise EmptySystem("more constraints than field elements")
        self.modulus = cs.modulus
        self.num_constraints = m
        self.wire_count = cs.wire_count
        self.num_public_inputs = cs.num_public_inputs
        self.num_public_outputs = cs.num_public_outputs
        self.rows = cs.constraints
        # per-wire columns: wire -> [(constraint index, coeff), ...]
        cols: tuple[dict, dict, dict] = ({}, {}, {})
        for i, row in enumerate(cs.constraints):
            for side in (V, W, Y):
                for wire, coeff in row[side].items():
                    cols[side].setdefault(wire, []).append((i, coeff))
        self._cols = cols
        self._t = None
        self._dense = [None, None, None]
        self._fact = None

    # -- geometry ------------------------------------------------------------

    @property
    def num_public_io(self) -> int:
        return self.num_public_inputs + self.num_public_outputs

    def public_io_range(self) -> range:
        return range(1, 1 + self.num_public_io)

    @property
    def eval_points(self) -> range:
        return range(1, self.num_constraints + 1)

    @property
    def degree(self) -> int:
        """Degree of the target polynomial."""
        return self.num_constraints

    # -- target polynomial -------------------------------------------------------

    @property
    def target(self) -> Polynomial:
        if self._t is None:
            self._t = Polynomial(
                kernels.zpoly(list(self.eval_points), self.modulus), self.modulus
            )
        return self._t

    def target_at(self, x: int) -> int:
        """t(x) as a product scan; avoids materializing coefficients."""
        p = self.modulus
        acc = 1
        for r in self.eval_points:
            acc = acc * (x - r) % p
        return acc

    # -- per-wire polynomials ---------------------------------------------------------

    def _factorials(self):
        if self._fact is None:
            p = self.modulus
            m = self.num_constraints
            fact = [1] * (m + 1)
            for k in range(1, m + 1):
                fact[k] = fact[k - 1] * k % p
            self._fact = fact
        return self._fact

    def _derivative_at_point(self, i: int) -> int:
        """Z'(r_i) for the grid vanishing polynomial, via factorials."""
        p = self.modulus
        m = self.num_constraints
        fact = self._factorials()
        r = i + 1
        val = fact[r - 1] * fact[m - r] % p
        if (m - r) % 2:
            val = (p - val) % p
        return val

    def wire_poly(self, side: int, wire: int) -> Polynomial:
        """Dense interpolant of one wire's column; zero poly for untouched wires."""
        p = self.modulus
        m = self.num_constraints
        col = self._cols[side].get(wire)
        if not col:
            return Polynomial.zero(p)
        z = kernels.zpoly(list(self.eval_points), p)
        acc = [0] * m
        denoms = [self._derivative_at_point(i) for i, _ in col]
        inv_denoms = batch_inverse(denoms, p)
        for (i, coeff), inv_d in zip(col, inv_denoms):
            r = i + 1
            # synthetic division z / (x - r), exact because z(r) = 0
            scale = coeff * inv_d % p
            carry = 0
            for j in range(m, 0, -1):
                carry = (z[j] + carry * r) % p
                acc[j - 1] = (acc[j - 1] + scale * carry) % p
        return Polynomial(acc, p)

    def _dense_side(self, side: int) -> list[Polynomial]:
        if self._dense[side] is None:
            self._dense[side] = [
                self.wire_poly(side, j) for j in range(self.wire_count)
            ]
        return self._dense[side]

    @property
    def v_polys(self) -> list[Polynomial]:
        return self._dense_side(V)

    @property
    def w_polys(self) -> list[Polynomial]:
        return self._dense_side(W)

    @property
    def y_polys(self) -> list[Polynomial]:
        return self._dense_side(Y)

    # -- evaluation-form access (key generation fast path) ---------------------------

    def lagrange_basis_at(self, x: int) -> list[int] | None:
        """[L_i(x)] for the grid, or None when x lies on the grid itself."""
        p = self.modulus
        m = self.num_constraints
        x %= p
        if 1 <= x <= m:
            return None
        z_at = self.target_at(x)
        factors = [(x - r) % p for r in self.eval_points]
        inv_factors = batch_inverse(factors, p)
        out = [0] * m
        for i in range(m):
            d = self._derivative_at_point(i)
            out[i] = z_at * inv_factors[i] % p * pow(d, p - 2, p) % p
        return out

    def column_eval(self, side: int, wire: int, basis: list[int]) -> int:
        """<column, basis>: the wire polynomial evaluated at the basis point."""
        p = self.modulus
        col = self._cols[side].get(wire)
        if not col:
            return 0
        acc = 0
        for i, coeff in col:
            acc += coeff * basis[i]
        return acc % p


def r1cs_to_qap(cs: ConstraintSystem) -> QuadraticProgram:
    return QuadraticProgram(cs)


def _combined_values(qap: QuadraticProgram, values: list[int], side: int) -> list[int]:
    """Per-constraint <row_side, witness> — the combination in evaluation form."""
    p = qap.modulus
    out = [0] * qap.num_constraints
    for i, row in enumerate(qap.rows):
        acc = 0
        for wire, coeff in row[side].items():
            acc += values[wire] * coeff
        out[i] = acc % p
    return out


def compute_quotient(
    qap: QuadraticProgram, witness, _allow_remainder: bool = False
) -> Polynomial:
    """h = p / t for the witness; raises NotDivisible on nonzero remainder.

    _allow_remainder drops the divisibility check and returns the truncated
    quotient anyway. That produces an h a cheating prover might ship, which
    the soundness tests need; nothing outside tests should pass it.
    """
    values = witness.values if hasattr(witness, "values") else list(witness)
    if len(values) != qap.wire_count:
        raise LengthMismatch(
            f"witness has {len(values)} wires, QAP expects {qap.wire_count}"
        )
    p = qap.modulus
    v_vals = _combined_values(qap, values, V)
    w_vals = _combined_values(qap, values, W)
    y_vals = _combined_values(qap, values, Y)
    v_poly = kernels.interpolate_consecutive(v_vals, p)
    w_poly = kernels.interpolate_consecutive(w_vals, p)
    y_poly = kernels.interpolate_consecutive(y_vals, p)
    prod = kernels.poly_mul(v_poly, w_poly, p)
    if len(prod) < len(y_poly):
        prod += [0] * (len(y_poly) - len(prod))
    for i, c in enumerate(y_poly):
        prod[i] = (prod[i] - c) % p
    quot, rem = kernels.poly_divmod(prod, list(qap.target.coeffs), p)
    if any(rem) and not _allow_remainder:
        raise NotDivisible("witness does not satisfy the constraint system")
    return Polynomial(quot, p)
