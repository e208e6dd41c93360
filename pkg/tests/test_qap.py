"""Quadratic program construction: wire polynomials, target, quotient.

The two-constraint system used throughout is small enough to interpolate by
hand, so the expected polynomials here are frozen independent values, not
reruns of the code under test.
"""

import pytest

from cicproof.circuit import CircuitBuilder, evaluate_circuit
from cicproof.errors import EmptySystem, LengthMismatch, NotDivisible
from cicproof.field import DEFAULT_MODULUS
from cicproof.poly import Polynomial
from cicproof.qap import V, W, Y, compute_quotient, r1cs_to_qap
from cicproof.r1cs import ConstraintSystem, to_r1cs
from cicproof.rng import Drbg

P = DEFAULT_MODULUS
Q = 97


def _small_circuit():
    """out = 3 * ((x + y) * x) over F_97; lowers to exactly two constraints."""
    b = CircuitBuilder(num_public_inputs=2, num_public_outputs=1, num_private_inputs=0, modulus=Q)
    x, y = b.public_input(0), b.public_input(1)
    b.bind_output(0, b.cmul(b.mul(b.add(x, y), x), 3))
    return b.build()


def test_frozen_wire_polynomials():
    qap = r1cs_to_qap(to_r1cs(_small_circuit()))
    assert qap.num_constraints == 2
    assert list(qap.eval_points) == [1, 2]
    # Lagrange basis over {1,2}: L1 = 2 - x, L2 = x - 1 (mod 97)
    l1, l2 = (2, 96), (96, 1)
    assert qap.wire_poly(V, 1).coeffs == l1          # x appears in row 0 A-side
    assert qap.wire_poly(V, 2).coeffs == l1          # so does y
    assert qap.wire_poly(V, 5).coeffs == (94, 3)     # 3 * L2 (the cmul row)
    assert qap.wire_poly(W, 1).coeffs == l1
    assert qap.wire_poly(W, 0).coeffs == l2          # constant-one wire, row 1 B-side
    assert qap.wire_poly(Y, 5).coeffs == l1
    assert qap.wire_poly(Y, 3).coeffs == l2          # output wire
    # wires never touched by a side give the zero polynomial
    assert qap.wire_poly(V, 3).is_zero()
    assert qap.wire_poly(Y, 1).is_zero()


def test_target_polynomial_and_derivative_formula():
    qap = r1cs_to_qap(to_r1cs(_small_circuit()))
    # t = (x-1)(x-2) = 2 - 3x + x^2
    assert qap.target.coeffs == (2, 94, 1)
    assert qap.target_at(1) == 0 and qap.target_at(2) == 0
    assert qap.target_at(5) == (5 - 1) * (5 - 2) % Q
    # factorial-form derivative (0-based index) against the differentiated polynomial
    deriv = Polynomial([c * i % Q for i, c in enumerate(qap.target.coeffs)][1:], Q)
    for idx, r in enumerate(qap.eval_points):
        assert qap._derivative_at_point(idx) == int(deriv(r))


def test_dense_and_basis_routes_agree():
    circ = _small_circuit()
    qap = r1cs_to_qap(to_r1cs(circ))
    for s in (5, 17, 42, 96):
        basis = qap.lagrange_basis_at(s)
        assert basis is not None
        for side in (V, W, Y):
            for wire in range(qap.wire_count):
                assert qap.column_eval(side, wire, basis) == int(
                    qap.wire_poly(side, wire)(s)
                ), (side, wire, s)


def test_basis_is_none_exactly_on_the_grid():
    qap = r1cs_to_qap(to_r1cs(_small_circuit()))
    assert qap.lagrange_basis_at(1) is None
    assert qap.lagrange_basis_at(2) is None
    assert qap.lagrange_basis_at(3) is not None
    assert qap.lagrange_basis_at(0) is not None


def test_quotient_exists_iff_witness_satisfies():
    circ = _small_circuit()
    cs = to_r1cs(circ)
    qap = r1cs_to_qap(cs)
    w = evaluate_circuit(circ, [4, 9], [])
    assert cs.check(w)
    h = compute_quotient(qap, w)

    # dense-route dual check: sum_w w_i * poly_i per side, then divide
    p = Q
    combined = {}
    for side in (V, W, Y):
        acc = Polynomial([], p)
        for wire, val in enumerate(w.values):
            if val:
                acc = acc + qap.wire_poly(side, wire) * Polynomial([val], p)
        combined[side] = acc
    prod = combined[V] * combined[W] - combined[Y]
    quot, rem = divmod(prod, qap.target)
    assert rem.is_zero()
    assert quot == h

    bad = w.copy()
    bad.values[5] = (bad.values[5] + 1) % p
    assert not cs.check(bad)
    with pytest.raises(NotDivisible):
        compute_quotient(qap, bad)
    # the unchecked escape hatch still returns a polynomial
    forged = compute_quotient(qap, bad, _allow_remainder=True)
    assert forged != h


def test_quotient_random_circuits():
    rng = Drbg(5, "qap-quotient")
    b = CircuitBuilder(num_public_inputs=2, num_public_outputs=1, num_private_inputs=1, modulus=P)
    x, y = b.public_input(0), b.public_input(1)
    z = b.private_input(0)
    t = b.mul(b.add(x, y), b.mul(z, z))
    b.bind_output(0, b.add(t, b.cmul(x, 12)))
    circ = b.build()
    cs = to_r1cs(circ)
    qap = r1cs_to_qap(cs)
    for _ in range(20):
        w = evaluate_circuit(
            circ, [rng.next_int(P), rng.next_int(P)], [rng.next_int(P)]
        )
        h = compute_quotient(qap, w)
        assert h.degree is not None
        # degree bound: deg(VW - Y) <= 2(m-1), so deg(h) <= m - 2
        if h:
            assert h.degree <= qap.num_constraints - 2 or qap.num_constraints == 1


def test_witness_length_checked():
    qap = r1cs_to_qap(to_r1cs(_small_circuit()))
    with pytest.raises(LengthMismatch):
        compute_quotient(qap, [1, 2, 3])


def test_empty_system_rejected():
    cs = ConstraintSystem(
        modulus=Q,
        wire_count=3,
        num_public_inputs=1,
        num_public_outputs=1,
        constraints=[],
    )
    with pytest.raises(EmptySystem):
        r1cs_to_qap(cs)
