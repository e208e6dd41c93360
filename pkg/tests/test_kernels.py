"""Polynomial kernel correctness: frozen oracles, algebraic roundtrips, and
agreement between the pure-Python and compiled backends."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cicproof import kernels
from cicproof.field import DEFAULT_MODULUS
from cicproof.kernels import available_backends, pure

P = DEFAULT_MODULUS
Q = 97  # small field for hand-checkable cases

coeff_lists = st.lists(st.integers(min_value=0, max_value=P - 1), min_size=1, max_size=24)


# -- frozen oracle values (computed by hand, small field) -------------------------


def test_poly_mul_frozen():
    # (1 + 2x)(3 + 4x) = 3 + 10x + 8x^2
    assert kernels.poly_mul([1, 2], [3, 4], Q) == [3, 10, 8]


def test_poly_divmod_frozen():
    # x^2 - 5x + 6 = (x - 2)(x - 3)
    quot, rem = kernels.poly_divmod([6, Q - 5, 1], [Q - 2, 1], Q)
    assert quot == [Q - 3, 1]
    assert all(c == 0 for c in rem)


def test_zpoly_frozen():
    # roots {2, 3}: x^2 - 5x + 6
    assert kernels.zpoly([2, 3], Q) == [6, Q - 5, 1]


def test_interpolate_frozen():
    # (1,1) (2,4) (3,9) is x^2
    assert kernels.interpolate([1, 2, 3], [1, 4, 9], Q) == [0, 0, 1]


def test_interpolate_consecutive_frozen():
    assert kernels.interpolate_consecutive([1, 4, 9], Q) == [0, 0, 1]
    assert kernels.interpolate_consecutive([5], Q) == [5]


def test_poly_eval_frozen():
    assert kernels.poly_eval([6, Q - 5, 1], 2, Q) == 0
    assert kernels.poly_eval([6, Q - 5, 1], 1, Q) == 2
    assert kernels.poly_eval([], 5, Q) == 0


# -- algebraic roundtrips ---------------------------------------------------------


def _trim(coeffs):
    """Kernels expect divisors without trailing zero coefficients."""
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


@given(a=coeff_lists, b=coeff_lists)
def test_mul_then_divmod_roundtrip(a, b):
    b = _trim(b)
    if not b:
        return
    prod = kernels.poly_mul(a, b, P)
    quot, rem = kernels.poly_divmod(prod, b, P)
    assert all(c == 0 for c in rem)
    # quot * b == prod again
    back = kernels.poly_mul(quot, b, P)
    back += [0] * (len(prod) - len(back))
    assert back[: len(prod)] == list(prod)


@given(a=coeff_lists, b=coeff_lists)
def test_divmod_reconstruction(a, b):
    b = _trim(b)
    if not b:
        return
    quot, rem = kernels.poly_divmod(a, b, P)
    back = kernels.poly_mul(quot, b, P)
    back += [0] * max(0, len(a) - len(back))
    rem = list(rem) + [0] * (len(back) - len(rem))
    recon = [(x + y) % P for x, y in zip(back, rem)]
    recon += [0] * (len(a) - len(recon))
    assert recon[: len(a)] == [c % P for c in a]


@settings(max_examples=40)
@given(roots=st.lists(st.integers(min_value=0, max_value=P - 1), max_size=12))
def test_zpoly_vanishes_exactly_on_roots(roots):
    z = kernels.zpoly(roots, P)
    assert len(z) == len(roots) + 1
    for r in roots:
        assert kernels.poly_eval(z, r, P) == 0
    off = 0
    while off in roots:
        off += 1
    assert kernels.poly_eval(z, off, P) != 0


@settings(max_examples=40)
@given(ys=st.lists(st.integers(min_value=0, max_value=P - 1), min_size=1, max_size=20))
def test_interpolate_consecutive_hits_every_point(ys):
    coeffs = kernels.interpolate_consecutive(ys, P)
    assert len(coeffs) == len(ys)
    for i, y in enumerate(ys, start=1):
        assert kernels.poly_eval(coeffs, i, P) == y


@settings(max_examples=40)
@given(ys=st.lists(st.integers(min_value=0, max_value=P - 1), min_size=1, max_size=16))
def test_general_interpolate_agrees_with_consecutive_on_the_grid(ys):
    xs = list(range(1, len(ys) + 1))
    assert kernels.interpolate(xs, ys, P) == kernels.interpolate_consecutive(ys, P)


@settings(max_examples=25)
@given(
    pts=st.dictionaries(
        st.integers(min_value=0, max_value=P - 1),
        st.integers(min_value=0, max_value=P - 1),
        min_size=1,
        max_size=10,
    )
)
def test_interpolate_arbitrary_points(pts):
    xs, ys = list(pts.keys()), list(pts.values())
    coeffs = kernels.interpolate(xs, ys, P)
    for x, y in zip(xs, ys):
        assert kernels.poly_eval(coeffs, x, P) == y


# -- backend selection and parity ---------------------------------------------------


def test_compiled_backend_is_active_by_default():
    # the build installs the extension; if this fails the wheel is broken
    assert "compiled" in available_backends()
    assert kernels.BACKEND == "compiled"


@settings(max_examples=30)
@given(a=coeff_lists, b=coeff_lists)
def test_backend_parity_mul_divmod(a, b):
    backends = available_backends()
    if "compiled" not in backends:
        pytest.skip("pure-only install")
    comp = backends["compiled"]
    assert list(comp.poly_mul(a, b, P)) == list(pure.poly_mul(a, b, P))
    b = _trim(b)
    if b:
        qc, rc = comp.poly_divmod(a, b, P)
        qp, rp = pure.poly_divmod(a, b, P)
        assert list(qc) == list(qp) and list(rc) == list(rp)


@settings(max_examples=30)
@given(ys=st.lists(st.integers(min_value=0, max_value=P - 1), min_size=1, max_size=20))
def test_backend_parity_interpolation(ys):
    backends = available_backends()
    if "compiled" not in backends:
        pytest.skip("pure-only install")
    comp = backends["compiled"]
    assert comp.interpolate_consecutive(ys, P) == pure.interpolate_consecutive(ys, P)
    xs = list(range(2, 2 + len(ys)))
    assert comp.interpolate(xs, ys, P) == pure.interpolate(xs, ys, P)


def test_wide_modulus_falls_back_to_pure():
    """Moduli at or past 64 bits route to the pure kernels transparently."""
    wide = 2**89 - 1  # Mersenne prime, too wide for the u128 fast path
    got = kernels.poly_mul([wide - 1, wide - 1], [wide - 1], wide)
    assert got == pure.poly_mul([wide - 1, wide - 1], [wide - 1], wide)
    ys = [123456789 * (i + 1) for i in range(6)]
    assert kernels.interpolate_consecutive(ys, wide) == pure.interpolate_consecutive(ys, wide)
