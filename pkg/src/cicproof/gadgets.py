"""Constraint gadgets: bit decomposition, comparison, min, equality.

Every gadget takes the builder as its first argument and returns wire
handles. Range preconditions (values < 2^width) are the caller's duty for
honest inputs; dishonest values make the emitted constraints unsatisfiable
rather than silently wrong.
"""

from __future__ import annotations

from .circuit import WIRE_ONE, CircuitBuilder
from .errors import WidthTooLarge


def _width_capacity(modulus: int, bits: int):
    # every decomposed value 0..2^bits-1 must be a distinct residue
    if bits < 1 or (1 << bits) > modulus:
        raise WidthTooLarge(
            f"width {bits} does not fit a field of modulus {modulus}"
        )


def bit_decompose(b: CircuitBuilder, x, width: int) -> tuple[int, ...]:
    """Split x (wire or lincomb) into `width` boolean wires, little-endian.

    Emits one bit*(bit-1)=0 row per bit plus one recomposition row tying
    sum(bit_i * 2^i) back to x.
    """
    _width_capacity(b.modulus, width)
    p = b.modulus
    bits = b.hint_bits(x, width)
    for bit in bits:
        b.assert_row({bit: 1}, {bit: 1, WIRE_ONE: p - 1}, {})
    recomposed = {bit: (1 << i) % p for i, bit in enumerate(bits)}
    b.assert_eq(recomposed, x if isinstance(x, dict) else {x: 1})
    return bits


def less_than(b: CircuitBuilder, x: int, y: int, width: int) -> int:
    """Boolean wire: 1 iff value(x) < value(y); both must be < 2^width.

    Decomposes y - x - 1 + 2^width into width+1 bits; the top bit is the
    comparison result.
    """
    _width_capacity(b.modulus, width + 1)
    p = b.modulus
    shifted = {y: 1}
    shifted[x] = (shifted.get(x, 0) + p - 1) % p
    shifted[WIRE_ONE] = (shifted.get(WIRE_ONE, 0) + (1 << width) - 1) % p
    shifted = {w: c for w, c in shifted.items() if c}
    bits = bit_decompose(b, shifted, width + 1)
    return bits[width]


def min_of(b: CircuitBuilder, x: int, y: int, width: int) -> tuple[int, int]:
    """(min(x, y), lt) where lt = [x < y]; computes lt*x + (1-lt)*y.

    The comparison wire is returned too since selection cascades (argmin
    folds) reuse it.
    """
    lt = less_than(b, x, y, width)
    diff = b.sub(x, y)
    picked = b.mul(lt, diff)
    return b.add(y, picked), lt


def select(b: CircuitBuilder, flag: int, x: int, y: int) -> int:
    """flag*x + (1-flag)*y for a boolean flag wire."""
    diff = b.sub(x, y)
    picked = b.mul(flag, diff)
    return b.add(y, picked)


def is_zero(b: CircuitBuilder, x: int) -> int:
    """Boolean wire: 1 iff value(x) == 0.

    Uses the inverse-or-zero hint w; constrains out = 1 - x*w and x*out = 0.
    """
    w = b.hint_inv0({x: 1})
    t = b.mul(x, w)
    out = b.add(b.cmul(t, b.modulus - 1), WIRE_ONE)
    b.assert_row({x: 1}, {out: 1}, {})
    return out


def is_equal(b: CircuitBuilder, x: int, y: int) -> int:
    """Boolean wire: 1 iff value(x) == value(y)."""
    return is_zero(b, b.sub(x, y))
