"""Bilinear group abstraction with a mock backend.

The mock backend is NOT cryptographically secure and says so: a group
element is just its discrete logarithm (the trapdoor exponent) tagged with a
group id, and the pairing multiplies exponents. Every verification equation
therefore holds or fails exactly as it would over a real pairing group of
prime order q, which is what the algebraic test surface needs. Swapping in a
real curve means implementing another backend with the same five operations.

The group order q equals the field modulus p, so QAP scalars act on
exponents without conversion.

Instances count their operations (group additions, scalar multiplications,
pairings); tests use the counters to pin verification cost.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import ModulusMismatch

G1, G2, GT = 1, 2, 3
_TAG_NAMES = {G1: "G1", G2: "G2", GT: "GT"}

MOCK_BACKEND_ID = 0x01


class GroupElement(NamedTuple):
    group: int  # G1 | G2 | GT
    exponent: int

    def __repr__(self):
        return f"<{_TAG_NAMES.get(self.group, '?')} exp={self.exponent}>"


class MockPairing:
    """Symmetric bilinear group in exponent representation. INSECURE by design."""

    backend_id = MOCK_BACKEND_ID

    def __init__(self, order: int):
        if order < 2:
            raise ValueError("group order must be >= 2")
        self.order = order
        self.element_bytes = max(8, (order.bit_length() + 7) // 8)
        self.counters = {"add": 0, "scalar_mul": 0, "pairing": 0}

    def reset_counters(self):
        for k in self.counters:
            self.counters[k] = 0

    # -- generators ------------------------------------------------------------

    def g1(self) -> GroupElement:
        return GroupElement(G1, 1)

    def g2(self) -> GroupElement:
        return GroupElement(G2, 1)

    def identity(self, group: int) -> GroupElement:
        return GroupElement(group, 0)

    # -- operations ---------------------------------------------------------------

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        """Group operation (written additively in the exponent)."""
        if a.group != b.group:
            raise ModulusMismatch(
                f"cannot combine {_TAG_NAMES[a.group]} with {_TAG_NAMES[b.group]}"
            )
        self.counters["add"] += 1
        return GroupElement(a.group, (a.exponent + b.exponent) % self.order)

    def scalar_mul(self, a: GroupElement, k: int) -> GroupElement:
        self.counters["scalar_mul"] += 1
        return GroupElement(a.group, a.exponent * k % self.order)

    def pairing(self, a: GroupElement, b: GroupElement) -> GroupElement:
        """e: G1 x G2 -> GT; the mock multiplies exponents."""
        if a.group != G1 or b.group != G2:
            raise ModulusMismatch("pairing expects (G1, G2) arguments")
        self.counters["pairing"] += 1
        return GroupElement(GT, a.exponent * b.exponent % self.order)

    # -- encoding -----------------------------------------------------------------

    def encode_element(self, e: GroupElement) -> bytes:
        return bytes([e.group]) + e.exponent.to_bytes(self.element_bytes, "big")

    def decode_element(self, blob: bytes) -> GroupElement:
        group = blob[0]
        if group not in (G1, G2, GT):
            raise ValueError(f"unknown group tag {group}")
        return GroupElement(group, int.from_bytes(blob[1:], "big"))


_BACKENDS = {MOCK_BACKEND_ID: MockPairing}


def backend_for_id(backend_id: int, order: int):
    cls = _BACKENDS.get(backend_id)
    if cls is None:
        raise ValueError(f"unknown pairing backend id {backend_id:#x}")
    return cls(order)
