"""Prime-field scalar arithmetic.

Elements are canonical residues in [0, p). The default modulus is the
Mersenne prime 2^61 - 1, chosen so products of residues fit comfortably in
128-bit intermediates inside the compiled kernels. Any odd prime works; the
modulus travels with each element so cross-field mixing is caught early.
"""

from __future__ import annotations

from .errors import InversionOfZero, ModulusMismatch

DEFAULT_MODULUS = (1 << 61) - 1


class FieldElement:
    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int = DEFAULT_MODULUS):
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "value", value % modulus)

    def __setattr__(self, name, val):  # immutable after construction
        raise AttributeError("FieldElement is immutable")

    # -- coercion helpers --------------------------------------------------

    def _lift(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ModulusMismatch(
                    f"operands over different fields: {self.modulus} vs {other.modulus}"
                )
            return other
        if isinstance(other, int):
            return FieldElement(other, self.modulus)
        return NotImplemented

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(other.value - self.value, self.modulus)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def inv(self) -> "FieldElement":
        if self.value == 0:
            raise InversionOfZero("zero has no multiplicative inverse")
        # Fermat: a^(p-2) mod p. Built-in pow is modular square-and-multiply.
        return FieldElement(pow(self.value, self.modulus - 2, self.modulus), self.modulus)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inv() ** (-exponent)
        return FieldElement(pow(self.value, exponent, self.modulus), self.modulus)

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.modulus
        if isinstance(other, FieldElement):
            return self.modulus == other.modulus and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement({self.value} mod {self.modulus})"


def batch_inverse(values: list[int], p: int) -> list[int]:
    """Invert many residues with a single modular inversion (Montgomery trick).

    Raises InversionOfZero if any input is 0 mod p.
    """
    n = len(values)
    if n == 0:
        return []
    prefix = [0] * n
    acc = 1
    for i, v in enumerate(values):
        v %= p
        if v == 0:
            raise InversionOfZero(f"batch contains zero at index {i}")
        prefix[i] = acc
        acc = acc * v % p
    inv_acc = pow(acc, p - 2, p)
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = prefix[i] * inv_acc % p
        inv_acc = inv_acc * (values[i] % p) % p
    return out


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic for n < 3.3 * 10^24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
