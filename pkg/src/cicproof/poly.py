"""Dense univariate polynomials over a prime field.

Coefficients are stored lowest degree first with trailing zeros trimmed; the
zero polynomial is the empty tuple and its degree is the -inf sentinel.
Multiplication, division and interpolation dispatch to the kernel backend.
"""

from __future__ import annotations

from . import kernels
from .errors import (
    DivisionByZeroPolynomial,
    DuplicateEvaluationPoint,
    ModulusMismatch,
)
from .field import DEFAULT_MODULUS, FieldElement

NEG_INFINITY = float("-inf")


def _trim(coeffs: list[int]) -> list[int]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


class Polynomial:
    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs, modulus: int | None = None):
        """coeffs: ints or FieldElements, lowest degree first."""
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if modulus is None:
                    modulus = c.modulus
                elif c.modulus != modulus:
                    raise ModulusMismatch("mixed-field coefficients")
                vals.append(c.value)
            else:
                vals.append(c)
        if modulus is None:
            modulus = DEFAULT_MODULUS
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(_trim([v % modulus for v in vals])))

    def __setattr__(self, name, val):
        raise AttributeError("Polynomial is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, modulus: int = DEFAULT_MODULUS) -> "Polynomial":
        return cls((), modulus)

    @classmethod
    def constant(cls, c, modulus: int = DEFAULT_MODULUS) -> "Polynomial":
        return cls((c,), modulus)

    # -- structure -------------------------------------------------------------

    @property
    def degree(self):
        """Degree as an int; -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff_elements(self) -> tuple[FieldElement, ...]:
        p = self.modulus
        return tuple(FieldElement(c, p) for c in self.coeffs)

    def _same_field(self, other: "Polynomial"):
        if self.modulus != other.modulus:
            raise ModulusMismatch(
                f"polynomials over different fields: {self.modulus} vs {other.modulus}"
            )

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._same_field(other)
        p = self.modulus
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        return Polynomial(out, p)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._same_field(other)
        p = self.modulus
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] = (out[i] - c) % p
        return Polynomial(out, p)

    def __neg__(self) -> "Polynomial":
        p = self.modulus
        return Polynomial([(-c) % p for c in self.coeffs], p)

    def __mul__(self, other):
        p = self.modulus
        if isinstance(other, Polynomial):
            self._same_field(other)
            return Polynomial(
                kernels.poly_mul(list(self.coeffs), list(other.coeffs), p), p
            )
        if isinstance(other, (int, FieldElement)):
            k = other.value if isinstance(other, FieldElement) else other % p
            return Polynomial([c * k % p for c in self.coeffs], p)
        return NotImplemented

    __rmul__ = __mul__

    def __divmod__(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._same_field(other)
        if other.is_zero():
            raise DivisionByZeroPolynomial("division by the zero polynomial")
        p = self.modulus
        q, r = kernels.poly_divmod(list(self.coeffs), list(other.coeffs), p)
        return Polynomial(q, p), Polynomial(r, p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- evaluation ----------------------------------------------------------------

    def __call__(self, x) -> FieldElement:
        p = self.modulus
        if isinstance(x, FieldElement):
            if x.modulus != p:
                raise ModulusMismatch("evaluation point from a different field")
            x = x.value
        return FieldElement(kernels.poly_eval(list(self.coeffs), x % p, p), p)

    # -- comparisons -------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.modulus == other.modulus and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.modulus))

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "Polynomial(" + " + ".join(terms) + ")"


def interpolate(points, modulus: int = DEFAULT_MODULUS) -> Polynomial:
    """Unique polynomial of degree < n through n (x, y) points.

    Points may be ints or FieldElements; x values must be distinct mod p.
    """
    xs, ys = [], []
    for x, y in points:
        xs.append(x.value if isinstance(x, FieldElement) else x % modulus)
        ys.append(y.value if isinstance(y, FieldElement) else y % modulus)
    if len(set(xs)) != len(xs):
        raise DuplicateEvaluationPoint("interpolation points share an x value")
    return Polynomial(kernels.interpolate(xs, ys, modulus), modulus)


def interpolate_consecutive(values, modulus: int = DEFAULT_MODULUS) -> Polynomial:
    """Interpolate through (1, v0), (2, v1), ... — the QAP evaluation grid."""
    ys = [v.value if isinstance(v, FieldElement) else v % modulus for v in values]
    return Polynomial(kernels.interpolate_consecutive(ys, modulus), modulus)


def vanishing(xs, modulus: int = DEFAULT_MODULUS) -> Polynomial:
    """Monic product of (x - xi); the QAP target polynomial for xs = 1..m."""
    pts = [x.value if isinstance(x, FieldElement) else x % modulus for x in xs]
    if len(set(pts)) != len(pts):
        raise DuplicateEvaluationPoint("vanishing polynomial roots repeat")
    return Polynomial(kernels.zpoly(pts, modulus), modulus)
