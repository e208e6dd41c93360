"""Pure-Python polynomial kernels.

Reference implementations of the hot loops; the compiled module in
``_core.pyx`` mirrors these signatures exactly. Coefficient lists are plain
ints (canonical residues), lowest degree first. Callers are responsible for
input validation (distinct points, nonzero divisor leading coefficient) and
for trimming trailing zeros of results.

All algorithms are the O(n^2) schoolbook versions on purpose: evaluation-form
FFTs are out of scope, and n stays in the low tens of thousands.
"""

from __future__ import annotations


def poly_eval(coeffs: list[int], x: int, p: int) -> int:
    """Horner evaluation."""
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    """Schoolbook product; returns len(a)+len(b)-1 coefficients."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return out


def poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    """Long division. den must have a nonzero leading coefficient."""
    if len(num) < len(den):
        return [], list(num)
    rem = list(num)
    dlead_inv = pow(den[-1], p - 2, p)
    dlen = len(den)
    quot = [0] * (len(num) - dlen + 1)
    for shift in range(len(quot) - 1, -1, -1):
        factor = rem[shift + dlen - 1] * dlead_inv % p
        quot[shift] = factor
        if factor == 0:
            continue
        for i, dc in enumerate(den):
            rem[shift + i] = (rem[shift + i] - factor * dc) % p
    return quot, rem[: dlen - 1]


def zpoly(xs: list[int], p: int) -> list[int]:
    """Monic product of (x - xi) over all points."""
    root = [1]
    for x in xs:
        root.insert(0, 0)
        neg = (p - x % p) % p
        for j in range(len(root) - 1):
            root[j] = (root[j] + neg * root[j + 1]) % p
    return root


def _deflate(root: list[int], x: int, p: int) -> list[int]:
    """Exact synthetic division of root poly by (x - xi)."""
    out = [0] * (len(root) - 1)
    acc = 0
    for j in range(len(root) - 1, 0, -1):
        acc = (root[j] + acc * x) % p
        out[j - 1] = acc
    return out


def interpolate(xs: list[int], ys: list[int], p: int) -> list[int]:
    """Lagrange interpolation at arbitrary distinct points. O(n^2)."""
    n = len(xs)
    if n == 0:
        return []
    root = zpoly(xs, p)
    numerators = [_deflate(root, xs[i] % p, p) for i in range(n)]
    denoms = [poly_eval(numerators[i], xs[i] % p, p) for i in range(n)]
    # single-inversion batch invert
    prefix = [0] * n
    acc = 1
    for i, d in enumerate(denoms):
        prefix[i] = acc
        acc = acc * d % p
    inv = pow(acc, p - 2, p)
    out = [0] * n
    for i in range(n - 1, -1, -1):
        scale = ys[i] % p * (prefix[i] * inv % p) % p
        inv = inv * denoms[i] % p
        if scale == 0:
            continue
        numer = numerators[i]
        for j in range(n):
            out[j] = (out[j] + scale * numer[j]) % p
    return out


def interpolate_consecutive(ys: list[int], p: int) -> list[int]:
    """Interpolate through (1, ys[0]), (2, ys[1]), ..., (n, ys[n-1]).

    Newton forward differences: consecutive integer points make every
    divided-difference denominator a small integer, so the whole table
    costs one mulmod per cell.
    """
    n = len(ys)
    if n == 0:
        return []
    # inverses of 1..n-1 via the standard prime-field recurrence
    inv = [0] * max(n, 2)
    inv[1] = 1
    for k in range(2, n):
        inv[k] = (p - (p // k) * inv[p % k] % p) % p
    diff = [y % p for y in ys]
    for k in range(1, n):
        ik = inv[k]
        for i in range(n - 1, k - 1, -1):
            diff[i] = (diff[i] - diff[i - 1]) % p * ik % p
    # Newton basis -> monomial basis; nodes are 1..n
    out = [0] * n
    out[0] = diff[n - 1]
    size = 1
    for k in range(n - 2, -1, -1):
        node = (k + 1) % p
        carry = 0
        for j in range(size):
            term = out[j]
            out[j] = (carry - node * term) % p
            carry = term
        out[size] = carry
        size += 1
        out[0] = (out[0] + diff[k]) % p
    return out
