"""Kernel backend selection.

The compiled extension (`_core`, Cython) is used when it imported cleanly and
the modulus fits 64 bits; otherwise the pure-Python mirror takes over. Set
CICPROOF_KERNELS=python or =compiled to force a backend (forcing compiled
raises at import if the extension is unavailable).
"""

from __future__ import annotations

import os

from . import pure

try:
    from . import _core
except ImportError:
    _core = None

_FORCED = os.environ.get("CICPROOF_KERNELS", "").strip().lower()
if _FORCED == "python":
    _impl = pure
elif _FORCED == "compiled":
    if _core is None:
        raise ImportError(
            "CICPROOF_KERNELS=compiled but the compiled kernel extension is missing; "
            "reinstall with a C compiler available"
        )
    _impl = _core
elif _FORCED:
    raise ImportError(f"unknown CICPROOF_KERNELS value: {_FORCED!r}")
else:
    _impl = _core if _core is not None else pure

BACKEND = "compiled" if _impl is not pure else "python"

_U64_LIMIT = 1 << 64


def _pick(p: int):
    # compiled kernels assume residues fit u64
    if _impl is not pure and p >= _U64_LIMIT:
        return pure
    return _impl


def poly_eval(coeffs, x, p):
    return _pick(p).poly_eval(coeffs, x, p)


def poly_mul(a, b, p):
    return _pick(p).poly_mul(a, b, p)


def poly_divmod(num, den, p):
    return _pick(p).poly_divmod(num, den, p)


def zpoly(xs, p):
    return _pick(p).zpoly(xs, p)


def interpolate(xs, ys, p):
    return _pick(p).interpolate(xs, ys, p)


def interpolate_consecutive(ys, p):
    return _pick(p).interpolate_consecutive(ys, p)


def available_backends() -> dict:
    """Importable kernel modules by name; used by the comparison benchmark."""
    found = {"python": pure}
    if _core is not None:
        found["compiled"] = _core
    return found
