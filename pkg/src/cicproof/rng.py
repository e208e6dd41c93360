"""Deterministic random stream for trapdoor sampling and instance generation.

SHA-256 in counter mode: platform- and version-independent, so seeded runs
reproduce byte-identically everywhere. Not a secrecy primitive — the mock
proof backend is openly insecure — but determinism is load-bearing for the
scenario traces and the test suite.
"""

from __future__ import annotations

import hashlib


class Drbg:
    def __init__(self, seed, label: str = ""):
        if isinstance(seed, bytes):
            material = seed
        else:
            material = str(seed).encode()
        self._key = hashlib.sha256(label.encode() + b"\x00" + material).digest()
        self._counter = 0
        self._buffer = b""

    def _refill(self):
        block = hashlib.sha256(
            self._key + self._counter.to_bytes(8, "big")
        ).digest()
        self._counter += 1
        self._buffer += block

    def next_bytes(self, n: int) -> bytes:
        while len(self._buffer) < n:
            self._refill()
        out, self._buffer = self._buffer[:n], self._buffer[n:]
        return out

    def next_int(self, bound: int) -> int:
        """Uniform in [0, bound) by rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound == 1:
            return 0
        k = (bound - 1).bit_length()
        nbytes = (k + 7) // 8
        mask = (1 << k) - 1
        while True:
            v = int.from_bytes(self.next_bytes(nbytes), "big") & mask
            if v < bound:
                return v
