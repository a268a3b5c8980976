"""Toy stream generator: a 24-bit LFSR with a nonlinear output filter.

The register is loaded with ``x(0) = K | IV << 16`` (16-bit key, 8-bit IV).
Each clock shifts in the feedback bit of x^24 + x^23 + x^22 + x^17 + 1 and
emits ``f(x) = x0 ^ x5 ^ (x3 & x11) ^ (x7 & x13 & x19) ^ (x9 & x21) ^ x23``.
With ``K = 0`` and ``IV = 0`` the register stays zero and the keystream is
the all-zero vector.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..field import GF2
from ..lrs import BlackBoxMap

STATE_BITS = 24
KEY_BITS = 16
IV_BITS = 8
TAPS = (23, 22, 21, 16)  # zero-based positions of x^24, x^23, x^22, x^17
_MASK = (1 << STATE_BITS) - 1


def clock(state: int) -> int:
    fb = 0
    for t in TAPS:
        fb ^= (state >> t) & 1
    return ((state << 1) | fb) & _MASK


def output_bit(state: int) -> int:
    b = lambda i: (state >> i) & 1
    return b(0) ^ b(5) ^ (b(3) & b(11)) ^ (b(7) & b(13) & b(19)) ^ (b(9) & b(21)) ^ b(23)


def keystream(key: int, iv: int, start: int, length: int) -> list[int]:
    """Output bits ``w(start) .. w(start + length - 1)``."""
    s = (key & ((1 << KEY_BITS) - 1)) | (iv & ((1 << IV_BITS) - 1)) << KEY_BITS
    for _ in range(start):
        s = clock(s)
    out = []
    for _ in range(length):
        out.append(output_bit(s))
        s = clock(s)
    return out


def pack(bits) -> int:
    return sum(b << i for i, b in enumerate(bits))


@dataclass(frozen=True)
class StreamInstance:
    iv: int
    start: int = 32
    length: int = KEY_BITS

    def window(self, key: int) -> int:
        return pack(keystream(key, self.iv, self.start, self.length))


def stream_map(inst: StreamInstance) -> BlackBoxMap:
    """``K -> (w(k0), ..., w(k0 + l - 1))``; square when the window equals the key length."""
    return BlackBoxMap.from_int_function(GF2(), KEY_BITS, inst.length, inst.window,
                                         f"stream[IV={inst.iv:#04x},k0={inst.start}]")
