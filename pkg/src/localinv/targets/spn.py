"""A 16-bit, 4-round substitution-permutation network.

Block and key are both 16 bits.  Each round XORs a round key, applies the
PRESENT 4-bit S-box to the four nibbles and (except in the last round)
permutes the bits; a final whitening key closes the cipher.  Round key ``r``
is the master key rotated left by ``5 r`` bits XOR a round constant.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..field import GF2
from ..lrs import BlackBoxMap

SBOX = (0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD, 0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2)
SBOX_INV = tuple(SBOX.index(i) for i in range(16))

# bit i moves to 4*i mod 15, bit 15 stays (the PRESENT wiring cut down to 16 bits)
PBOX = tuple((4 * i) % 15 if i != 15 else 15 for i in range(16))
PBOX_INV = tuple(PBOX.index(i) for i in range(16))

ROUNDS = 4
ROUND_CONSTANTS = (0x0000, 0x3A5C, 0x74B8, 0xE971, 0xD2E3)
MASK16 = 0xFFFF


def _rotl16(v: int, r: int) -> int:
    r %= 16
    return ((v << r) | (v >> (16 - r))) & MASK16


def round_keys(key: int) -> list[int]:
    return [_rotl16(key, 5 * r) ^ ROUND_CONSTANTS[r] for r in range(ROUNDS + 1)]


def _sub(v: int, box) -> int:
    return (box[v & 0xF] | box[(v >> 4) & 0xF] << 4
            | box[(v >> 8) & 0xF] << 8 | box[(v >> 12) & 0xF] << 12)


def _perm(v: int, table) -> int:
    out = 0
    for i in range(16):
        if (v >> i) & 1:
            out |= 1 << table[i]
    return out


def encrypt(key: int, block: int) -> int:
    ks = round_keys(key)
    s = block
    for r in range(ROUNDS):
        s = _sub(s ^ ks[r], SBOX)
        if r < ROUNDS - 1:
            s = _perm(s, PBOX)
    return s ^ ks[ROUNDS]


def decrypt(key: int, block: int) -> int:
    ks = round_keys(key)
    s = block ^ ks[ROUNDS]
    for r in reversed(range(ROUNDS)):
        if r < ROUNDS - 1:
            s = _perm(s, PBOX_INV)
        s = _sub(s, SBOX_INV) ^ ks[r]
    return s


@dataclass(frozen=True)
class SpnInstance:
    plaintext: int

    def encrypt(self, key: int) -> int:
        return encrypt(key, self.plaintext)


def spn_map(inst: SpnInstance) -> BlackBoxMap:
    """Known-plaintext map ``K -> E(K, P)`` on 16-bit vectors."""
    p = inst.plaintext
    return BlackBoxMap.from_int_function(GF2(), 16, 16, lambda k: encrypt(k, p), f"spn[P={p:#06x}]")
