"""Exponentiation maps whose local inverses are discrete logarithms."""

from __future__ import annotations

from ..field import GF2, GF2w, GFp, StateVec, prime_factors
from ..lrs import BlackBoxMap


def dlp_fp_map(p: int, a: int) -> BlackBoxMap:
    """Scalar map ``x -> a^x mod p`` on GF(p); 0 and p-1 both map to 1."""
    f = GFp(p)
    if not 2 <= a <= p - 1:
        raise ValueError("base must lie in [2, p-1]")

    def fn(x: StateVec) -> StateVec:
        return StateVec(f, (pow(a, x.entries[0], p),))

    return BlackBoxMap(f, 1, 1, fn, f"dlp_fp[p={p},a={a}]")


def reverse_bits(v: int, w: int) -> int:
    return int(format(v, f"0{w}b")[::-1], 2)


def dlp_f2w_map(w: int, reduction: int, a: int, reversed_index: bool = False) -> BlackBoxMap:
    """Bit-vector map ``x -> a^int(x)`` in GF(2^w).

    ``int(x)`` reads the bit vector LSB-first; ``reversed_index=True`` reads it
    MSB-first instead.
    """
    field = GF2w(w, reduction)
    field.check(a)
    if not is_primitive(field, a):
        raise ValueError(f"{a:#x} is not primitive in GF(2^{w})")

    def fn(x: int) -> int:
        e = reverse_bits(x, w) if reversed_index else x
        return field.pow(a, e)

    return BlackBoxMap.from_int_function(GF2(), w, w, fn, f"dlp_f2w[w={w},a={a:#x}]")


def is_primitive(field: GF2w, a: int) -> bool:
    order = field.order - 1
    return a != 0 and all(field.pow(a, order // q) != 1 for q in prime_factors(order))
