"""RSA encryption and chosen-ciphertext maps on l-bit vectors.

Both maps only use the public modulus and exponent.  Inputs are l-bit strings
and may encode integers >= n; ``F_e`` reduces them mod n first so the map is
total, and ``c^x mod n`` is already defined for every exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from ..field import GF2
from ..lrs import BlackBoxMap


@dataclass(frozen=True)
class RsaInstance:
    n: int
    e: int
    phi: Optional[int] = None  # only known for generated fixtures
    d: Optional[int] = None

    def __post_init__(self):
        if self.n < 3 or self.e < 1:
            raise ValueError("bad RSA parameters")
        if self.phi is not None and gcd(self.e, self.phi) != 1:
            raise ValueError("e is not invertible modulo phi(n)")

    @property
    def bits(self) -> int:
        return self.n.bit_length()

    def encrypt(self, m: int) -> int:
        return pow(m, self.e, self.n)


def rsa_fe_map(inst: RsaInstance) -> BlackBoxMap:
    n, e = inst.n, inst.e
    return BlackBoxMap.from_int_function(GF2(), inst.bits, inst.bits,
                                         lambda x: pow(x % n, e, n), f"rsa_fe[n={n:#x}]")


def rsa_fc_map(inst: RsaInstance, c: int) -> BlackBoxMap:
    n = inst.n
    if not 1 <= c < n:
        raise ValueError("ciphertext must lie in [1, n-1]")
    return BlackBoxMap.from_int_function(GF2(), inst.bits, inst.bits,
                                         lambda x: pow(c, x, n), f"rsa_fc[n={n:#x},c={c:#x}]")


def multiplicative_order(a: int, n: int, limit: int | None = None) -> int:
    """Order of ``a`` in (Z/n)^*, by stepping; ``limit`` caps the search."""
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    k, v = 1, a % n
    cap = limit if limit is not None else n
    while v != 1:
        v = v * a % n
        k += 1
        if k > cap:
            raise ValueError("order exceeds limit")
    return k
