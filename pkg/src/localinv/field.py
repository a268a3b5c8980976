"""Scalar finite-field arithmetic and state-vector conventions.

Three field kinds are supported: GF(2), GF(p) for an odd prime p (arbitrary
precision) and GF(2^w) in a polynomial basis given by a caller-supplied
irreducible reduction polynomial.

Elements are plain Python ints in canonical range; the field object carries
the arithmetic.  :class:`FieldElem` wraps an int together with its field for
callers that want operator syntax and mixed-field checks.

Digit order is LSB-first everywhere: position 0 of a state vector holds the
least significant digit of the integer it encodes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .errors import InversionOfZero, MismatchedField, ValueOutOfRange

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int, rounds: int = 16) -> bool:
    """Miller-Rabin test, deterministic below 3.3e24 and probabilistic above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_MR_BASES)
    if n.bit_length() > 80:
        rng = random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(rounds)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- GF(2)[x] helpers on int bit masks -------------------------------------

def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def gf2_poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def gf2_poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2_poly_mod(a, b)
    return a


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_gf2(poly: int) -> bool:
    """Rabin's irreducibility test for a GF(2)[x] polynomial given as a bit mask."""
    w = poly.bit_length() - 1
    if w < 1:
        return False
    if w == 1:
        return True
    if not poly & 1:
        return False

    def x_pow_2k(k: int) -> int:
        r = 0b10
        for _ in range(k):
            r = gf2_poly_mod(clmul(r, r), poly)
        return r

    if x_pow_2k(w) != gf2_poly_mod(0b10, poly):
        return False
    for q in prime_factors(w):
        h = x_pow_2k(w // q) ^ 0b10
        if gf2_poly_gcd(poly, h) != 1:
            return False
    return True


#: Standard irreducible reduction polynomials, keyed by extension degree.
IRREDUCIBLE = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,            # x^4 + x + 1 (x is primitive)
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,        # x^8 + x^4 + x^3 + x^2 + 1 (x is primitive)
    12: 0b1000001010011,   # x^12 + x^6 + x^4 + x + 1
    16: 0x1100B,           # x^16 + x^12 + x^3 + x + 1 (x is primitive)
}

#: The AES polynomial, irreducible but x is not primitive modulo it.
AES_POLY = 0x11B


# -- field contexts ----------------------------------------------------------

class Field:
    """Common interface; subclasses fix ``kind`` and ``order``."""

    kind: str
    order: int

    zero = 0
    one = 1

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise ValueOutOfRange(f"{a!r} is not a canonical element of {self}")
        return a

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def random_element(self, rng: random.Random, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.order)

    def elements(self) -> range:
        return range(self.order)


@dataclass(frozen=True)
class GF2(Field):
    kind: str = dc_field(default="GF2", init=False)

    @property
    def order(self) -> int:
        return 2

    @property
    def char(self) -> int:
        return 2

    def add(self, a, b):
        return a ^ b

    def neg(self, a):
        return a

    def sub(self, a, b):
        return a ^ b

    def mul(self, a, b):
        return a & b

    def inv(self, a):
        if a == 0:
            raise InversionOfZero("0 has no inverse in GF(2)")
        return 1

    def __str__(self):
        return "GF(2)"


@dataclass(frozen=True)
class GFp(Field):
    p: int
    kind: str = dc_field(default="GFp", init=False)

    def __post_init__(self):
        if self.p < 3 or not is_probable_prime(self.p):
            raise ValueError(f"GF(p) needs an odd prime, got {self.p}")

    @property
    def order(self) -> int:
        return self.p

    @property
    def char(self) -> int:
        return self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise InversionOfZero(f"0 has no inverse in GF({self.p})")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0 and a % self.p == 0:
            raise InversionOfZero(f"0 has no inverse in GF({self.p})")
        return pow(a, e, self.p)

    def __str__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class GF2w(Field):
    w: int
    reduction: int
    kind: str = dc_field(default="GF2w", init=False)

    def __post_init__(self):
        if self.reduction.bit_length() - 1 != self.w:
            raise ValueError(f"reduction polynomial {self.reduction:#x} is not of degree {self.w}")
        if not is_irreducible_gf2(self.reduction):
            raise ValueError(f"reduction polynomial {self.reduction:#x} is reducible")

    @classmethod
    def standard(cls, w: int) -> "GF2w":
        return cls(w, IRREDUCIBLE[w])

    @property
    def order(self) -> int:
        return 1 << self.w

    @property
    def char(self) -> int:
        return 2

    def add(self, a, b):
        return a ^ b

    def neg(self, a):
        return a

    def sub(self, a, b):
        return a ^ b

    def mul(self, a, b):
        r = 0
        top = 1 << self.w
        red = self.reduction
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= red
        return r

    def inv(self, a):
        if a == 0:
            raise InversionOfZero(f"0 has no inverse in GF(2^{self.w})")
        return self.pow(a, self.order - 2)

    def __str__(self):
        return f"GF(2^{self.w})"


FieldCtx = Field


@dataclass(frozen=True)
class FieldElem:
    """An element tagged with its field; supports ``+ - * / **``."""

    field: Field
    value: int

    def __post_init__(self):
        self.field.check(self.value)

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise MismatchedField(f"{self.field} vs {other.field}")
            return other.value
        return other % self.field.order if self.field.kind == "GFp" else self.field.check(other)

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.value, self._other(other)))

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.value))

    __radd__ = __add__
    __rmul__ = __mul__


def fe_arith(ctx: Field, op: str, a, b=None):
    """Apply ``op`` in ``{add, mul, inv, pow}``; accepts ints or FieldElems."""

    def unwrap(v):
        if isinstance(v, FieldElem):
            if v.field != ctx:
                raise MismatchedField(f"{v.field} vs {ctx}")
            return v.value
        return ctx.check(v)

    av = unwrap(a)
    if op == "add":
        out = ctx.add(av, unwrap(b))
    elif op == "mul":
        out = ctx.mul(av, unwrap(b))
    elif op == "inv":
        out = ctx.inv(av)
    elif op == "pow":
        out = ctx.pow(av, b)
    else:
        raise ValueError(f"unknown field operation {op!r}")
    return FieldElem(ctx, out) if isinstance(a, FieldElem) else out


# -- state vectors -------------------------------------------------------------

@dataclass(frozen=True)
class StateVec:
    """An element of F^n; ``entries[0]`` is the least significant position."""

    field: Field
    entries: tuple

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def to_int(self) -> int:
        """Integer whose base-|F| digits (LSB first) are the entries."""
        if self.field.order == 2:
            v = 0
            for i, bit in enumerate(self.entries):
                if bit:
                    v |= 1 << i
            return v
        q, v = self.field.order, 0
        for d in reversed(self.entries):
            v = v * q + d
        return v

    @classmethod
    def from_int(cls, field: Field, n: int, v: int) -> "StateVec":
        q = field.order
        if not 0 <= v < q ** n:
            raise ValueOutOfRange(f"{v} does not fit in {n} digits over {field}")
        if q == 2:
            return cls(field, tuple((v >> i) & 1 for i in range(n)))
        digits = []
        for _ in range(n):
            v, d = divmod(v, q)
            digits.append(d)
        return cls(field, tuple(digits))

    @classmethod
    def of(cls, field: Field, entries: Iterable[int]) -> "StateVec":
        return cls(field, tuple(field.check(e) for e in entries))

    def __add__(self, other: "StateVec") -> "StateVec":
        f = self.field
        return StateVec(f, tuple(f.add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "StateVec") -> "StateVec":
        f = self.field
        return StateVec(f, tuple(f.sub(a, b) for a, b in zip(self.entries, other.entries)))

    def scale(self, c: int) -> "StateVec":
        f = self.field
        return StateVec(f, tuple(f.mul(c, a) for a in self.entries))

    def to_hex(self) -> str:
        return hex(self.to_int())

    def __repr__(self):
        return f"StateVec({self.field}, {self.entries})"


def vec_codec(direction: str, ctx: Field, n: int, v):
    """Encode a non-negative integer into F^n, or decode a StateVec back."""
    if direction == "encode":
        return StateVec.from_int(ctx, n, v)
    if direction == "decode":
        if v.dim != n:
            raise ValueOutOfRange(f"expected dimension {n}, got {v.dim}")
        return v.to_int()
    raise ValueError(f"unknown direction {direction!r}")


def encode_bits(v: int, n: int) -> StateVec:
    return StateVec.from_int(GF2(), n, v)


def linear_combination(field: Field, coeffs: Sequence[int], vecs: Sequence[StateVec]) -> tuple:
    """Entry tuple of sum(c_i * v_i)."""
    n = vecs[0].dim
    acc = [0] * n
    add, mul = field.add, field.mul
    for c, v in zip(coeffs, vecs):
        if c == 0:
            continue
        for k, e in enumerate(v.entries):
            if e:
                acc[k] = add(acc[k], mul(c, e))
    return tuple(acc)


def parse_int(text) -> int:
    """Parse a hex string (optional ``0x`` prefix) or pass an int through."""
    if isinstance(text, int):
        return text
    s = str(text).strip().lower()
    if s.startswith("0x"):
        s = s[2:]
    return int(s, 16)
