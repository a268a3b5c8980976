"""Short Weierstrass curves y^2 = x^3 + A x + B over GF(q), and the ECDLP map.

Points are ``(x, y)`` tuples; the point at infinity is ``None``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from ..errors import InfinityEncoding, NotOnCurve
from ..field import GF2, is_probable_prime
from ..lrs import BlackBoxMap

Point = Optional[Tuple[int, int]]
INF: Point = None


@dataclass(frozen=True)
class Curve:
    q: int
    A: int
    B: int

    def __post_init__(self):
        if self.q <= 3 or not is_probable_prime(self.q):
            raise ValueError("q must be a prime > 3")
        if (4 * self.A ** 3 + 27 * self.B ** 2) % self.q == 0:
            raise ValueError("singular curve")

    def on_curve(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        q = self.q
        return 0 <= x < q and 0 <= y < q and (y * y - (x * x * x + self.A * x + self.B)) % q == 0

    def neg(self, P: Point) -> Point:
        return None if P is None else (P[0], -P[1] % self.q)

    def add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        if Q is None:
            return P
        q = self.q
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if (y1 + y2) % q == 0:
                return None
            lam = (3 * x1 * x1 + self.A) * pow(2 * y1, -1, q) % q
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, q) % q
        x3 = (lam * lam - x1 - x2) % q
        return x3, (lam * (x1 - x3) - y1) % q

    def mul(self, k: int, P: Point) -> Point:
        if not self.on_curve(P):
            raise NotOnCurve(f"{P} is not on {self}")
        if k < 0:
            k, P = -k, self.neg(P)
        R = None
        while k:
            if k & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            k >>= 1
        return R

    def points(self):
        """All affine points, by scanning x (only for small q)."""
        q = self.q
        roots: dict[int, list[int]] = {}
        for y in range(q):
            roots.setdefault(y * y % q, []).append(y)
        for x in range(q):
            for y in roots.get((x * x * x + self.A * x + self.B) % q, ()):
                yield (x, y)

    def __str__(self):
        return f"y^2 = x^3 + {self.A}x + {self.B} over GF({self.q})"


def ec_scalar_mul(curve: "Curve | CurveInstance", k: int, P: Point) -> Point:
    c = curve.curve if isinstance(curve, CurveInstance) else curve
    return c.mul(k, P)


def point_order(curve: Curve, P: Point, limit: int | None = None) -> int:
    """Order of ``P`` by repeated addition (small curves only)."""
    if P is None:
        return 1
    cap = limit if limit is not None else curve.q + 1 + 2 * int(curve.q ** 0.5) + 2
    R, k = P, 1
    while R is not None:
        R = curve.add(R, P)
        k += 1
        if k > cap:
            raise ValueError("order exceeds limit")
    return k


@dataclass(frozen=True)
class CurveInstance:
    curve: Curve
    P: Tuple[int, int]
    order: int

    def __post_init__(self):
        if not self.curve.on_curve(self.P) or self.P is None:
            raise NotOnCurve(f"base point {self.P} is not on the curve")
        if self.curve.mul(self.order, self.P) is not None:
            raise ValueError("[order]P is not the point at infinity")

    @property
    def coord_bits(self) -> int:
        return max(1, (self.curve.q - 1).bit_length())

    @property
    def r(self) -> int:
        """Input width: ceil(log2(order))."""
        return max(1, (self.order - 1).bit_length())

    @property
    def l(self) -> int:
        return 2 * self.coord_bits

    def encode_point(self, Q: Point) -> int:
        if Q is None:
            raise InfinityEncoding("the point at infinity has no coordinate encoding")
        return Q[0] | Q[1] << self.coord_bits

    def decode_point(self, v: int) -> Point:
        w = self.coord_bits
        return v & ((1 << w) - 1), v >> w


def ecdlp_map(inst: CurveInstance) -> BlackBoxMap:
    """Embedding ``x -> (Q_x, Q_y)`` with ``Q = [x mod order] P``, LSB-first per coordinate."""
    curve, P, order = inst.curve, inst.P, inst.order

    def fn(x: int) -> int:
        k = x % order
        if k == 0:
            raise InfinityEncoding(f"[{x}]P is the point at infinity")
        return inst.encode_point(curve.mul(k, P))

    return BlackBoxMap.from_int_function(GF2(), inst.r, inst.l, fn, f"ecdlp[q={curve.q}]")
