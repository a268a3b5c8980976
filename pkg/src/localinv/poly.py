"""Univariate polynomials over a finite field.

A polynomial is a list of coefficients, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from typing import Sequence

from .field import Field


def trim(p: Sequence[int]) -> list[int]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[int]) -> int:
    return len(trim(p)) - 1


def add(f: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return trim([f.add(x, y) for x, y in zip(a, b)])


def sub(f: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    return add(f, a, [f.neg(c) for c in b])


def mul(f: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = f.add(out[i + j], f.mul(x, y))
    return trim(out)


def divmod_(f: Field, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lead_inv = f.inv(b[-1])
    q = [0] * max(0, len(a) - db)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = f.mul(r[-1], lead_inv)
        q[shift] = c
        for i, y in enumerate(b):
            if y:
                r[i + shift] = f.sub(r[i + shift], f.mul(c, y))
        r = trim(r)
    return trim(q), r


def monic(f: Field, a: Sequence[int]) -> list[int]:
    a = trim(a)
    if not a:
        return a
    inv = f.inv(a[-1])
    return [f.mul(inv, c) for c in a]


def gcd(f: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(f, a, b)[1]
    return monic(f, a)


def lcm(f: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    q, r = divmod_(f, mul(f, a, b), gcd(f, a, b))
    assert not r
    return monic(f, q)


def divides(f: Field, a: Sequence[int], b: Sequence[int]) -> bool:
    """True when ``a`` divides ``b``."""
    return not divmod_(f, b, a)[1]


def x_power_mod(f: Field, e: int, m: Sequence[int]) -> list[int]:
    """X^e reduced modulo the polynomial ``m`` by square-and-multiply."""
    result = divmod_(f, [1], m)[1]
    base = divmod_(f, [0, 1], m)[1]
    while e:
        if e & 1:
            result = divmod_(f, mul(f, result, base), m)[1]
        base = divmod_(f, mul(f, base, base), m)[1]
        e >>= 1
    return result


def berlekamp_massey(f: Field, s: Sequence[int]) -> list[int]:
    """Minimal polynomial (monic, lowest degree first) of a scalar sequence.

    Returns the characteristic polynomial X^L + c_1 X^(L-1) + ... + c_L of the
    shortest LFSR generating ``s``; a factor X^k appears when the sequence is
    not purely periodic.  Needs about 2L terms to be trustworthy.
    """
    c = [1]
    b = [1]
    L, m, bd = 0, 1, 1
    for n, sn in enumerate(s):
        d = sn
        for i in range(1, L + 1):
            if i < len(c) and c[i]:
                d = f.add(d, f.mul(c[i], s[n - i]))
        if d == 0:
            m += 1
            continue
        coef = f.div(d, bd)
        shifted = [0] * m + [f.mul(coef, x) for x in b]
        t = list(c)
        width = max(len(c), len(shifted))
        c = [f.sub(c[i] if i < len(c) else 0, shifted[i] if i < len(shifted) else 0)
             for i in range(width)]
        if 2 * L <= n:
            L = n + 1 - L
            b, bd, m = t, d, 1
        else:
            m += 1
    c = c + [0] * (L + 1 - len(c))
    return [c[L - i] for i in range(L + 1)]
