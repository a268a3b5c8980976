import random

import pytest

from localinv import poly
from localinv.field import GF2, GFp, GF2w

F2 = GF2()


def test_gcd_lcm_gf2():
    a = poly.mul(F2, [1, 1], [1, 1, 1])  # (x+1)(x^2+x+1)
    b = poly.mul(F2, [1, 1], [1, 1])
    assert poly.gcd(F2, a, b) == [1, 1]
    assert poly.lcm(F2, a, b) == poly.mul(F2, [1, 1], a)


def test_divmod_round_trip():
    f = GFp(101)
    rng = random.Random(1)
    for _ in range(200):
        a = [rng.randrange(101) for _ in range(rng.randint(1, 9))]
        b = [rng.randrange(101) for _ in range(rng.randint(1, 5))] + [1]
        q, r = poly.divmod_(f, a, b)
        assert poly.add(f, poly.mul(f, q, b), r) == poly.trim(a)
        assert poly.degree(r) < poly.degree(b)


def test_x_power_mod():
    # X^3 = 1 modulo X^2+X+1 over GF(2)
    assert poly.x_power_mod(F2, 3, [1, 1, 1]) == [1]


@pytest.mark.parametrize("f", [GF2(), GFp(7), GF2w(4, 0b10011)], ids=str)
def test_bm_recovers_random_recurrences(f):
    rng = random.Random(2)
    for _ in range(200):
        L = rng.randint(1, 6)
        c = [rng.randrange(f.order) for _ in range(L)]
        c[0] = c[0] or 1
        s = [rng.randrange(f.order) for _ in range(L)]
        while len(s) < 3 * L + 4:
            k = len(s) - L
            acc = 0
            for i in range(L):
                acc = f.add(acc, f.mul(c[i], s[k + i]))
            s.append(acc)
        mp = poly.berlekamp_massey(f, s)
        d = len(mp) - 1
        assert d <= L and mp[-1] == 1
        for k in range(len(s) - d):
            acc = 0
            for i in range(d + 1):
                acc = f.add(acc, f.mul(mp[i], s[k + i]))
            assert acc == 0
