import random

import pytest

from conftest import F2, vec
from localinv.embed import (invert_embedding, project, projection_systems, window_coverage)
from localinv.errors import DimensionMismatch, IndexOutOfRange
from localinv.field import StateVec
from localinv.lrs import BlackBoxMap, EarlyPeriod, NoConclusion, Solved, invert_local
from localinv.oracle import brute_invert


def lin_embed():
    return BlackBoxMap(F2, 2, 3, lambda x: vec(x[0], x[1], x[0] ^ x[1]), "lin")


def test_project_windows():
    v = vec(1, 0, 1)
    assert project(1, v, 2) == vec(1, 0)
    assert project(2, v, 2) == vec(0, 1)
    with pytest.raises(IndexOutOfRange):
        project(3, v, 2)


def test_windows_cover_every_coordinate():
    for n in range(1, 9):
        for m in range(n, 13):
            assert window_coverage(n, m) == set(range(1, m + 1))


def test_projection_maps_compose_with_window():
    fmap = lin_embed()
    y = vec(1, 0, 1)
    for s in projection_systems(fmap, y):
        for v in range(4):
            x = StateVec.from_int(F2, 2, v)
            assert s.map(x) == project(s.index, fmap(x), 2)
        assert s.y == project(s.index, y, 2)


def test_square_map_matches_local_inversion(fib):
    for v in range(1, 4):
        y = StateVec.from_int(F2, 2, v)
        a = invert_embedding(fib, y, 8, shortcut=False)
        b = invert_local(fib, y, 8, shortcut=False)
        assert a.x == b.x and a.lc == b.lc and a.projection == 1


def test_linear_embedding_solved():
    out = invert_embedding(lin_embed(), vec(1, 0, 1), 8)
    assert isinstance(out, (Solved, EarlyPeriod)) and out.x == vec(1, 0)
    assert out.projection == 1 and out.attempts[0].cross_verified


def test_value_outside_image_gives_no_conclusion():
    out = invert_embedding(lin_embed(), vec(1, 0, 0), 8)
    assert isinstance(out, NoConclusion)
    assert all(not a.cross_verified for a in out.attempts)


def test_rejects_underdetermined_and_wrong_dimension():
    fmap = BlackBoxMap(F2, 3, 2, lambda x: vec(x[0], x[1]))
    with pytest.raises(DimensionMismatch):
        invert_embedding(fmap, vec(1, 0), 8)
    with pytest.raises(DimensionMismatch):
        invert_embedding(lin_embed(), vec(1, 0), 8)


def _random_injective(rng, n, m):
    outs = rng.sample(range(1 << m), 1 << n)
    return BlackBoxMap.from_int_function(F2, n, m, lambda x: outs[x], "inj")


def test_oracle_agreement_on_random_injective_embeddings():
    rng = random.Random(21)
    concluded = 0
    for _ in range(150):
        n = rng.randint(2, 8)
        m = rng.randint(n + 1, min(12, n + 4))
        fmap = _random_injective(rng, n, m)
        x0 = StateVec.from_int(F2, n, rng.randrange(1 << n))
        y = fmap(x0)
        out = invert_embedding(fmap, y, 2 * (1 << n) + 2, shortcut=rng.random() < 0.5)
        if isinstance(out, (Solved, EarlyPeriod)):
            concluded += 1
            assert brute_invert(fmap, y) == {out.x}
            assert fmap(out.x) == y
    assert concluded > 30


def test_all_projections_reports_smallest_lc():
    rng = random.Random(22)
    for _ in range(60):
        n, m = 4, 7
        fmap = _random_injective(rng, n, m)
        y = fmap(StateVec.from_int(F2, n, rng.randrange(16)))
        out = invert_embedding(fmap, y, 34, all_projections=True, shortcut=False)
        if isinstance(out, Solved):
            lcs = [a.outcome.lc for a in out.attempts if a.cross_verified]
            assert out.lc == min(lcs)
            assert out.projection == next(a.index for a in out.attempts if a.cross_verified)
            assert len(out.attempts) == m - n + 1
