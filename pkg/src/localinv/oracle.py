"""Exhaustive ground truth for small maps.

States are handled as their integer encodings (LSB-first digits), so a map
on F^n becomes a successor table of length |F|^n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainTooLarge, NotPeriodic
from .field import StateVec
from .lrs import BlackBoxMap, MinPoly, minpoly_bm_lcm, poly_order

DOMAIN_GUARD = 1 << 24


def _domain_size(fmap: BlackBoxMap) -> int:
    size = fmap.field.order ** fmap.n_in
    if size > DOMAIN_GUARD:
        raise DomainTooLarge(f"{size} states exceed the guard of {DOMAIN_GUARD}")
    return size


def brute_invert(fmap: BlackBoxMap, y: StateVec) -> set[StateVec]:
    """Every x with F(x) = y."""
    size = _domain_size(fmap)
    f, n = fmap.field, fmap.n_in
    out = set()
    for v in range(size):
        x = StateVec.from_int(f, n, v)
        if fmap(x) == y:
            out.add(x)
    return out


def successor_table(fmap: BlackBoxMap) -> list[int]:
    size = _domain_size(fmap)
    f, n = fmap.field, fmap.n_in
    return [fmap(StateVec.from_int(f, n, v)).to_int() for v in range(size)]


@dataclass
class OrbitDecomposition:
    """Functional-graph structure of a square map.

    ``goe`` holds states without pre-image; ``orbits`` the periodic cycles in
    iteration order starting from their smallest state; ``preperiod[s]`` and
    ``orbit_id[s]`` give each state's distance to its cycle and which cycle.
    """

    field: object
    n: int
    succ: list
    goe: frozenset
    orbits: list
    preperiod: list
    orbit_id: list

    def _idx(self, y) -> int:
        return y.to_int() if isinstance(y, StateVec) else int(y)

    def is_periodic(self, y) -> bool:
        return self.preperiod[self._idx(y)] == 0

    def period(self, y) -> int:
        return len(self.orbits[self.orbit_id[self._idx(y)]])

    def in_orbit_preimage(self, y) -> int:
        """Predecessor of ``y`` on its own cycle."""
        i = self._idx(y)
        if self.preperiod[i] != 0:
            raise NotPeriodic(f"state {i} is not periodic")
        orbit = self.orbits[self.orbit_id[i]]
        return orbit[(orbit.index(i) - 1) % len(orbit)]

    def state(self, i: int) -> StateVec:
        return StateVec.from_int(self.field, self.n, i)

    def periodic_states(self) -> list[int]:
        return [s for orb in self.orbits for s in orb]


def decompose_table(succ, field=None, n: int = 0) -> OrbitDecomposition:
    """Iterative colouring: 0 unseen, 1 on the current path, 2 finished."""
    size = len(succ)
    has_pre = bytearray(size)
    for v in succ:
        has_pre[v] = 1
    goe = frozenset(i for i in range(size) if not has_pre[i])
    color = bytearray(size)
    preperiod = [-1] * size
    orbit_id = [-1] * size
    orbits: list[list[int]] = []
    for start in range(size):
        if color[start]:
            continue
        path = []
        pos = {}
        s = start
        while color[s] == 0:
            color[s] = 1
            pos[s] = len(path)
            path.append(s)
            s = succ[s]
        if color[s] == 1:
            cyc = path[pos[s]:]
            k = cyc.index(min(cyc))
            cyc = cyc[k:] + cyc[:k]
            oid = len(orbits)
            orbits.append(cyc)
            for c in cyc:
                preperiod[c] = 0
                orbit_id[c] = oid
            tail = path[:pos[s]]
        else:
            tail = path
        # s is now resolved; walk the tail backwards
        for t in reversed(tail):
            nxt = succ[t]
            preperiod[t] = preperiod[nxt] + 1
            orbit_id[t] = orbit_id[nxt]
        for t in path:
            color[t] = 2
    return OrbitDecomposition(field, n, list(succ), goe, orbits, preperiod, orbit_id)


def orbit_decompose(fmap: BlackBoxMap) -> OrbitDecomposition:
    if not fmap.square:
        raise ValueError("orbit decomposition needs a square map")
    return decompose_table(successor_table(fmap), fmap.field, fmap.n_in)


def trajectory_period(fmap: BlackBoxMap, y: StateVec, limit: int | None = None) -> int:
    """Period of ``y`` if it lies on a cycle; raises NotPeriodic otherwise."""
    cap = limit if limit is not None else _domain_size(fmap)
    seen = {y}
    s = y
    for k in range(1, cap + 1):
        s = fmap(s)
        if s == y:
            return k
        if s in seen:
            raise NotPeriodic("trajectory enters a cycle that does not contain y")
        seen.add(s)
    raise NotPeriodic(f"no return within {cap} steps")


def exact_lc(fmap: BlackBoxMap, y: StateVec, limit: int | None = None) -> tuple[int, MinPoly]:
    """(period, minimal polynomial) from two full periods of the iterates."""
    N = trajectory_period(fmap, y, limit)
    terms = [y]
    for _ in range(2 * N - 1):
        terms.append(fmap(terms[-1]))
    mp = minpoly_bm_lcm(terms)
    order = poly_order(mp, N)
    assert order == N, f"order {order} != period {N}"
    return N, mp
