"""Local inversion of embeddings ``F: F^n -> F^m`` with ``n < m``.

The ``t + 1 = m - n + 1`` sliding windows of the output give square maps
``F_i = window_i . F``.  Each one is inverted on its own; a candidate is only
accepted when it satisfies every other window and the full equation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import DimensionMismatch, IndexOutOfRange, MapEvaluationError
from .field import StateVec
from .lrs import BlackBoxMap, EarlyPeriod, NoConclusion, Solved, invert_local


def project(i: int, v: StateVec, n: int) -> StateVec:
    """Window of ``n`` coordinates starting at 1-based position ``i``."""
    if not 1 <= i <= v.dim - n + 1:
        raise IndexOutOfRange(f"window {i} of width {n} does not fit in dimension {v.dim}")
    return StateVec(v.field, v.entries[i - 1:i - 1 + n])


def window_coverage(n: int, m: int) -> set[int]:
    """1-based output coordinates covered by the windows 1..m-n+1."""
    return {k for i in range(1, m - n + 2) for k in range(i, i + n)}


@dataclass(frozen=True)
class ProjectionSystem:
    index: int
    map: BlackBoxMap
    y: StateVec


def projection_systems(fmap: BlackBoxMap, y: StateVec) -> list[ProjectionSystem]:
    n, m = fmap.n_in, fmap.n_out
    if y.dim != m:
        raise DimensionMismatch(f"y has dimension {y.dim}, map outputs {m}")
    systems = []
    for i in range(1, m - n + 2):
        def fi(x, i=i):
            return project(i, fmap(x), n)
        systems.append(ProjectionSystem(i, BlackBoxMap(fmap.field, n, n, fi, f"{fmap.name}[{i}]"), project(i, y, n)))
    return systems


@dataclass(frozen=True)
class ProjectionAttempt:
    """What one projection concluded, and whether its candidate survived cross-checks."""

    index: int
    outcome: object
    cross_verified: bool


def _full_check(fmap: BlackBoxMap, systems, x: StateVec, y: StateVec, skip: int) -> bool:
    try:
        fx = fmap(x)
    except MapEvaluationError:
        return False
    n = fmap.n_in
    for s in systems:
        if s.index != skip and project(s.index, fx, n) != s.y:
            return False
    return fx == y


def invert_embedding(fmap: BlackBoxMap, y: StateVec, M: int, mode: str = "paper",
                     all_projections: bool = False, shortcut: bool = True):
    """Search the projection systems in order for a globally verified pre-image.

    Returns the first verified candidate (lowest projection index).  With
    ``all_projections=True`` every projection is examined and the reported
    ``lc`` is the smallest one among verified candidates.  A projection whose
    iterates hit an unencodable value (e.g. the point at infinity) counts as
    no conclusion.
    """
    if fmap.n_in > fmap.n_out:
        raise DimensionMismatch("under-determined maps (n_in > n_out) are not supported")
    if M < 2:
        raise ValueError("M must be at least 2")
    systems = projection_systems(fmap, y)
    attempts = []
    evals = 0
    false_pos = 0
    verified = []
    for s in systems:
        try:
            out = invert_local(s.map, s.y, M, mode=mode, shortcut=shortcut)
        except MapEvaluationError:
            out = NoConclusion(M)
        evals += out.eval_count
        false_pos += out.false_positives
        ok = False
        if isinstance(out, (Solved, EarlyPeriod)):
            ok = _full_check(fmap, systems, out.x, y, s.index)
            evals += 1
            if not ok:
                false_pos += 1
        attempts.append(ProjectionAttempt(s.index, out, ok))
        if ok:
            verified.append(replace(out, projection=s.index))
            if not all_projections:
                break
    if not verified:
        return NoConclusion(M, evals, false_pos, tuple(attempts))
    best = verified[0]
    solved = [v for v in verified if isinstance(v, Solved)]
    if isinstance(best, Solved) and solved:
        low = min(solved, key=lambda v: v.lc)
        best = replace(best, lc=low.lc, minpoly=low.minpoly)
    return replace(best, eval_count=evals, false_positives=false_pos, attempts=tuple(attempts))
