"""Local inversion of a square map through the linear complexity of its iterates.

Given ``F: F^n -> F^n`` and ``y``, the iterate sequence ``y, F(y), F(F(y)), ...``
is generated up to a budget ``M``.  If the sequence is periodic and satisfies a
linear recurrence of degree ``m <= M // 2``, the recurrence is recovered from
block-Hankel systems and the unique pre-image of ``y`` inside its periodic
orbit follows from the recurrence coefficients::

    x = (t[m-1] - sum_{i=1}^{m-1} a_i t[i-1]) / a_0

Every returned pre-image is verified by a forward evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional, Sequence, Union

from . import poly
from .errors import (DimensionMismatch, ExceedsBound, InsufficientTerms,
                     ZeroConstantTerm)
from .field import Field, StateVec, linear_combination
from .linalg import Mat, Solution, gf2_rank_ints, mat_rank, mat_solve


@dataclass(frozen=True)
class BlackBoxMap:
    """A pure map ``F^n_in -> F^n_out`` evaluated on state vectors."""

    field: Field
    n_in: int
    n_out: int
    fn: Callable[[StateVec], StateVec] = dc_field(compare=False)
    name: str = "map"

    def __call__(self, x: StateVec) -> StateVec:
        if x.dim != self.n_in:
            raise DimensionMismatch(f"{self.name}: expected input of dimension {self.n_in}, got {x.dim}")
        return self.fn(x)

    eval = __call__

    @property
    def square(self) -> bool:
        return self.n_in == self.n_out

    @classmethod
    def from_int_function(cls, field: Field, n_in: int, n_out: int,
                          fn: Callable[[int], int], name: str = "map") -> "BlackBoxMap":
        """Wrap a function on integers (LSB-first digit encoding on both sides)."""

        def wrapped(x: StateVec) -> StateVec:
            return StateVec.from_int(field, n_out, fn(x.to_int()))

        return cls(field, n_in, n_out, wrapped, name)

    @classmethod
    def from_table(cls, field: Field, n: int, table: Sequence[int], name: str = "table") -> "BlackBoxMap":
        """A square map given by its full value table indexed by integer encoding."""
        table = tuple(table)
        if len(table) != field.order ** n:
            raise DimensionMismatch(f"table needs {field.order ** n} entries, got {len(table)}")
        return cls.from_int_function(field, n, n, table.__getitem__, name)


@dataclass
class IterSeq:
    """Terms ``F^(k)(y0)``; ``early_period`` is the first k >= 1 with a return to y0."""

    y0: StateVec
    terms: list
    early_period: Optional[int] = None

    def __len__(self):
        return len(self.terms)

    @property
    def field(self) -> Field:
        return self.y0.field

    @property
    def dim(self) -> int:
        return self.y0.dim


@dataclass(frozen=True)
class MinPoly:
    """Monic ``X^m - sum_i coeffs[i] X^i``; ``degree`` is the linear complexity."""

    field: Field
    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def poly(self) -> list[int]:
        """Full coefficient list, lowest degree first."""
        f = self.field
        return [f.neg(a) for a in self.coeffs] + [1]

    @classmethod
    def from_poly(cls, field: Field, p: Sequence[int]) -> "MinPoly":
        p = poly.monic(field, p)
        return cls(field, tuple(field.neg(c) for c in p[:-1]))

    def annihilates(self, terms: Sequence[StateVec]) -> bool:
        """Exact check of the recurrence on every full window of ``terms``."""
        m = self.degree
        f = self.field
        for k in range(len(terms) - m):
            rhs = linear_combination(f, self.coeffs, terms[k:k + m]) if m else (0,) * terms[0].dim
            if tuple(terms[k + m].entries) != rhs:
                return False
        return True

    def __str__(self):
        terms = []
        for i, c in reversed(list(enumerate(self.poly))):
            if c == 0:
                continue
            mono = "1" if i == 0 else ("X" if i == 1 else f"X^{i}")
            terms.append(mono if (c == 1 and i) else f"{c}*{mono}" if i else str(c))
        return " + ".join(terms) or "0"


# -- outcomes --------------------------------------------------------------------

@dataclass(frozen=True)
class Solved:
    x: StateVec
    lc: int
    minpoly: MinPoly
    eval_count: int = 0
    false_positives: int = 0
    projection: Optional[int] = None
    attempts: tuple = ()

    tag = "solved"
    concluded = True


@dataclass(frozen=True)
class EarlyPeriod:
    x: StateVec
    period: int
    eval_count: int = 0
    false_positives: int = 0
    projection: Optional[int] = None
    attempts: tuple = ()

    tag = "early_period"
    concluded = True


@dataclass(frozen=True)
class NoConclusion:
    bound: int
    eval_count: int = 0
    false_positives: int = 0
    attempts: tuple = ()

    tag = "no_conclusion"
    concluded = False


@dataclass(frozen=True)
class NoSolution:
    tag = "no_solution"
    concluded = False


InversionOutcome = Union[Solved, EarlyPeriod, NoConclusion, NoSolution]


@dataclass(frozen=True)
class RankMismatch:
    rank_m: int
    rank_m1: int


@dataclass(frozen=True)
class HankelInconsistent:
    rank_a: int
    rank_ab: int


# -- sequence --------------------------------------------------------------------

def _require_square(fmap: BlackBoxMap):
    if not fmap.square:
        raise DimensionMismatch(f"{fmap.name} is not square ({fmap.n_in} -> {fmap.n_out})")


def seq_generate(fmap: BlackBoxMap, y: StateVec, M: int, stop_on_period: bool = True) -> IterSeq:
    """Terms ``F^(k)(y)`` for k = 0..M, stopping at the first return to ``y``.

    With ``stop_on_period=False`` all M+1 terms are produced and the first
    return is still recorded.
    """
    if M < 2:
        raise ValueError("M must be at least 2")
    _require_square(fmap)
    seq = IterSeq(y, [y])
    extend_seq(fmap, seq, M + 1, stop_on_period)
    return seq


def extend_seq(fmap: BlackBoxMap, seq: IterSeq, length: int, stop_on_period: bool = True) -> int:
    """Grow ``seq`` to ``length`` terms; returns the number of evaluations made."""
    terms = seq.terms
    y = seq.y0
    evals = 0
    while len(terms) < length:
        if stop_on_period and seq.early_period is not None:
            break
        t = fmap(terms[-1])
        evals += 1
        terms.append(t)
        if seq.early_period is None and t == y:
            seq.early_period = len(terms) - 1
    return evals


# -- Hankel systems --------------------------------------------------------------

def _hankel_rows(terms: Sequence[StateVec], m: int, j: int) -> list[list[int]]:
    n = terms[0].dim
    rows = []
    for r in range(m):
        for k in range(n):
            rows.append([terms[r + c + j].entries[k] for c in range(m)])
    return rows


def hankel_matrix(seq: IterSeq, m: int, j: int = 0) -> Mat:
    """The m x m block-Hankel matrix with block (r, c) = term r+c+j, flattened."""
    if len(seq.terms) < 2 * m - 1 + j:
        raise InsufficientTerms(f"H({m}) at shift {j} needs {2 * m - 1 + j} terms, have {len(seq.terms)}")
    return Mat.from_rows(seq.field, _hankel_rows(seq.terms, m, j), cols=m)


def hankel_build(seq: IterSeq, m: int, j: int = 0) -> tuple[Mat, Mat]:
    """``(H, h)`` for the system ``H alpha = h`` at degree ``m`` and shift ``j``."""
    if m < 1:
        raise ValueError("degree must be positive")
    if len(seq.terms) < 2 * m + j:
        raise InsufficientTerms(f"degree {m} at shift {j} needs {2 * m + j} terms, have {len(seq.terms)}")
    H = hankel_matrix(seq, m, j)
    h = [e for t in seq.terms[m + j:2 * m + j] for e in t.entries]
    return H, Mat.column(seq.field, h)


class _HankelColumns:
    """Packed GF(2) columns of the largest Hankel matrix needed; H(m) is a slice.

    Column ``c`` stores the bits of terms c, c+1, ... concatenated (term ``r``
    relative to ``c`` occupying bits ``r*n .. r*n+n-1``).  The first ``m``
    columns masked to ``m*n`` bits are the columns of H(m); the rank of that
    set of ints is rank H(m).
    """

    def __init__(self, seq: IterSeq):
        self.seq = seq
        self.n = seq.dim
        self.cols: list[int] = []
        self.depth = 0

    def _rebuild(self):
        ints = [t.to_int() for t in self.seq.terms]
        depth = (len(ints) + 1) // 2
        n = self.n
        cols = []
        for c in range(depth):
            v = 0
            for r in range(depth - 1, -1, -1):
                v = (v << n) | ints[c + r]
            cols.append(v)
        self.cols, self.depth = cols, depth

    def rank(self, m: int) -> int:
        if len(self.seq.terms) < 2 * m - 1:
            raise InsufficientTerms(f"H({m}) needs {2 * m - 1} terms, have {len(self.seq.terms)}")
        if m > self.depth:
            self._rebuild()
        mask = (1 << (m * self.n)) - 1
        return gf2_rank_ints([c & mask for c in self.cols[:m]])


class _RankOracle:
    """rank H(m) for the schedules in :func:`invert_local`, GF(2)-packed when possible."""

    def __init__(self, seq: IterSeq):
        self.seq = seq
        self.packed = seq.field.kind == "GF2"
        self._cols = _HankelColumns(seq) if self.packed else None
        self._cache: dict[tuple[int, int], int] = {}

    def rank(self, m: int) -> int:
        key = (m, len(self.seq.terms))
        if key not in self._cache:
            if self.packed:
                self._cache[key] = self._cols.rank(m)
            else:
                self._cache[key] = mat_rank(hankel_matrix(self.seq, m))
        return self._cache[key]


def minpoly_hankel(seq: IterSeq, m: int):
    """Minimal polynomial of degree ``m`` if rank H(m) = rank H(m+1) = m.

    Returns :class:`MinPoly`, :class:`RankMismatch` when the rank condition
    fails, or :class:`HankelInconsistent` when the system has no solution.
    """
    if len(seq.terms) < 2 * m + 1:
        raise InsufficientTerms(f"rank test at degree {m} needs {2 * m + 1} terms, have {len(seq.terms)}")
    r0 = mat_rank(hankel_matrix(seq, m))
    r1 = mat_rank(hankel_matrix(seq, m + 1))
    if not (r0 == r1 == m):
        return RankMismatch(r0, r1)
    return _solve_coeffs(seq, m)


def _solve_coeffs(seq: IterSeq, m: int):
    H, h = hankel_build(seq, m)
    sol = mat_solve(H, h)
    if isinstance(sol, Solution):
        return MinPoly(seq.field, sol.x)
    if hasattr(sol, "rank_ab"):
        return HankelInconsistent(sol.rank_a, sol.rank_ab)
    return RankMismatch(m - sol.nullity, m - sol.nullity)


def minpoly_bm_lcm(seq: IterSeq | Sequence[StateVec]) -> MinPoly:
    """Berlekamp-Massey per coordinate, combined by polynomial lcm."""
    terms = seq.terms if isinstance(seq, IterSeq) else list(seq)
    f = terms[0].field
    acc = [1]
    for k in range(terms[0].dim):
        coord = [t.entries[k] for t in terms]
        acc = poly.lcm(f, acc, poly.berlekamp_massey(f, coord))
    return MinPoly.from_poly(f, acc)


def poly_order(p: MinPoly | Sequence[int], bound: int, field: Field | None = None) -> int:
    """Smallest N <= bound with X^N = 1 modulo ``p``; raises ExceedsBound otherwise."""
    if isinstance(p, MinPoly):
        f, coeffs = p.field, list(p.coeffs)
    else:
        f = field
        mp = MinPoly.from_poly(f, p)
        coeffs = list(mp.coeffs)
    m = len(coeffs)
    if m == 0:
        return 1
    if coeffs[0] == 0:
        raise ZeroConstantTerm("order is undefined when the constant term is zero")
    # r holds X^k mod p as a coefficient vector; multiplying by X shifts and folds the top.
    r = [1] + [0] * (m - 1) if m > 1 else [1]
    target = list(r)
    for k in range(1, bound + 1):
        carry = r[-1]
        r = [0] + r[:-1]
        if carry:
            r = [f.add(ri, f.mul(carry, a)) for ri, a in zip(r, coeffs)]
        if r == target:
            return k
    raise ExceedsBound(f"order exceeds {bound}")


def solve_from_minpoly(fmap: BlackBoxMap, seq: IterSeq, mp: MinPoly) -> StateVec:
    """Pre-image of ``seq.y0`` from the recurrence coefficients (unverified)."""
    m = mp.degree
    if m == 0:
        raise ZeroConstantTerm("the zero sequence has no invertible recurrence")
    a = mp.coeffs
    f = mp.field
    if a[0] == 0:
        raise ZeroConstantTerm("constant coefficient is zero; y is not on a periodic orbit")
    if len(seq.terms) < m:
        raise InsufficientTerms(f"need {m} terms, have {len(seq.terms)}")
    terms = seq.terms
    coeffs = [1] + [f.neg(a[i]) for i in range(1, m)]
    vecs = [terms[m - 1]] + [terms[i - 1] for i in range(1, m)]
    acc = linear_combination(f, coeffs, vecs)
    inv0 = f.inv(a[0])
    return StateVec(f, tuple(f.mul(inv0, e) for e in acc))


# -- Algorithm driver -------------------------------------------------------------

@dataclass
class _Run:
    fmap: BlackBoxMap
    y: StateVec
    seq: IterSeq
    evals: int = 0
    false_positives: int = 0

    def verify_candidate(self, m: int):
        """Solve at degree m (rank condition already holds) and verify; returns Solved or None."""
        mp = _solve_coeffs(self.seq, m)
        if not isinstance(mp, MinPoly) or mp.coeffs[0] == 0:
            self.false_positives += 1
            return None
        x = solve_from_minpoly(self.fmap, self.seq, mp)
        self.evals += 1
        if self.fmap(x) == self.y:
            return Solved(x, m, mp, self.evals, self.false_positives)
        self.false_positives += 1
        return None

    def zero_fixed_point(self):
        """The all-zero sequence has minimal polynomial 1 (LC 0) and pre-image 0."""
        t = self.seq.terms
        if len(t) >= 2 and not any(t[0].entries) and not any(t[1].entries):
            return Solved(t[0], 0, MinPoly(self.seq.field, ()), self.evals, self.false_positives)
        return None


def invert_local(fmap: BlackBoxMap, y: StateVec, M: int, mode: str = "paper",
                 shortcut: bool = True) -> InversionOutcome:
    """Incomplete local inversion of ``F(x) = y`` within the budget ``M``.

    ``mode="paper"`` generates M+1 terms and searches degrees downward from
    M // 2.  ``mode="progressive"`` grows the sequence on demand and tries
    degrees 1, 2, 4, ... up to M // 2.  ``shortcut=False`` disables the
    return-to-y shortcut so the recurrence path always runs.

    A full-rank degree whose candidate fails verification is counted in
    ``false_positives`` and the schedule moves on.
    """
    if M < 2:
        raise ValueError("M must be at least 2")
    _require_square(fmap)
    if mode == "paper":
        return _invert_downward(fmap, y, M, shortcut)
    if mode == "progressive":
        return _invert_progressive(fmap, y, M, shortcut)
    raise ValueError(f"unknown mode {mode!r}")


def _early(run: _Run) -> EarlyPeriod:
    k = run.seq.early_period
    x = run.seq.terms[k - 1]
    return EarlyPeriod(x, k, run.evals, run.false_positives)


def _invert_downward(fmap, y, M, shortcut):
    seq = IterSeq(y, [y])
    run = _Run(fmap, y, seq)
    run.evals += extend_seq(fmap, seq, M + 1, stop_on_period=shortcut)
    if shortcut and seq.early_period is not None:
        return _early(run)
    zero = run.zero_fixed_point()
    if zero is not None:
        return zero
    ranks = _RankOracle(seq)
    m = M // 2
    while m >= 1:
        r0, r1 = ranks.rank(m), ranks.rank(m + 1)
        if r0 == r1 == m:
            solved = run.verify_candidate(m)
            if solved is not None:
                return solved
        if r0 < r1:
            break
        m = _next_degree(ranks, m, r0) if r0 < m - 1 else m - 1
    return NoConclusion(M, run.evals, run.false_positives)


def _next_degree(ranks: "_RankOracle", m: int, r: int) -> int:
    """Next degree the unit-decrement schedule would act on, below ``m``.

    rank H(d) is non-decreasing in d, so with rank H(m) = rank H(m+1) = r < m
    every degree d in (max(k-1, r), m) has rank H(d) = rank H(d+1) = r < d and
    is merely stepped over; k is the smallest degree with rank H(k) = r.
    """
    lo, hi = 1, m
    while lo < hi:
        mid = (lo + hi) // 2
        if ranks.rank(mid) >= r:
            hi = mid
        else:
            lo = mid + 1
    return max(lo - 1, r)


def _progressive_degrees(half: int) -> list[int]:
    out, m = [], 1
    while m < half:
        out.append(m)
        m *= 2
    if half >= 1:
        out.append(half)
    return out


def _invert_progressive(fmap, y, M, shortcut):
    seq = IterSeq(y, [y])
    run = _Run(fmap, y, seq)
    ranks = _RankOracle(seq)
    tried = set()
    for m in _progressive_degrees(M // 2):
        run.evals += extend_seq(fmap, seq, 2 * m + 1, stop_on_period=shortcut)
        if shortcut and seq.early_period is not None:
            return _early(run)
        zero = run.zero_fixed_point()
        if zero is not None:
            return zero
        r0, r1 = ranks.rank(m), ranks.rank(m + 1)
        if r0 != r1 or r0 == 0:
            continue
        d = r0
        if d in tried:
            continue
        tried.add(d)
        if ranks.rank(d) == ranks.rank(d + 1) == d:
            solved = run.verify_candidate(d)
            if solved is not None:
                return solved
    return NoConclusion(M, run.evals, run.false_positives)
