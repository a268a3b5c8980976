"""Exact dense linear algebra over a finite field: rank and system solving.

GF(2) matrices keep each row packed into an int (bit ``c`` is column ``c``);
large ones are ranked on a numpy ``uint64`` word array.  Prime fields below
2^31 use vectorised int64 elimination; everything else goes through the
generic row-list path, which also serves as the unpacked reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch
from .field import GF2, Field, GF2w, prime_factors

# GF(2) matrices with at least this many rows*cols are ranked with numpy.
_NUMPY_GF2_CUTOFF = 1 << 18
_NUMPY_FIELD_CUTOFF = 1 << 10


class Mat:
    """Row-major matrix over ``field``.

    For GF(2) ``data`` is a list of packed int rows; otherwise it is a list of
    row lists of canonical ints.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int, data):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    @property
    def packed(self) -> bool:
        return self.field.order == 2 and self.field.kind == "GF2"

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[int]], cols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            for e in r:
                field.check(e)
        if isinstance(field, GF2):
            data = [sum(1 << c for c, e in enumerate(r) if e) for r in rows]
            return cls(field, len(rows), ncols, data)
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_packed(cls, rows: Sequence[int], cols: int) -> "Mat":
        mask = (1 << cols) - 1
        if any(r & ~mask for r in rows):
            raise DimensionMismatch("packed row wider than cols")
        return cls(GF2(), len(rows), cols, list(rows))

    @classmethod
    def column(cls, field: Field, values: Sequence[int]) -> "Mat":
        return cls.from_rows(field, [[v] for v in values], cols=1)

    def row(self, i: int) -> list[int]:
        if self.packed:
            r = self.data[i]
            return [(r >> c) & 1 for c in range(self.cols)]
        return list(self.data[i])

    def tolist(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def column_values(self) -> list[int]:
        """Entries of a single-column matrix."""
        if self.cols != 1:
            raise DimensionMismatch("not a column")
        return [r[0] for r in self.tolist()]

    def matvec(self, x: Sequence[int]) -> list[int]:
        f = self.field
        if len(x) != self.cols:
            raise DimensionMismatch(f"vector of length {len(x)} for {self.cols} columns")
        if self.packed:
            xv = sum(1 << c for c, e in enumerate(x) if e)
            return [bin(r & xv).count("1") & 1 for r in self.data]
        out = []
        for r in self.data:
            acc = 0
            for a, b in zip(r, x):
                if a and b:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return out

    def transpose(self) -> "Mat":
        return Mat.from_rows(self.field, list(map(list, zip(*self.tolist()))) or [], cols=self.rows)

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field == other.field and self.rows == other.rows
                and self.cols == other.cols and self.tolist() == other.tolist())

    def __repr__(self):
        return f"Mat({self.field}, {self.rows}x{self.cols}, {self.tolist()})"


# -- rank ------------------------------------------------------------------------

def gf2_rank_ints(rows: Sequence[int]) -> int:
    """Rank of packed GF(2) rows, via a basis keyed by leading bit."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            h = r.bit_length() - 1
            b = basis.get(h)
            if b is None:
                basis[h] = r
                break
            r ^= b
    return len(basis)


def pack_words(rows: Sequence[int], cols: int) -> np.ndarray:
    nw = max(1, (cols + 63) // 64)
    nbytes = nw * 8
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    return np.frombuffer(buf, dtype="<u8").reshape(len(rows), nw).copy()


def gf2_rank_words(words: np.ndarray) -> int:
    """Rank of a GF(2) matrix stored as an (rows, words) uint64 array.  Destroys ``words``."""
    a = words
    nrows, nw = a.shape
    r = 0
    one = np.uint64(1)
    for w in range(nw):
        for b in range(64):
            if r == nrows:
                return r
            bit = one << np.uint64(b)
            hits = np.flatnonzero(a[r:, w] & bit)
            if hits.size == 0:
                continue
            p = r + hits[0]
            if p != r:
                a[[r, p], w:] = a[[p, r], w:]
            below = hits[1:] + r if p == r else np.flatnonzero(a[r + 1:, w] & bit) + r + 1
            if below.size:
                a[below, w:] ^= a[r, w:]
            r += 1
    return r


def _rank_generic(field: Field, rows: list[list[int]], cols: int) -> int:
    """Reference elimination on unpacked row lists (first nonzero pivot)."""
    work = [list(r) for r in rows]
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        inv = field.inv(prow[c])
        prow[:] = [field.mul(inv, e) for e in prow]
        for i in range(rank + 1, len(work)):
            f = work[i][c]
            if f:
                ri = work[i]
                for k in range(c, cols):
                    if prow[k]:
                        ri[k] = field.sub(ri[k], field.mul(f, prow[k]))
        rank += 1
        if rank == len(work):
            break
    return rank


class _GFpOps:
    """Row arithmetic over GF(p) on int64 arrays (p < 2^31 so products fit)."""

    def __init__(self, p: int):
        self.p = p

    def scale_to_one(self, row):
        row[:] = row * pow(int(row[0]), -1, self.p) % self.p

    def eliminate(self, block, factors, prow):
        block[:] = (block - factors[:, None] * prow[None, :]) % self.p


class _GF2wOps:
    """Row arithmetic over GF(2^w) through exp/log tables."""

    def __init__(self, w: int, reduction: int):
        self.exp, self.log = _gf2w_tables(w, reduction)
        self.q1 = (1 << w) - 1

    def scale_to_one(self, row):
        nz = row != 0
        row[nz] = self.exp[self.log[row[nz]] + self.q1 - self.log[row[0]]]

    def eliminate(self, block, factors, prow):
        lf = self.log[factors][:, None]
        block ^= np.where(prow[None, :] != 0, self.exp[lf + self.log[prow][None, :]], 0)


@lru_cache(maxsize=8)
def _gf2w_tables(w: int, reduction: int):
    """exp/log tables over a generator of GF(2^w)*; exp is doubled to skip a modulo."""
    f = GF2w(w, reduction)
    q1 = f.order - 1
    factors = prime_factors(q1)
    g = next(a for a in range(2, f.order) if all(f.pow(a, q1 // p) != 1 for p in factors))
    exp = np.zeros(2 * q1, dtype=np.int64)
    log = np.zeros(f.order, dtype=np.int64)
    v = 1
    for i in range(q1):
        exp[i] = exp[i + q1] = v
        log[v] = i
        v = f.mul(v, g)
    return exp, log


def _np_ops(field: Field):
    if field.kind == "GFp" and field.p < (1 << 31):
        return _GFpOps(field.p)
    if field.kind == "GF2w":
        return _GF2wOps(field.w, field.reduction)
    return None


def _eliminate_np(ops, a: np.ndarray, ncols: int, full: bool) -> list[int]:
    """In-place row reduction on the first ``ncols`` columns; returns pivot columns.

    ``full=True`` clears above each pivot too (reduced row echelon form).
    """
    nrows = a.shape[0]
    pivots: list[int] = []
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        ops.scale_to_one(a[rank, c:])
        col = a[:, c].copy()
        col[rank] = 0
        if not full:
            col[:rank] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            block = a[idx, c:]
            ops.eliminate(block, col[idx], a[rank, c:])
            a[idx, c:] = block
        pivots.append(c)
        rank += 1
    return pivots


def mat_rank(m: Mat, *, reference: bool = False) -> int:
    """Rank of ``m`` over its field.  ``m`` is not modified.

    ``reference=True`` forces the naive unpacked elimination, used to cross-check
    the packed and vectorised paths.
    """
    if m.rows == 0 or m.cols == 0:
        return 0
    if reference:
        return _rank_generic(m.field, m.tolist(), m.cols)
    if m.packed:
        if m.rows * m.cols >= _NUMPY_GF2_CUTOFF:
            return gf2_rank_words(pack_words(m.data, m.cols))
        return gf2_rank_ints(m.data)
    ops = _np_ops(m.field) if m.rows * m.cols >= _NUMPY_FIELD_CUTOFF else None
    if ops is not None:
        a = np.array(m.data, dtype=np.int64).reshape(m.rows, m.cols)
        return len(_eliminate_np(ops, a, m.cols, full=False))
    return _rank_generic(m.field, m.data, m.cols)


# -- solving ---------------------------------------------------------------------

@dataclass(frozen=True)
class Solution:
    x: tuple


@dataclass(frozen=True)
class Inconsistent:
    rank_a: int
    rank_ab: int


@dataclass(frozen=True)
class Underdetermined:
    x: tuple
    nullity: int


def _solve_gf2(a: Mat, b: list[int]):
    n = a.cols
    aug = [r | (bit << n) for r, bit in zip(a.data, b)]
    pivots = []
    rank = 0
    for c in range(n):
        mask = 1 << c
        piv = next((i for i in range(rank, len(aug)) if aug[i] & mask), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        prow = aug[rank]
        for i in range(len(aug)):
            if i != rank and aug[i] & mask:
                aug[i] ^= prow
        pivots.append(c)
        rank += 1
    for i in range(rank, len(aug)):
        if aug[i] >> n & 1:
            return Inconsistent(rank, rank + 1)
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i] >> n & 1
    if rank < n:
        return Underdetermined(tuple(x), n - rank)
    return Solution(tuple(x))


def _solve_generic(a: Mat, b: list[int]):
    f = a.field
    n = a.cols
    aug = [list(r) + [v] for r, v in zip(a.data, b)]
    pivots = []
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, len(aug)) if aug[i][c]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        prow = aug[rank]
        inv = f.inv(prow[c])
        prow[:] = [f.mul(inv, e) for e in prow]
        for i in range(len(aug)):
            if i != rank and aug[i][c]:
                fac = aug[i][c]
                ri = aug[i]
                for k in range(c, n + 1):
                    if prow[k]:
                        ri[k] = f.sub(ri[k], f.mul(fac, prow[k]))
        pivots.append(c)
        rank += 1
    for i in range(rank, len(aug)):
        if aug[i][n]:
            return Inconsistent(rank, rank + 1)
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    if rank < n:
        return Underdetermined(tuple(x), n - rank)
    return Solution(tuple(x))


def _solve_np(ops, a: Mat, b: list[int]):
    n = a.cols
    aug = np.array([list(r) + [v] for r, v in zip(a.data, b)], dtype=np.int64).reshape(a.rows, n + 1)
    pivots = _eliminate_np(ops, aug, n, full=True)
    rank = len(pivots)
    if np.any(aug[rank:, n]):
        return Inconsistent(rank, rank + 1)
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = int(aug[i, n])
    if rank < n:
        return Underdetermined(tuple(x), n - rank)
    return Solution(tuple(x))


def mat_solve(a: Mat, b: Mat | Sequence[int]):
    """Solve ``a x = b`` exactly.

    Returns :class:`Solution`, :class:`Inconsistent`, or :class:`Underdetermined`
    (a particular solution with free variables set to zero, plus the nullity).
    """
    bv = b.column_values() if isinstance(b, Mat) else list(b)
    if isinstance(b, Mat) and b.field != a.field:
        raise DimensionMismatch("field mismatch between a and b")
    if len(bv) != a.rows:
        raise DimensionMismatch(f"a has {a.rows} rows but b has {len(bv)}")
    if a.packed:
        return _solve_gf2(a, bv)
    ops = _np_ops(a.field) if a.rows * a.cols >= _NUMPY_FIELD_CUTOFF else None
    if ops is not None:
        return _solve_np(ops, a, bv)
    return _solve_generic(a, bv)
