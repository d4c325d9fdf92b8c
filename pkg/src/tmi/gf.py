"""Exact rank computation: sparse matrices over GF(p) and integer matrices
over Q.

This is the verification backend for the acyclicity and homology checks.
Matrices are assembled sparse (boundary matrices have at most dim+1
entries per column); ranks are computed by modular Gaussian elimination.
A numba-compiled dense kernel handles the sizes the certification sweep
produces; a pure-Python sparse elimination with fewest-nonzero pivoting
covers everything else and doubles as an independent cross-check in the
tests.  Rational (fraction-free Bareiss) ranks back the paranoia mode.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

DEFAULT_PRIME = 32003

try:
    from numba import njit

    HAVE_NUMBA = True
except Exception:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_DENSE_BUDGET = 16_000_000  # entries; ~128 MB of int64


if HAVE_NUMBA:

    @njit(cache=True)
    def _rank_dense_numba(a, p):  # pragma: no cover - exercised via rank()
        m, n = a.shape
        r = 0
        for c in range(n):
            piv = -1
            for i in range(r, m):
                if a[i, c] % p != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, n):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            # pivot inverse by Fermat's little theorem
            inv = 1
            base = a[r, c] % p
            e = p - 2
            while e:
                if e & 1:
                    inv = (inv * base) % p
                base = (base * base) % p
                e >>= 1
            for j in range(c, n):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(m):
                if i == r:
                    continue
                f = a[i, c] % p
                if f:
                    for j in range(c, n):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            r += 1
            if r == m:
                break
        return r


def _rank_dense_numpy(a: np.ndarray, p: int) -> int:
    a = a % p
    m, n = a.shape
    r = 0
    for c in range(n):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows] = (a[rows] - np.outer(col[rows], a[r])) % p
        r += 1
        if r == m:
            break
    return r


def _rank_sparse(rows: list[dict[int, int]], p: int) -> int:
    """Sparse elimination with fewest-nonzeros pivoting; deterministic."""
    active = [r for r in rows if r]
    rank = 0
    while active:
        prow = min(active, key=lambda r: (len(r), min(r)))
        colcount: dict[int, int] = {}
        for r in active:
            for j in r:
                colcount[j] = colcount.get(j, 0) + 1
        pcol = min(prow, key=lambda j: (colcount[j], j))
        inv = pow(prow[pcol], -1, p)
        rank += 1
        nxt = []
        for r in active:
            if r is prow:
                continue
            f = r.get(pcol)
            if f:
                f = (f * inv) % p
                for j, v in prow.items():
                    nv = (r.get(j, 0) - f * v) % p
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
            if r:
                nxt.append(r)
        active = nxt
    return rank


class PrimeFieldMatrix:
    """Sparse matrix over GF(p); entries stored nonzero and reduced mod p."""

    __slots__ = ("nrows", "ncols", "p", "entries")

    def __init__(self, nrows: int, ncols: int, p: int = DEFAULT_PRIME, entries: dict | None = None):
        if p < 2:
            raise ValueError(f"p={p} is not a prime modulus")
        self.nrows = nrows
        self.ncols = ncols
        self.p = p
        self.entries: dict[tuple[int, int], int] = {}
        if entries:
            for (i, j), v in entries.items():
                self[i, j] = v

    @classmethod
    def from_triples(
        cls, nrows: int, ncols: int, triples: Iterable[tuple[int, int, int]], p: int = DEFAULT_PRIME
    ) -> "PrimeFieldMatrix":
        m = cls(nrows, ncols, p)
        for i, j, v in triples:
            m[i, j] = m.entries.get((i, j), 0) + v
        return m

    def __setitem__(self, ij: tuple[int, int], v: int):
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry {ij} outside {self.nrows}x{self.ncols}")
        v %= self.p
        if v:
            self.entries[i, j] = v
        else:
            self.entries.pop(ij, None)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.nrows, self.ncols), dtype=np.int64)
        for (i, j), v in self.entries.items():
            a[i, j] = v
        return a

    def rank(self) -> int:
        if not self.entries:
            return 0
        size = self.nrows * self.ncols
        if HAVE_NUMBA and size <= _DENSE_BUDGET:
            return int(_rank_dense_numba(self.to_dense(), self.p))
        if not HAVE_NUMBA and size <= 250_000:
            return _rank_dense_numpy(self.to_dense(), self.p)
        rows: list[dict[int, int]] = [dict() for _ in range(self.nrows)]
        for (i, j), v in sorted(self.entries.items()):
            rows[i][j] = v
        return _rank_sparse(rows, self.p)

    def rank_sparse(self) -> int:
        """Force the pure-Python sparse path (cross-check in tests)."""
        rows: list[dict[int, int]] = [dict() for _ in range(self.nrows)]
        for (i, j), v in sorted(self.entries.items()):
            rows[i][j] = v
        return _rank_sparse(rows, self.p)


def rank_gf(m: PrimeFieldMatrix) -> int:
    """Exact rank over GF(p)."""
    return m.rank()


def rank_int_exact(rows: Iterable[Iterable[int]]) -> int:
    """Exact rank over Q of an integer matrix, by fraction-free Bareiss
    elimination (no floating point, no modular reduction)."""
    a = [list(map(int, r)) for r in rows]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    pr = 0
    for c in range(n):
        piv = next((i for i in range(pr, m) if a[i][c]), None)
        if piv is None:
            continue
        a[pr], a[piv] = a[piv], a[pr]
        for i in range(pr + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[pr][c] - a[i][c] * a[pr][j]) // prev
            a[i][c] = 0
        prev = a[pr][c]
        pr += 1
        rank += 1
        if pr == m:
            break
    return rank


def rank_rational(nrows: int, ncols: int, triples: Iterable[tuple[int, int, int]]) -> int:
    """Exact rank over Q of an integer matrix given as (row, col, value)
    triples; the slow mode behind the --rational flag."""
    a = [[0] * ncols for _ in range(nrows)]
    for i, j, v in triples:
        a[i][j] += v
    return rank_int_exact(a)
