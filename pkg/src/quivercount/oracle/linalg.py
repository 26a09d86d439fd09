"""Dense linear algebra over a SmallField.

Matrices are tuples of row tuples of field codes; a matrix with zero rows
or columns is carried by an explicit shape wherever it matters.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .fields import SmallField

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FFMatrix:
    rows: int
    cols: int
    entries: Matrix

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("matrix entries do not match its shape")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "FFMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "FFMatrix":
        return cls(n, n, identity(n))

    @classmethod
    def of(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "FFMatrix":
        rows = tuple(tuple(r) for r in entries)
        c = cols if cols is not None else (len(rows[0]) if rows else 0)
        return cls(len(rows), c, rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(F: SmallField, A: Matrix, B: Matrix, inner: int, cols: int) -> Matrix:
    add, mul = F.add, F.mul
    out = []
    for row in A:
        new = []
        for j in range(cols):
            acc = 0
            for k in range(inner):
                a = row[k]
                if a:
                    b = B[k][j]
                    if b:
                        acc = add[acc][mul[a][b]]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def matvec(F: SmallField, A: Matrix, v: Vector) -> Vector:
    add, mul = F.add, F.mul
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = add[acc][mul[a][x]]
        out.append(acc)
    return tuple(out)


def mat_sub(F: SmallField, A: Matrix, B: Matrix) -> Matrix:
    sub = F.sub
    return tuple(tuple(sub[a][b] for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def rref(F: SmallField, rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        s = inv[M[r][c]]
        M[r] = [mul[s][x] for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = neg[M[i][c]]
                M[i] = [add[x][mul[f][y]] for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F: SmallField, rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(rref(F, rows, ncols)[1])


def nullspace(F: SmallField, rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Basis of {x : M x = 0}."""
    R, pivots = rref(F, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, p in zip(R, pivots):
            x[p] = F.neg[row[f]]
        basis.append(tuple(x))
    return basis


def is_invertible(F: SmallField, A: Matrix, n: int) -> bool:
    return n == 0 or rank(F, A, n) == n


def inverse(F: SmallField, A: Matrix, n: int) -> Matrix:
    aug = [list(A[i]) + list(identity(n)[i]) for i in range(n)]
    R, pivots = rref(F, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ValueError("matrix is singular")
    return tuple(tuple(R[i][n:]) for i in range(n))


def span_elements(F: SmallField, basis: Sequence[Vector], dim: int) -> Iterator[Vector]:
    """Every linear combination of ``basis`` (vectors of length ``dim``)."""
    add, mul = F.add, F.mul
    if not basis:
        yield (0,) * dim
        return
    for coeffs in itertools.product(F.elements, repeat=len(basis)):
        v = [0] * dim
        for c, b in zip(coeffs, basis):
            if c:
                for i, x in enumerate(b):
                    if x:
                        v[i] = add[v[i]][mul[c][x]]
        yield tuple(v)


def all_matrices(F: SmallField, rows: int, cols: int) -> Iterator[Matrix]:
    for flat in itertools.product(F.elements, repeat=rows * cols):
        yield tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows))


@lru_cache(maxsize=None)
def gl_elements(F: SmallField, n: int) -> tuple[Matrix, ...]:
    return tuple(A for A in all_matrices(F, n, n) if is_invertible(F, A, n))


@dataclass(frozen=True)
class Subspace:
    dim: int
    ambient: int
    basis: tuple[Vector, ...]
    members: frozenset


@lru_cache(maxsize=None)
def subspaces(F: SmallField, d: int) -> tuple[Subspace, ...]:
    """All subspaces of F^d, one per reduced row echelon basis, by dimension."""
    out = []
    for k in range(d + 1):
        for pivots in itertools.combinations(range(d), k):
            # free slots: entries right of each pivot in non-pivot columns
            slots = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, d) if c not in pivots]
            for fill in itertools.product(F.elements, repeat=len(slots)):
                rows = [[0] * d for _ in range(k)]
                for r, p in enumerate(pivots):
                    rows[r][p] = 1
                for (r, c), x in zip(slots, fill):
                    rows[r][c] = x
                basis = tuple(tuple(r) for r in rows)
                out.append(Subspace(k, d, basis, frozenset(span_elements(F, basis, d))))
    return tuple(out)
