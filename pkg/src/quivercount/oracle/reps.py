"""Representations over small fields and the exhaustive sub-representation test."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from ..quiver import DimVector, Quiver, Stability, rep_exponent
from .fields import SmallField
from .linalg import FFMatrix, Matrix, all_matrices, inverse, matmul, matvec, subspaces


class OracleTooLarge(RuntimeError):
    """An instance exceeds a configured enumeration cap."""


@dataclass(frozen=True)
class OracleCaps:
    # max sum a_ij alpha_i alpha_j, keyed by field order (fallback: "default")
    entries: dict = field(default_factory=lambda: {2: 14, 3: 9, "default": 7})
    end_dim: dict = field(default_factory=lambda: {2: 8, 3: 5, "default": 4})
    group_size: int = 100_000
    subspace_tuples: int = 20_000
    type_u_cells: int = 64

    def entry_cap(self, q: int) -> int:
        return self.entries.get(q, self.entries["default"])

    def end_cap(self, q: int) -> int:
        return self.end_dim.get(q, self.end_dim["default"])


DEFAULT_CAPS = OracleCaps()


@dataclass(frozen=True)
class FFRep:
    """One matrix of shape alpha_j x alpha_i per arrow i -> j (arrow_list order)."""

    quiver: Quiver
    dim: DimVector
    mats: tuple[Matrix, ...]

    def __post_init__(self):
        arrows = self.quiver.arrow_list()
        if len(arrows) != len(self.mats):
            raise ValueError("one matrix per arrow required")
        for (i, j), X in zip(arrows, self.mats):
            if len(X) != self.dim[j] or any(len(r) != self.dim[i] for r in X):
                raise ValueError(f"matrix for arrow {i}->{j} has wrong shape")

    @classmethod
    def build(cls, quiver: Quiver, dim: Sequence[int], mats: Sequence[Sequence[Sequence[int]]]) -> "FFRep":
        return cls(quiver, tuple(dim), tuple(tuple(tuple(r) for r in X) for X in mats))

    def matrix(self, k: int) -> FFMatrix:
        i, j = self.quiver.arrow_list()[k]
        return FFMatrix(self.dim[j], self.dim[i], self.mats[k])

    def is_zero_dim(self) -> bool:
        return not any(self.dim)


def check_entry_cap(quiver: Quiver, alpha: Sequence[int], F: SmallField, caps: OracleCaps = DEFAULT_CAPS) -> int:
    e = rep_exponent(quiver, alpha)
    if e > caps.entry_cap(F.q):
        raise OracleTooLarge(f"oracle instance too large: {e} matrix entries over F_{F.q}")
    return e


def enumerate_reps(quiver: Quiver, alpha: Sequence[int], F: SmallField, caps: OracleCaps = DEFAULT_CAPS) -> Iterator[FFRep]:
    alpha = tuple(alpha)
    check_entry_cap(quiver, alpha, F, caps)
    shapes = [(alpha[j], alpha[i]) for i, j in quiver.arrow_list()]
    for mats in itertools.product(*(list(all_matrices(F, r, c)) for r, c in shapes)):
        yield FFRep(quiver, alpha, tuple(mats))


GroupElement = tuple[Matrix, ...]


def act(F: SmallField, g: GroupElement, g_inv: GroupElement, M: FFRep) -> FFRep:
    """g . M : X_a -> g_j X_a g_i^{-1}."""
    d = M.dim
    new = []
    for (i, j), X in zip(M.quiver.arrow_list(), M.mats):
        if d[i] == 0 or d[j] == 0:
            new.append(X)
            continue
        Y = matmul(F, g[j], X, d[j], d[i])
        new.append(matmul(F, Y, g_inv[i], d[i], d[i]))
    return FFRep(M.quiver, d, tuple(new))


def group_inverse(F: SmallField, g: GroupElement, dim: Sequence[int]) -> GroupElement:
    return tuple(inverse(F, m, n) if n else () for m, n in zip(g, dim))


def subrepresentations(M: FFRep, F: SmallField, caps: OracleCaps = DEFAULT_CAPS) -> Iterator[DimVector]:
    """Dimension vectors of all sub-representations (one per subspace tuple)."""
    quiver, d = M.quiver, M.dim
    n = quiver.n
    per_vertex = [subspaces(F, d[v]) for v in range(n)]
    total = 1
    for s in per_vertex:
        total *= len(s)
    if total > caps.subspace_tuples:
        raise OracleTooLarge(f"oracle instance too large: {total} subspace tuples")
    arrows = quiver.arrow_list()
    # arrows checked once both endpoints are chosen
    checks: list[list[tuple[int, int, Matrix]]] = [[] for _ in range(n)]
    for (i, j), X in zip(arrows, M.mats):
        checks[max(i, j)].append((i, j, X))
    chosen: list = [None] * n

    def closed(v: int) -> bool:
        for i, j, X in checks[v]:
            target = chosen[j].members
            for b in chosen[i].basis:
                if matvec(F, X, b) not in target:
                    return False
        return True

    def rec(v: int) -> Iterator[DimVector]:
        if v == n:
            yield tuple(c.dim for c in chosen)
            return
        for U in per_vertex[v]:
            chosen[v] = U
            if closed(v):
                yield from rec(v + 1)
        chosen[v] = None

    yield from rec(0)


@dataclass(frozen=True)
class StabilityFlags:
    semistable: bool
    stable: bool


def subrep_test(M: FFRep, F: SmallField, theta: Stability, mu: Optional[Fraction] = None, caps: OracleCaps = DEFAULT_CAPS) -> StabilityFlags:
    """Semistability / stability by enumerating every sub-representation.

    With ``mu`` given, both flags additionally require ``slope(M) == mu``.
    The zero representation is neither.
    """
    d = M.dim
    ht = sum(d)
    if ht == 0:
        return StabilityFlags(False, False)
    own = Fraction(theta.value(d), ht)
    if mu is not None and own != mu:
        return StabilityFlags(False, False)
    semistable = stable = True
    for u in subrepresentations(M, F, caps):
        hu = sum(u)
        if hu == 0 or u == d:
            continue
        s = Fraction(theta.value(u), hu)
        if s > own:
            semistable = stable = False
            break
        if s == own:
            stable = False
    return StabilityFlags(semistable, stable)


def is_semistable(M: FFRep, F: SmallField, theta: Stability, mu: Optional[Fraction] = None, caps: OracleCaps = DEFAULT_CAPS) -> bool:
    """subrep_test(...).semistable, stopping at the first destabilizing subrep.

    With theta trivial every slope is 0, so no enumeration is needed.
    """
    d = M.dim
    ht = sum(d)
    if ht == 0:
        return False
    own = Fraction(theta.value(d), ht)
    if mu is not None and own != mu:
        return False
    if theta.is_trivial():
        return True
    for u in subrepresentations(M, F, caps):
        hu = sum(u)
        if hu and Fraction(theta.value(u), hu) > own:
            return False
    return True
