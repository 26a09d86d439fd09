"""Endomorphism algebras by brute force: dimension, units, idempotents.

A finite-dimensional algebra whose only idempotents are 0 and 1 is local;
its non-units are then the radical, of size ``q^(e - d)`` with ``d`` the
degree of the residue field over F_q.  Absolutely indecomposable means
local with ``d = 1``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .fields import SmallField
from .linalg import Matrix, is_invertible, matmul, nullspace, span_elements
from .reps import DEFAULT_CAPS, FFRep, OracleCaps, OracleTooLarge


@dataclass(frozen=True)
class EndAnalysis:
    end_dim: int
    unit_count: int
    idempotent_count: int
    residue_degree: Optional[int]

    @property
    def local(self) -> bool:
        return self.idempotent_count == 2


class Indecomposability(enum.Enum):
    DECOMPOSABLE = "decomposable"
    INDECOMPOSABLE = "indecomposable"
    ABSOLUTELY_INDECOMPOSABLE = "absolutely_indecomposable"


def _offsets(dim) -> list[int]:
    out, acc = [], 0
    for a in dim:
        out.append(acc)
        acc += a * a
    return out


def endomorphism_basis(M: FFRep, F: SmallField) -> list[tuple[Matrix, ...]]:
    """Basis of {(phi_i) : phi_j X_a = X_a phi_i for every arrow a: i -> j}."""
    d = M.dim
    off = _offsets(d)
    nvars = sum(a * a for a in d)
    rows = []

    def var(v: int, r: int, c: int) -> int:
        return off[v] + r * d[v] + c

    add = F.add
    for (i, j), X in zip(M.quiver.arrow_list(), M.mats):
        # entry (r, c) of phi_j X - X phi_i, r < d[j], c < d[i]
        for r in range(d[j]):
            for c in range(d[i]):
                row = [0] * nvars
                for k in range(d[j]):
                    x = X[k][c]
                    if x:
                        idx = var(j, r, k)
                        row[idx] = add[row[idx]][x]
                for k in range(d[i]):
                    x = X[r][k]
                    if x:
                        idx = var(i, k, c)
                        row[idx] = F.sub[row[idx]][x]
                rows.append(row)
    basis = nullspace(F, rows, nvars)
    return [_unflatten(b, d, off) for b in basis]


def _unflatten(vec, d, off) -> tuple[Matrix, ...]:
    out = []
    for v, a in enumerate(d):
        flat = vec[off[v]:off[v] + a * a]
        out.append(tuple(tuple(flat[r * a:(r + 1) * a]) for r in range(a)))
    return tuple(out)


def end_analysis(M: FFRep, F: SmallField, caps: OracleCaps = DEFAULT_CAPS) -> EndAnalysis:
    d = M.dim
    off = _offsets(d)
    nvars = sum(a * a for a in d)
    basis = endomorphism_basis(M, F)
    e = len(basis)
    if e > caps.end_cap(F.q):
        raise OracleTooLarge(f"oracle instance too large: End has dimension {e} over F_{F.q}")
    flat_basis = [tuple(x for m in b for row in m for x in row) for b in basis]
    units = idempotents = 0
    for flat in span_elements(F, flat_basis, nvars):
        phi = _unflatten(flat, d, off)
        if all(is_invertible(F, m, a) for m, a in zip(phi, d)):
            units += 1
        if all(matmul(F, m, m, a, a) == m for m, a in zip(phi, d)):
            idempotents += 1
    residue = None
    if idempotents == 2:
        nonunits = F.q**e - units
        k, x = 0, 1
        while x < nonunits:
            x *= F.q
            k += 1
        if x == nonunits:
            residue = e - k
    return EndAnalysis(e, units, idempotents, residue)


def classify(M: FFRep, F: SmallField, caps: OracleCaps = DEFAULT_CAPS) -> Indecomposability:
    if M.is_zero_dim():
        return Indecomposability.DECOMPOSABLE
    ea = end_analysis(M, F, caps)
    if not ea.local:
        return Indecomposability.DECOMPOSABLE
    if ea.residue_degree == 1:
        return Indecomposability.ABSOLUTELY_INDECOMPOSABLE
    return Indecomposability.INDECOMPOSABLE
