"""Representations fixed by a unipotent g = (I + J_tau_1, ..., I + J_tau_n).

``sigma`` is fixed by g iff every arrow matrix X (target j, source i)
satisfies ``J_tau_j X = X J_tau_i``.  Blocks of X between a part of size a
(rows) and a part of size b (columns) are then upper-triangular Toeplitz;
between equal sizes the diagonal entry is the block's leading scalar, and
the core at size s collects those scalars into a representation of
dimension vector d_tau^s.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from ..partitions import Partition, multiplicity_vector, part_sizes
from ..quiver import Quiver, Stability
from .fields import SmallField
from .linalg import Matrix, gl_elements, identity, mat_sub, matmul, nullspace, span_elements
from .reps import DEFAULT_CAPS, FFRep, OracleCaps, OracleTooLarge, check_entry_cap, enumerate_reps, is_semistable


def nilpotent_jordan(lam: Partition) -> Matrix:
    n = lam.size
    J = [[0] * n for _ in range(n)]
    start = 0
    for p in lam.parts:
        for k in range(p - 1):
            J[start + k][start + k + 1] = 1
        start += p
    return tuple(tuple(r) for r in J)


def unipotent(lam: Partition, F: SmallField) -> Matrix:
    J = nilpotent_jordan(lam)
    return tuple(tuple(F.add[x][1] if i == j else x for j, x in enumerate(row)) for i, row in enumerate(J))


def intertwiner_basis(F: SmallField, lam: Partition, mu: Partition) -> list[tuple[int, ...]]:
    """Basis (flattened row-major) of {U : J_lam U = U J_mu}, U of size |lam| x |mu|."""
    a, b = lam.size, mu.size
    Jl, Jm = nilpotent_jordan(lam), nilpotent_jordan(mu)
    rows = []
    for r in range(a):
        for c in range(b):
            row = [0] * (a * b)
            # (J_lam U)[r][c] = sum_k Jl[r][k] U[k][c]
            for k in range(a):
                if Jl[r][k]:
                    row[k * b + c] = F.add[row[k * b + c]][Jl[r][k]]
            # (U J_mu)[r][c] = sum_k U[r][k] Jm[k][c]
            for k in range(b):
                if Jm[k][c]:
                    row[r * b + k] = F.sub[row[r * b + k]][Jm[k][c]]
            rows.append(row)
    return nullspace(F, rows, a * b)


def type_u_solution_dim(lam: Partition, mu: Partition, F: SmallField, caps: OracleCaps = DEFAULT_CAPS) -> int:
    if lam.size * mu.size > caps.type_u_cells:
        raise OracleTooLarge("type-U instance too large")
    return len(intertwiner_basis(F, lam, mu))


def vertex_dims(tau: Sequence[Partition]) -> tuple[int, ...]:
    return tuple(lam.size for lam in tau)


def fixed_space_elements(quiver: Quiver, tau: Sequence[Partition], F: SmallField, caps: OracleCaps = DEFAULT_CAPS) -> Iterator[FFRep]:
    """Enumerate X_g as a product of per-arrow intertwiner spaces."""
    alpha = vertex_dims(tau)
    check_entry_cap(quiver, alpha, F, caps)
    per_arrow = []
    for i, j in quiver.arrow_list():
        a, b = alpha[j], alpha[i]
        basis = intertwiner_basis(F, tau[j], tau[i])
        mats = [tuple(tuple(flat[r * b:(r + 1) * b]) for r in range(a)) for flat in span_elements(F, basis, a * b)]
        per_arrow.append(mats)
    for mats in itertools.product(*per_arrow):
        yield FFRep(quiver, alpha, tuple(mats))


def is_fixed(M: FFRep, tau: Sequence[Partition], F: SmallField) -> bool:
    d = M.dim
    g = [unipotent(lam, F) for lam in tau]
    for (i, j), X in zip(M.quiver.arrow_list(), M.mats):
        if d[i] == 0 or d[j] == 0:
            continue
        if matmul(F, g[j], X, d[j], d[i]) != matmul(F, X, g[i], d[i], d[i]):
            return False
    return True


def fixed_space_bruteforce(quiver: Quiver, tau: Sequence[Partition], F: SmallField, caps: OracleCaps = DEFAULT_CAPS) -> list[FFRep]:
    """X_g by filtering all of Rep(alpha); used to check the linear-algebra route."""
    return [M for M in enumerate_reps(quiver, vertex_dims(tau), F, caps) if is_fixed(M, tau, F)]


@dataclass(frozen=True)
class FixedPointCount:
    total: int
    semistable: int


def fixed_points(
    quiver: Quiver,
    tau: Sequence[Partition],
    F: SmallField,
    theta: Stability,
    mu: Optional[Fraction] = None,
    caps: OracleCaps = DEFAULT_CAPS,
) -> FixedPointCount:
    """|X_g| and |X_g ∩ Rep^ss_mu(alpha)|; mu defaults to the slope of alpha."""
    alpha = vertex_dims(tau)
    total = ss = 0
    if not any(alpha):
        return FixedPointCount(1, 1)
    if mu is None:
        mu = Fraction(theta.value(alpha), sum(alpha))
    for M in fixed_space_elements(quiver, tau, F, caps):
        total += 1
        if is_semistable(M, F, theta, mu, caps):
            ss += 1
    return FixedPointCount(total, ss)


def _part_offsets(lam: Partition) -> list[tuple[int, int]]:
    """(size, start row) of each Jordan block."""
    out, start = [], 0
    for p in lam.parts:
        out.append((p, start))
        start += p
    return out


def extract_core(M: FFRep, tau: Sequence[Partition], F: SmallField) -> dict[int, FFRep]:
    """Core summands of a fixed representation, keyed by part size s."""
    if tuple(vertex_dims(tau)) != M.dim:
        raise ValueError("partition tuple does not match the dimension vector")
    if not is_fixed(M, tau, F):
        raise ValueError("representation is not fixed by g")
    quiver = M.quiver
    blocks = [_part_offsets(lam) for lam in tau]
    out = {}
    for s in part_sizes(tau):
        d = multiplicity_vector(tau, s)
        starts = [[st for size, st in blocks[v] if size == s] for v in range(quiver.n)]
        mats = []
        for (i, j), X in zip(quiver.arrow_list(), M.mats):
            mats.append(tuple(tuple(X[r][c] for c in starts[i]) for r in starts[j]))
        out[s] = FFRep(quiver, d, tuple(mats))
    return out


def core_equivalence(M: FFRep, tau: Sequence[Partition], F: SmallField, theta: Stability, mu: Fraction, caps: OracleCaps = DEFAULT_CAPS) -> tuple[bool, bool]:
    """(M semistable of slope mu, every nonzero core summand semistable of slope mu)."""
    lhs = is_semistable(M, F, theta, mu, caps)
    cores = extract_core(M, tau, F)
    rhs = all(is_semistable(C, F, theta, mu, caps) for C in cores.values() if not C.is_zero_dim())
    return lhs, rhs


def commuting_group_order(lam: Partition, F: SmallField, caps: OracleCaps = DEFAULT_CAPS) -> int:
    """|{A in GL_m(F) : A u = u A}| for u = I + J_lam, by brute force."""
    m = lam.size
    if F.q ** (m * m) > caps.group_size * 10:
        raise OracleTooLarge("commutant enumeration too large")
    u = unipotent(lam, F)
    return sum(1 for A in gl_elements(F, m) if matmul(F, A, u, m, m) == matmul(F, u, A, m, m))


def unipotent_element_count(m: int, F: SmallField) -> int:
    """Number of A in GL_m(F) with (A - I) nilpotent."""
    I = identity(m)
    count = 0
    for A in gl_elements(F, m):
        N = mat_sub(F, A, I)
        P = N
        for _ in range(m - 1):
            P = matmul(F, P, N, m, m)
        if m == 0 or all(x == 0 for row in P for x in row):
            count += 1
    return count
