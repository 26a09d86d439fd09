"""Partitions and the pairings that enter fixed-point counts of unipotents.

A partition lambda is the Jordan type of ``I + J_lambda``.  Three pieces of
combinatorics are needed:

* ``min_pairing(l, m) = sum_{k,l} min(l_k, m_l)``, the dimension of
  ``{U : J_l U = U J_m}``;
* ``u_pairing(l, m)``, the same count with the leading scalars of blocks
  between equal-size parts removed;
* ``b_poly(l) = prod_s prod_{k=1}^{m_s} (1 - q^k)``, so that
  ``q^{<l,l>} b_l(1/q)`` is the centralizer order of ``I + J_l``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .arith import QPoly, RatFunc


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()
    _mult: dict = field(default=None, compare=False, hash=False, repr=False)  # type: ignore[assignment]

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            parts = tuple(sorted(parts, reverse=True))
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "_mult", dict(Counter(parts)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def multiplicity(self, s: int) -> int:
        return self._mult.get(s, 0)

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(self._mult)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p >= t) for t in range(1, self.parts[0] + 1)))

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


PartitionTuple = tuple[Partition, ...]


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n, parts decreasing, in reverse lexicographic order."""
    if n == 0:
        return (Partition(()),)

    def gen(rem: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, cap), 0, -1):
            for rest in gen(rem - first, first):
                yield (first,) + rest

    return tuple(Partition(p) for p in gen(n, n))


def enumerate_partition_tuples(bound: Sequence[int]) -> Iterator[PartitionTuple]:
    if any(b < 0 for b in bound):
        raise ValueError("bound must be componentwise non-negative")
    per_vertex = [[lam for m in range(b + 1) for lam in partitions(m)] for b in bound]
    for combo in itertools.product(*per_vertex):
        yield tuple(combo)


def min_pairing(lam: Partition, mu: Partition) -> int:
    return sum(min(a, b) for a in lam.parts for b in mu.parts)


def min_pairing_conjugate(lam: Partition) -> int:
    """<lam, lam> computed through the conjugate partition."""
    return sum(c * c for c in lam.conjugate().parts)


def u_pairing(lam: Partition, mu: Partition) -> int:
    overlap = sum(m * mu.multiplicity(s) for s, m in lam._mult.items())
    return min_pairing(lam, mu) - overlap


def multiplicity_vector(tau: Sequence[Partition], s: int) -> tuple[int, ...]:
    if s < 1:
        raise ValueError("part size must be positive")
    return tuple(lam.multiplicity(s) for lam in tau)


def part_sizes(tau: Sequence[Partition]) -> list[int]:
    return sorted({p for lam in tau for p in lam.parts})


@lru_cache(maxsize=None)
def b_poly(lam: Partition) -> QPoly:
    out = QPoly.constant(1)
    for m in lam._mult.values():
        for k in range(1, m + 1):
            out = out * (QPoly.constant(1) - QPoly.monomial(k))
    return out


@lru_cache(maxsize=None)
def centralizer_order(lam: Partition) -> RatFunc:
    """Order of the centralizer of ``I + J_lam`` in GL, as a function of q."""
    return RatFunc.q_power(min_pairing(lam, lam)) * b_poly(lam).reverse_eval_inverse()


def u_exponent(arrows: Sequence[Sequence[int]], tau: Sequence[Partition]) -> int:
    """sum_{i,j} a_ij (|tau_i, tau_j|)."""
    n = len(tau)
    return sum(arrows[i][j] * u_pairing(tau[i], tau[j]) for i in range(n) for j in range(n) if arrows[i][j])


def fixed_point_formula(arrows: Sequence[Sequence[int]], tau: Sequence[Partition], rss: Callable[[tuple[int, ...]], QPoly]) -> QPoly:
    """Semistable fixed points of a unipotent of type tau:
    q^{u_exponent} * prod_s R^ss(d_tau^s)."""
    out = QPoly.monomial(u_exponent(arrows, tau))
    for s in part_sizes(tau):
        out = out * rss(multiplicity_vector(tau, s))
    return out
