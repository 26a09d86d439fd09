"""Quivers, dimension vectors and stability data."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .arith import QPoly

DimVector = tuple[int, ...]


class ConfigError(ValueError):
    """Malformed quiver / stability / job description."""


@dataclass(frozen=True)
class Quiver:
    """Quiver on vertices ``0..n-1`` with ``arrows[i][j]`` arrows from i to j."""

    n: int
    arrows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError("quiver needs at least one vertex")
        rows = tuple(tuple(int(a) for a in row) for row in self.arrows)
        if len(rows) != self.n or any(len(row) != self.n for row in rows):
            raise ConfigError("arrows must be n×n")
        if any(a < 0 for row in rows for a in row):
            raise ConfigError("arrow counts must be non-negative")
        object.__setattr__(self, "arrows", rows)

    @classmethod
    def from_matrix(cls, arrows: Sequence[Sequence[int]]) -> "Quiver":
        return cls(len(arrows), tuple(tuple(r) for r in arrows))

    @classmethod
    def jordan(cls) -> "Quiver":
        return cls(1, ((1,),))

    @classmethod
    def kronecker(cls) -> "Quiver":
        return cls(2, ((0, 2), (0, 0)))

    @classmethod
    def from_json(cls, data: dict) -> "Quiver":
        try:
            n = data["n"]
            arrows = data["arrows"]
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"quiver needs 'n' and 'arrows': {exc}") from None
        if not isinstance(arrows, list) or not all(isinstance(r, list) for r in arrows):
            raise ConfigError("arrows must be n×n")
        return cls(int(n), tuple(tuple(r) for r in arrows))

    def to_json(self) -> dict:
        return {"n": self.n, "arrows": [list(r) for r in self.arrows]}

    def arrow_list(self) -> list[tuple[int, int]]:
        """One (source, target) pair per arrow, in row-major order."""
        return [(i, j) for i in range(self.n) for j in range(self.n) for _ in range(self.arrows[i][j])]

    def __hash__(self) -> int:
        return hash((self.n, self.arrows))


@dataclass(frozen=True)
class Stability:
    theta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(int(t) for t in self.theta))

    @classmethod
    def trivial(cls, n: int) -> "Stability":
        return cls((0,) * n)

    def value(self, alpha: Sequence[int]) -> int:
        return sum(t * a for t, a in zip(self.theta, alpha))

    def slope(self, alpha: Sequence[int]) -> Fraction:
        return slope(self, alpha)

    def is_trivial(self) -> bool:
        return not any(self.theta)


def _check_len(q: Quiver, *vecs: Sequence[int]) -> None:
    for v in vecs:
        if len(v) != q.n:
            raise ValueError(f"vector {tuple(v)} has length {len(v)}, quiver has {q.n} vertices")


def euler_form(q: Quiver, alpha: Sequence[int], beta: Sequence[int]) -> int:
    _check_len(q, alpha, beta)
    n = q.n
    s = sum(alpha[i] * beta[i] for i in range(n))
    for i in range(n):
        if alpha[i]:
            row = q.arrows[i]
            for j in range(n):
                if row[j]:
                    s -= row[j] * alpha[i] * beta[j]
    return s


def rep_exponent(q: Quiver, alpha: Sequence[int]) -> int:
    return sum(q.arrows[i][j] * alpha[i] * alpha[j] for i in range(q.n) for j in range(q.n))


def rep_count(q: Quiver, alpha: Sequence[int]) -> QPoly:
    _check_len(q, alpha)
    return QPoly.monomial(rep_exponent(q, alpha))


@lru_cache(maxsize=None)
def _gl_n(m: int) -> QPoly:
    out = QPoly.constant(1)
    for k in range(m):
        out = out * (QPoly.monomial(m) - QPoly.monomial(k))
    return out


def gl_order(alpha: Sequence[int]) -> QPoly:
    out = QPoly.constant(1)
    for a in alpha:
        if a:
            out = out * _gl_n(a)
    return out


def height(alpha: Sequence[int]) -> int:
    return sum(alpha)


def slope(theta: Stability, alpha: Sequence[int]) -> Fraction:
    ht = height(alpha)
    if ht == 0:
        raise ValueError("slope of zero vector")
    return Fraction(theta.value(alpha), ht)


def in_delta_plus(theta: Stability, mu: Fraction, alpha: Sequence[int]) -> bool:
    if any(a < 0 for a in alpha):
        return False
    return theta.value(alpha) == mu * height(alpha)


def dim_vectors_below(bound: Sequence[int]) -> list[DimVector]:
    """All vectors 0 <= beta <= bound, in lexicographic order."""
    return [tuple(v) for v in itertools.product(*(range(b + 1) for b in bound))]

