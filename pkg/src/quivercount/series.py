"""Truncated power series in X_1..X_n with coefficients in Q(q).

Truncation is a componentwise box: a series over box ``b`` keeps the
coefficients of ``X^beta`` for ``0 <= beta <= b``.  Every operation here
(products, log/exp, Adams operations) only combines coefficients at
``beta <= gamma`` to produce the coefficient at ``gamma``, so results inside
a box never depend on what lies outside it.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .arith import RatFunc, as_ratfunc
from .quiver import DimVector, Quiver, dim_vectors_below, euler_form, height


class TwistConvention(enum.Enum):
    """Exponent t(beta, gamma) in ``X^beta o X^gamma = q^t X^(beta+gamma)``."""

    NEG_G_F = "neg-g-f"  # -<gamma, beta>
    NEG_F_G = "neg-f-g"  # -<beta, gamma>
    G_F = "g-f"  # +<gamma, beta>
    F_G = "f-g"  # +<beta, gamma>

    def exponent(self, quiver: Quiver, beta: Sequence[int], gamma: Sequence[int]) -> int:
        if self is TwistConvention.NEG_G_F:
            return -euler_form(quiver, gamma, beta)
        if self is TwistConvention.NEG_F_G:
            return -euler_form(quiver, beta, gamma)
        if self is TwistConvention.G_F:
            return euler_form(quiver, gamma, beta)
        return euler_form(quiver, beta, gamma)


DEFAULT_TWIST = TwistConvention.NEG_G_F


class BoxMismatch(ValueError):
    pass


class TruncatedSeries:
    __slots__ = ("box", "coeffs")

    def __init__(self, box: Sequence[int], coeffs: Optional[Mapping[Sequence[int], object]] = None):
        self.box: DimVector = tuple(box)
        if any(b < 0 for b in self.box):
            raise ValueError("box components must be non-negative")
        self.coeffs: dict[DimVector, RatFunc] = {}
        for key, c in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != len(self.box) or any(k < 0 or k > b for k, b in zip(key, self.box)):
                raise ValueError(f"monomial {key} outside box {self.box}")
            c = as_ratfunc(c)
            if not c.is_zero():
                self.coeffs[key] = c

    @classmethod
    def one(cls, box: Sequence[int]) -> "TruncatedSeries":
        return cls(box, {(0,) * len(box): 1})

    @classmethod
    def monomial(cls, box: Sequence[int], alpha: Sequence[int], c: object = 1) -> "TruncatedSeries":
        alpha = tuple(alpha)
        if any(a > b for a, b in zip(alpha, box)):
            return cls(box)
        return cls(box, {alpha: c})

    @property
    def zero_key(self) -> DimVector:
        return (0,) * len(self.box)

    def __getitem__(self, alpha: Sequence[int]) -> RatFunc:
        return self.coeffs.get(tuple(alpha), RatFunc.zero())

    def constant_term(self) -> RatFunc:
        return self[self.zero_key]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.box == other.box and self.coeffs == other.coeffs

    def _check(self, other: "TruncatedSeries") -> None:
        if self.box != other.box:
            raise BoxMismatch(f"box mismatch: {self.box} vs {other.box}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return TruncatedSeries(self.box, out)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.box, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, c: object) -> "TruncatedSeries":
        c = as_ratfunc(c)
        return TruncatedSeries(self.box, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def map_coeffs(self, fn: Callable[[DimVector, RatFunc], object]) -> "TruncatedSeries":
        return TruncatedSeries(self.box, {k: fn(k, v) for k, v in self.coeffs.items()})

    def restrict(self, box: Sequence[int]) -> "TruncatedSeries":
        box = tuple(box)
        return TruncatedSeries(box, {k: v for k, v in self.coeffs.items() if all(a <= b for a, b in zip(k, box))})

    def support(self) -> list[DimVector]:
        return sorted(self.coeffs)

    def to_json(self) -> list[dict]:
        return [{"alpha": list(k), "coeff": self.coeffs[k].to_json()} for k in sorted(self.coeffs)]

    @classmethod
    def from_json(cls, box: Sequence[int], data: Iterable[dict]) -> "TruncatedSeries":
        return cls(box, {tuple(d["alpha"]): RatFunc.from_json(d["coeff"]) for d in data})

    def __repr__(self) -> str:
        terms = ", ".join(f"{k}: {self.coeffs[k]}" for k in sorted(self.coeffs))
        return f"TruncatedSeries(box={self.box}, {{{terms}}})"


def _product(a: TruncatedSeries, b: TruncatedSeries, weight: Optional[Callable[[DimVector, DimVector], object]] = None) -> TruncatedSeries:
    a._check(b)
    box = a.box
    out: dict[DimVector, RatFunc] = {}
    for ka, ca in a.coeffs.items():
        for kb, cb in b.coeffs.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            if any(k > m for k, m in zip(key, box)):
                continue
            term = ca * cb
            if weight is not None:
                term = term * weight(ka, kb)
            out[key] = out[key] + term if key in out else term
    return TruncatedSeries(box, out)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return _product(a, b)


def twisted_mul(a: TruncatedSeries, b: TruncatedSeries, quiver: Quiver, convention: TwistConvention = DEFAULT_TWIST) -> TruncatedSeries:
    def weight(beta: DimVector, gamma: DimVector) -> RatFunc:
        return RatFunc.q_power(convention.exponent(quiver, beta, gamma))

    return _product(a, b, weight)


def twisted_inverse(s: TruncatedSeries, quiver: Quiver, convention: TwistConvention = DEFAULT_TWIST) -> TruncatedSeries:
    """Right inverse T of s in the twisted algebra (s o T = 1), degree by degree.

    The constant term must be 1; then the inverse is unique and two-sided.
    """
    if s.constant_term() != 1:
        raise ValueError("twisted inverse needs constant term 1")
    order = sorted(dim_vectors_below(s.box), key=lambda v: (height(v), v))
    inv: dict[DimVector, RatFunc] = {}
    zero = s.zero_key
    inv[zero] = RatFunc.one()
    for gamma in order[1:]:
        acc = RatFunc.zero()
        for beta, sb in s.coeffs.items():
            if beta == zero or any(x > y for x, y in zip(beta, gamma)):
                continue
            rest = tuple(y - x for x, y in zip(beta, gamma))
            t = inv.get(rest)
            if t is None or t.is_zero():
                continue
            acc = acc + sb * t * RatFunc.q_power(convention.exponent(quiver, beta, rest))
        inv[gamma] = -acc
    return TruncatedSeries(s.box, inv)


def formal_log(f: TruncatedSeries) -> TruncatedSeries:
    if f.constant_term() != 1:
        raise ValueError("log requires unit constant term")
    x = f - TruncatedSeries.one(f.box)
    result = TruncatedSeries(f.box)
    power = x
    for i in range(1, height(f.box) + 1):
        if not power.coeffs:
            break
        c = Fraction((-1) ** (i - 1), i)
        result = result + power.scale(c)
        power = power * x
    return result


def formal_exp(f: TruncatedSeries) -> TruncatedSeries:
    if not f.constant_term().is_zero():
        raise ValueError("exp requires zero constant term")
    result = TruncatedSeries.one(f.box)
    power = TruncatedSeries.one(f.box)
    for i in range(1, height(f.box) + 1):
        power = power * f
        if not power.coeffs:
            break
        result = result + power.scale(Fraction(1, math.factorial(i)))
    return result


def adams_psi(f: TruncatedSeries, k: int) -> TruncatedSeries:
    if k < 1:
        raise ValueError("Adams operation index must be positive")
    if k == 1:
        return f
    out = {}
    for key, c in f.coeffs.items():
        new = tuple(k * a for a in key)
        if all(a <= b for a, b in zip(new, f.box)):
            out[new] = c.subst_power(k)
    return TruncatedSeries(f.box, out)


def mobius(k: int) -> int:
    if k < 1:
        raise ValueError("Möbius function needs a positive argument")
    result, n, p = 1, k, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _k_bound(box: Sequence[int]) -> int:
    return max(box) if box else 0


def big_exp(f: TruncatedSeries) -> TruncatedSeries:
    """Plethystic exponential exp(sum_k psi_k(f)/k)."""
    if not f.constant_term().is_zero():
        raise ValueError("Exp requires zero constant term")
    inner = TruncatedSeries(f.box)
    for k in range(1, _k_bound(f.box) + 1):
        inner = inner + adams_psi(f, k).scale(Fraction(1, k))
    return formal_exp(inner)


def big_log(f: TruncatedSeries) -> TruncatedSeries:
    """Plethystic logarithm sum_k mobius(k)/k psi_k(log f)."""
    if f.constant_term() != 1:
        raise ValueError("Log requires unit constant term")
    lg = formal_log(f)
    out = TruncatedSeries(f.box)
    for k in range(1, _k_bound(f.box) + 1):
        m = mobius(k)
        if m:
            out = out + adams_psi(lg, k).scale(Fraction(m, k))
    return out
