"""Semistable representation counts via the Harder–Narasimhan recursion.

Two independent evaluations of ``R^ss_mu(alpha, q)``:

``rss_direct``
    the alternating sum over slope-filtered decompositions
    ``alpha = alpha^1 + ... + alpha^s`` (every proper prefix has slope above
    ``mu(alpha)``), each weighted by ``(-1)^{s-1} q^{-sum_{i<j}<alpha^j, alpha^i>}``.

``rss_recursive``
    peels off HN strata: ``R(alpha)/|GL(alpha)|`` is the sum over HN types
    (strictly decreasing slopes) of ``q^{-sum_{i<j}<alpha^j,alpha^i>}`` times
    the semistable quotients of the pieces, and the memoized solution for the
    top stratum gives the semistable count.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .arith import QPoly, RatFunc, to_polynomial
from .quiver import (
    DimVector,
    Quiver,
    Stability,
    dim_vectors_below,
    euler_form,
    gl_order,
    height,
    in_delta_plus,
    rep_exponent,
    slope,
)


def _sub(a: Sequence[int], b: Sequence[int]) -> DimVector:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Sequence[int], b: Sequence[int]) -> DimVector:
    return tuple(x + y for x, y in zip(a, b))


def _nonzero_below(bound: Sequence[int]) -> list[DimVector]:
    return [v for v in dim_vectors_below(bound) if any(v)]


def hn_decompositions(alpha: Sequence[int], mu: Optional[Fraction], theta: Stability) -> Iterator[tuple[DimVector, ...]]:
    """Ordered decompositions of alpha whose proper prefix sums have slope > mu(alpha).

    ``mu`` defaults to ``slope(theta, alpha)``; passing it explicitly only
    matters for vectors outside the slope-mu ray, where the sum is unused.
    """
    alpha = tuple(alpha)
    if not any(alpha):
        raise ValueError("decompositions of the zero vector are not defined")
    if mu is None:
        mu = slope(theta, alpha)
    zero = (0,) * len(alpha)

    def rec(prefix: DimVector, rest: DimVector) -> Iterator[tuple[DimVector, ...]]:
        for part in _nonzero_below(rest):
            remaining = _sub(rest, part)
            if not any(remaining):
                yield (part,)
                continue
            new_prefix = _add(prefix, part)
            if slope(theta, new_prefix) > mu:
                for tail in rec(new_prefix, remaining):
                    yield (part,) + tail

    yield from rec(zero, alpha)


class HNContext:
    """Counting context for one (quiver, stability, slope) triple.

    Memo tables are write-once: a key is computed, then stored; racing
    threads may both compute a key but store identical values.
    """

    def __init__(self, quiver: Quiver, theta: Stability, mu: Optional[Fraction] = None, *, alpha: Optional[Sequence[int]] = None):
        if len(theta.theta) != quiver.n:
            raise ValueError("stability length does not match quiver")
        if mu is None:
            if alpha is None:
                raise ValueError("need either mu or a target dimension vector")
            mu = slope(theta, alpha)
        self.quiver = quiver
        self.theta = theta
        self.mu = Fraction(mu)
        self._lock = threading.Lock()
        self._ss_quotient: dict[DimVector, RatFunc] = {}
        self._strata: dict[tuple[DimVector, Optional[Fraction]], RatFunc] = {}
        self._binom: dict[tuple[DimVector, DimVector], QPoly] = {}
        self._rss: dict[DimVector, QPoly] = {}

    # -- shared helpers -------------------------------------------------

    def _store(self, table: dict, key, value):
        with self._lock:
            return table.setdefault(key, value)

    def rep_over_gl(self, beta: Sequence[int]) -> RatFunc:
        return RatFunc(QPoly.monomial(rep_exponent(self.quiver, beta)), gl_order(beta))

    def in_delta(self, alpha: Sequence[int]) -> bool:
        return in_delta_plus(self.theta, self.mu, alpha)

    # -- direct alternating sum ----------------------------------------

    def _gl_binomial(self, rest: DimVector, part: DimVector) -> QPoly:
        key = (rest, part)
        cached = self._binom.get(key)
        if cached is not None:
            return cached
        num = gl_order(rest)
        den = gl_order(part) * gl_order(_sub(rest, part))
        quot, rem = num.divmod(den)
        if not rem.is_zero():
            raise ArithmeticError(f"GL quotient not polynomial for {rest} - {part}")
        return self._store(self._binom, key, quot)

    def rss_direct(self, alpha: Sequence[int], *, reverse_twist: bool = False) -> RatFunc:
        """R^ss_mu(alpha, q) from the alternating decomposition sum.

        ``reverse_twist`` swaps the Euler-form arguments in the q-exponent;
        it exists only so tests can show the wrong ordering is detected.
        """
        alpha = tuple(alpha)
        if not any(alpha):
            return RatFunc.one()
        if not self.in_delta(alpha):
            return RatFunc.zero()
        q = self.quiver
        mu_alpha = slope(self.theta, alpha)
        # Laurent accumulator: exponent -> integer coefficient of
        # |GL(alpha)| * sum (-1)^{s-1} q^{-twist} prod R(a^i)/|GL(a^i)|
        acc: dict[int, Fraction] = {}

        def leaf(sign: int, shift: int, poly: QPoly) -> None:
            for k, c in enumerate(poly.coeffs):
                if c:
                    acc[k + shift] = acc.get(k + shift, 0) + sign * c

        def rec(prefix: DimVector, rest: DimVector, sign: int, shift: int, poly: QPoly) -> None:
            for part in _nonzero_below(rest):
                remaining = _sub(rest, part)
                if reverse_twist:
                    twist = euler_form(q, prefix, part)
                else:
                    twist = euler_form(q, part, prefix)
                new_shift = shift + rep_exponent(q, part) - twist
                new_poly = poly * self._gl_binomial(rest, part)
                if not any(remaining):
                    leaf(sign, new_shift, new_poly)
                    continue
                new_prefix = _add(prefix, part)
                if slope(self.theta, new_prefix) > mu_alpha:
                    rec(new_prefix, remaining, -sign, new_shift, new_poly)

        rec((0,) * len(alpha), alpha, 1, 0, QPoly.constant(1))
        return _laurent_to_ratfunc(acc)

    # -- memoized HN-strata recursion ----------------------------------

    def semistable_quotient(self, beta: Sequence[int]) -> RatFunc:
        """R^ss(beta)/|GL(beta)| for beta semistable at its own slope."""
        beta = tuple(beta)
        cached = self._ss_quotient.get(beta)
        if cached is not None:
            return cached
        if not any(beta):
            return self._store(self._ss_quotient, beta, RatFunc.one())
        total = self.rep_over_gl(beta)
        q = self.quiver
        for first in _nonzero_below(beta):
            if first == beta:
                continue
            rest = _sub(beta, first)
            s_first = slope(self.theta, first)
            tail = self._strata_sum(rest, s_first)
            if tail.is_zero():
                continue
            twist = euler_form(q, rest, first)
            total = total - self.semistable_quotient(first) * RatFunc.q_power(-twist) * tail
        return self._store(self._ss_quotient, beta, total)

    def _strata_sum(self, gamma: DimVector, below: Optional[Fraction]) -> RatFunc:
        """Sum over HN types of gamma whose slopes all lie strictly below ``below``."""
        if not any(gamma):
            return RatFunc.one()
        key = (gamma, below)
        cached = self._strata.get(key)
        if cached is not None:
            return cached
        q = self.quiver
        total = RatFunc.zero()
        for first in _nonzero_below(gamma):
            s_first = slope(self.theta, first)
            if below is not None and not s_first < below:
                continue
            rest = _sub(gamma, first)
            tail = self._strata_sum(rest, s_first)
            if tail.is_zero():
                continue
            twist = euler_form(q, rest, first)
            total = total + self.semistable_quotient(first) * RatFunc.q_power(-twist) * tail
        return self._store(self._strata, key, total)

    def rss_recursive(self, alpha: Sequence[int]) -> RatFunc:
        alpha = tuple(alpha)
        if not any(alpha):
            return RatFunc.one()
        if not self.in_delta(alpha):
            return RatFunc.zero()
        return self.semistable_quotient(alpha) * gl_order(alpha)

    def rss(self, alpha: Sequence[int]) -> QPoly:
        """R^ss_mu(alpha, q) as a polynomial (memoized recursion)."""
        alpha = tuple(alpha)
        cached = self._rss.get(alpha)
        if cached is not None:
            return cached
        poly = to_polynomial(self.rss_recursive(alpha))
        if not poly.is_integral():
            raise ArithmeticError(f"R^ss{alpha} has non-integer coefficients: {poly}")
        return self._store(self._rss, alpha, poly)


def _laurent_to_ratfunc(acc: dict[int, Fraction]) -> RatFunc:
    terms = {k: c for k, c in acc.items() if c}
    if not terms:
        return RatFunc.zero()
    low = min(terms)
    shift = -low if low < 0 else 0
    coeffs = [Fraction(0)] * (max(terms) + shift + 1)
    for k, c in terms.items():
        coeffs[k + shift] = Fraction(c)
    return RatFunc(QPoly(coeffs), QPoly.monomial(shift))


def rss_direct(ctx: HNContext, alpha: Sequence[int]) -> RatFunc:
    return ctx.rss_direct(alpha)


def rss_recursive(ctx: HNContext, alpha: Sequence[int]) -> RatFunc:
    return ctx.rss_recursive(alpha)
