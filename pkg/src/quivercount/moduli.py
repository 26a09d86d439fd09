"""Generating functions and the counts of absolutely indecomposable classes.

``P`` is the series whose coefficient at ``X^alpha`` sums, over unipotent
conjugacy classes of ``GL(alpha)``, the number of fixed semistable
representations divided by the centralizer order.  It is built two ways
(sum over partition tuples, sum over tuples of dimension vectors) and the
two must agree.  ``log P`` gives ``H(alpha, q)`` and Möbius inversion gives
``A^ss_mu(alpha, q)``.

``A^s_mu`` comes from the inverse of the semistable quotient series in the
Euler-form twisted algebra.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterator, Optional, Sequence

from .arith import NotAPolynomialError, QPoly, RatFunc, to_polynomial
from .hn import HNContext
from .partitions import (
    centralizer_order,
    enumerate_partition_tuples,
    multiplicity_vector,
    part_sizes,
    u_pairing,
)
from .quiver import DimVector, Quiver, Stability, dim_vectors_below, euler_form, gl_order, in_delta_plus, slope
from .series import (
    DEFAULT_TWIST,
    TruncatedSeries,
    TwistConvention,
    big_exp,
    big_log,
    formal_log,
    mobius,
    twisted_inverse,
)

_Q_MINUS_1 = RatFunc(QPoly((-1, 1)))
_ONE_MINUS_Q = RatFunc(QPoly((1, -1)))


@dataclass
class CountJob:
    quiver: Quiver
    theta: Stability
    mu: Fraction
    box: DimVector
    _ctx: Optional[HNContext] = field(default=None, init=False, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        self.box = tuple(self.box)
        self.mu = Fraction(self.mu)
        if len(self.box) != self.quiver.n or len(self.theta.theta) != self.quiver.n:
            raise ValueError("box and stability must have one entry per vertex")

    @classmethod
    def for_target(cls, quiver: Quiver, theta: Stability, alpha: Sequence[int], box: Optional[Sequence[int]] = None) -> "CountJob":
        return cls(quiver, theta, slope(theta, alpha), tuple(box if box is not None else alpha))

    @property
    def ctx(self) -> HNContext:
        if self._ctx is None:
            self._ctx = HNContext(self.quiver, self.theta, self.mu)
        return self._ctx

    def in_delta(self, alpha: Sequence[int]) -> bool:
        return in_delta_plus(self.theta, self.mu, alpha)

    def check_inside(self, alpha: Sequence[int]) -> None:
        if len(alpha) != len(self.box) or any(a > b for a, b in zip(alpha, self.box)):
            raise ValueError(f"{tuple(alpha)} lies outside the job box {self.box}")

    def P(self, form: str = "tuple") -> TruncatedSeries:
        key = ("P", form)
        if key not in self._cache:
            builder = {"tuple": build_P_tuple_form, "partition": build_P_partition_form}[form]
            self._cache[key] = builder(self)
        return self._cache[key]

    def H(self) -> dict[DimVector, RatFunc]:
        if "H" not in self._cache:
            self._cache["H"] = h_coefficients(self.P())
        return self._cache["H"]

    def describe(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "theta": list(self.theta.theta),
            "mu": str(self.mu),
            "box": list(self.box),
        }


@dataclass
class CountResult:
    alpha: DimVector
    a_ss: QPoly
    h: RatFunc
    r_ss: QPoly
    a_s: Optional[QPoly] = None

    def to_json(self, latex: bool = False) -> dict:
        out = {
            "alpha": list(self.alpha),
            "a_ss": self.a_ss.to_json(),
            "h": self.h.to_json(),
            "r_ss": self.r_ss.to_json(),
            "a_s": self.a_s.to_json() if self.a_s is not None else None,
            "pretty": {"a_ss": str(self.a_ss), "r_ss": str(self.r_ss)},
        }
        if latex:
            out["latex"] = {"a_ss": self.a_ss.latex(), "r_ss": self.r_ss.latex()}
            if self.a_s is not None:
                out["latex"]["a_s"] = self.a_s.latex()
        return out


def _add_coeff(out: dict, key: DimVector, value: RatFunc) -> None:
    if value.is_zero():
        return
    out[key] = out[key] + value if key in out else value


def build_P_partition_form(job: CountJob) -> TruncatedSeries:
    quiver, ctx = job.quiver, job.ctx
    n = quiver.n
    out: dict[DimVector, RatFunc] = {}
    for tau in enumerate_partition_tuples(job.box):
        numerator = QPoly.constant(1)
        for s in part_sizes(tau):
            numerator = numerator * ctx.rss(multiplicity_vector(tau, s))
            if numerator.is_zero():
                break
        if numerator.is_zero():
            continue
        exponent = sum(
            quiver.arrows[i][j] * u_pairing(tau[i], tau[j])
            for i in range(n)
            for j in range(n)
            if quiver.arrows[i][j]
        )
        denominator = reduce(lambda acc, lam: acc * centralizer_order(lam), tau, RatFunc.one())
        term = RatFunc(numerator) * RatFunc.q_power(exponent) / denominator
        _add_coeff(out, tuple(lam.size for lam in tau), term)
    return TruncatedSeries(job.box, out)


def _weighted_tuples(box: DimVector) -> Iterator[tuple[DimVector, ...]]:
    """Tuples (a^1..a^r), r >= 1, a^r != 0, with sum_s s*a^s <= box."""
    zero = (0,) * len(box)
    top = max(box) if box else 0

    def fill(s: int, room: DimVector) -> Iterator[tuple[DimVector, ...]]:
        # choose a^s, ..., a^1 from the remaining room
        if s == 0:
            yield ()
            return
        for a in dim_vectors_below(tuple(r // s for r in room)):
            left = tuple(r - s * x for r, x in zip(room, a))
            for head in fill(s - 1, left):
                yield head + (a,)

    for r in range(1, top + 1):
        for last in dim_vectors_below(tuple(b // r for b in box)):
            if last == zero:
                continue
            left = tuple(b - r * x for b, x in zip(box, last))
            for head in fill(r - 1, left):
                yield head + (last,)


def build_P_tuple_form(job: CountJob) -> TruncatedSeries:
    quiver, ctx = job.quiver, job.ctx
    out: dict[DimVector, RatFunc] = {tuple([0] * quiver.n): RatFunc.one()}
    quotients: dict[DimVector, RatFunc] = {}

    def quotient(a: DimVector) -> RatFunc:
        if a not in quotients:
            r = ctx.rss(a)
            quotients[a] = RatFunc(r, gl_order(a)) if not r.is_zero() else RatFunc.zero()
        return quotients[a]

    for alphas in _weighted_tuples(job.box):
        term = RatFunc.one()
        for a in alphas:
            term = term * quotient(a)
            if term.is_zero():
                break
        if term.is_zero():
            continue
        exponent = 0
        beta = [0] * quiver.n
        for a in reversed(alphas):
            beta = [b + x for b, x in zip(beta, a)]
            exponent += euler_form(quiver, a, a) - euler_form(quiver, beta, beta)
        key = tuple(sum((s + 1) * a[i] for s, a in enumerate(alphas)) for i in range(quiver.n))
        _add_coeff(out, key, term * RatFunc.q_power(exponent))
    return TruncatedSeries(job.box, out)


def h_coefficients(P: TruncatedSeries) -> dict[DimVector, RatFunc]:
    lg = formal_log(P)
    return {k: v for k, v in lg.coeffs.items() if any(k)}


def _check_integral(poly: QPoly, what: str) -> QPoly:
    if not poly.is_integral():
        raise ArithmeticError(f"{what} has non-integer coefficients: {poly}")
    return poly


def a_ss(job: CountJob, alpha: Sequence[int]) -> QPoly:
    alpha = tuple(alpha)
    if not any(alpha):
        raise ValueError("A^ss is defined for nonzero dimension vectors")
    job.check_inside(alpha)
    key = ("a_ss", alpha)
    if key in job._cache:
        return job._cache[key]
    if not job.in_delta(alpha):
        job._cache[key] = QPoly()
        return job._cache[key]
    H = job.H()
    g = reduce(math.gcd, alpha)
    total = RatFunc.zero()
    for d in range(1, g + 1):
        if g % d:
            continue
        m = mobius(d)
        h = H.get(tuple(a // d for a in alpha))
        if m and h is not None:
            total = total + h.subst_power(d) * Fraction(m, d)
    job._cache[key] = _check_integral(to_polynomial(total * _Q_MINUS_1), f"A^ss{alpha}")
    return job._cache[key]


@dataclass
class IdentityReport:
    equal: bool
    checked: int
    first_mismatch: Optional[DimVector] = None
    lhs: Optional[RatFunc] = None
    rhs: Optional[RatFunc] = None

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "checked": self.checked,
            "first_mismatch": list(self.first_mismatch) if self.first_mismatch else None,
            "lhs": self.lhs.to_json() if self.lhs is not None else None,
            "rhs": self.rhs.to_json() if self.rhs is not None else None,
        }


def compare_series(lhs: TruncatedSeries, rhs: TruncatedSeries) -> IdentityReport:
    keys = dim_vectors_below(lhs.box)
    for k in keys:
        if lhs[k] != rhs[k]:
            return IdentityReport(False, len(keys), k, lhs[k], rhs[k])
    return IdentityReport(True, len(keys))


def exp_side(job: CountJob, a_values: Optional[dict[DimVector, QPoly]] = None) -> TruncatedSeries:
    """Exp((q-1)^{-1} sum A^ss(alpha) X^alpha) over the job box."""
    coeffs = {}
    for alpha in dim_vectors_below(job.box):
        if not any(alpha) or not job.in_delta(alpha):
            continue
        a = a_values[alpha] if a_values is not None and alpha in a_values else a_ss(job, alpha)
        if not a.is_zero():
            coeffs[alpha] = RatFunc(a) / _Q_MINUS_1
    return big_exp(TruncatedSeries(job.box, coeffs))


def verify_exp_identity(job: CountJob, a_values: Optional[dict[DimVector, QPoly]] = None, form: str = "partition") -> IdentityReport:
    return compare_series(job.P(form), exp_side(job, a_values))


def verify_form_equality(job: CountJob) -> IdentityReport:
    return compare_series(job.P("partition"), job.P("tuple"))


def semistable_quotient_series(job: CountJob) -> TruncatedSeries:
    coeffs = {}
    for alpha in dim_vectors_below(job.box):
        if job.in_delta(alpha):
            r = job.ctx.rss(alpha)
            if not r.is_zero():
                coeffs[alpha] = RatFunc(r, gl_order(alpha))
    return TruncatedSeries(job.box, coeffs)


class TwistConventionError(NotAPolynomialError):
    def __init__(self, denominator: QPoly, convention: TwistConvention, alpha: DimVector):
        ValueError.__init__(self, f"A^s{alpha} is not a polynomial under twist {convention.value} (denominator {denominator}); convention likely wrong")
        self.denominator = denominator
        self.convention = convention


def stable_series(job: CountJob, convention: TwistConvention = DEFAULT_TWIST) -> TruncatedSeries:
    """(1 - q) Log of the twisted inverse of the semistable quotient series."""
    key = ("stable", convention)
    if key not in job._cache:
        inv = twisted_inverse(semistable_quotient_series(job), job.quiver, convention)
        job._cache[key] = big_log(inv).scale(_ONE_MINUS_Q)
    return job._cache[key]


def a_stable(job: CountJob, alpha: Sequence[int], convention: TwistConvention = DEFAULT_TWIST) -> QPoly:
    alpha = tuple(alpha)
    if not any(alpha):
        raise ValueError("A^s is defined for nonzero dimension vectors")
    job.check_inside(alpha)
    if not job.in_delta(alpha):
        return QPoly()
    value = stable_series(job, convention)[alpha]
    try:
        return to_polynomial(value)
    except NotAPolynomialError as exc:
        raise TwistConventionError(exc.denominator, convention, alpha) from None


def count_result(job: CountJob, alpha: Sequence[int], convention: Optional[TwistConvention] = None) -> CountResult:
    alpha = tuple(alpha)
    return CountResult(
        alpha=alpha,
        a_ss=a_ss(job, alpha),
        h=job.H().get(alpha, RatFunc.zero()),
        r_ss=job.ctx.rss(alpha),
        a_s=a_stable(job, alpha, convention) if convention is not None else None,
    )


@dataclass
class ScanRow:
    label: str
    alpha: DimVector
    a_ss: QPoly
    integral: bool
    nonnegative: bool

    def to_json(self) -> dict:
        return {
            "job": self.label,
            "alpha": list(self.alpha),
            "a_ss": str(self.a_ss),
            "in_Z[q]": self.integral,
            "in_N[q]": self.integral and self.nonnegative,
        }


@dataclass
class ScanReport:
    rows: list[ScanRow]

    @property
    def violations(self) -> list[ScanRow]:
        return [r for r in self.rows if not (r.integral and r.nonnegative)]

    @property
    def all_nonnegative(self) -> bool:
        return not self.violations

    def table(self) -> str:
        lines = [f"{'job':<24} {'alpha':<14} {'Z[q]':<5} {'N[q]':<5} A^ss"]
        for r in self.rows:
            lines.append(f"{r.label:<24} {str(r.alpha):<14} {str(r.integral):<5} {str(r.integral and r.nonnegative):<5} {r.a_ss}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "rows": [r.to_json() for r in self.rows],
            "violations": [r.to_json() for r in self.violations],
        }


def positivity_scan(jobs: Sequence[CountJob], alphas: Sequence[Sequence[Sequence[int]]], labels: Optional[Sequence[str]] = None) -> ScanReport:
    """Tabulate whether each A^ss lies in Z[q] and N[q].  Reports; never raises on a violation."""
    rows = []
    for idx, (job, targets) in enumerate(zip(jobs, alphas)):
        label = labels[idx] if labels else f"job{idx}"
        for alpha in targets:
            alpha = tuple(alpha)
            poly = a_ss(job, alpha)
            rows.append(ScanRow(label, alpha, poly, poly.is_integral(), poly.is_nonnegative()))
    return ScanReport(rows)


def kac_polynomial(quiver: Quiver, alpha: Sequence[int], box: Optional[Sequence[int]] = None) -> QPoly:
    job = CountJob(quiver, Stability.trivial(quiver.n), Fraction(0), tuple(box if box is not None else alpha))
    return a_ss(job, alpha)
