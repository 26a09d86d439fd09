"""Exact arithmetic in one variable q over the rationals.

`QPoly` is a dense univariate polynomial with `Fraction` coefficients and
`RatFunc` is a reduced quotient of two of them with a monic denominator, so
equality of rational functions is structural.  Negative powers of q are
plain `RatFunc` values with denominator ``q**k``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class QPoly:
    """Dense polynomial in q, coefficients listed by ascending degree."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs: tuple[Fraction, ...] = _trim([Fraction(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...]) -> "QPoly":
        p = cls.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "QPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> "QPoly":
        if degree < 0:
            raise ValueError("negative degree")
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == QPoly.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __neg__(self) -> "QPoly":
        return QPoly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other: "QPoly | Scalar") -> "QPoly":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly._raw(_trim(out))

    __radd__ = __add__

    def __sub__(self, other: "QPoly | Scalar") -> "QPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> "QPoly":
        return _as_poly(other) - self

    def __mul__(self, other: "QPoly | Scalar") -> "QPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return QPoly._raw(())
            return QPoly._raw(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly._raw(_trim(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = QPoly.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("zero divisor")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) <= db:
            return QPoly._raw(()), self
        inv_lead = 1 / other.lead
        quot = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                c = c * inv_lead
                quot[k - db] = c
                off = k - db
                for j, y in enumerate(bc):
                    rem[off + j] -= c * y
        return QPoly._raw(_trim(quot)), QPoly._raw(_trim(rem[:db]))

    def __floordiv__(self, other: "QPoly") -> "QPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "QPoly") -> "QPoly":
        return self.divmod(other)[1]

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        lead = self.lead
        if lead == 1:
            return self
        return QPoly._raw(tuple(c / lead for c in self.coeffs))

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def subst_power(self, d: int) -> "QPoly":
        """Return p(q**d)."""
        if d < 1:
            raise ValueError("substitution exponent must be positive")
        if d == 1 or self.is_constant():
            return self
        out = [Fraction(0)] * (d * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[i * d] = c
        return QPoly._raw(tuple(out))

    def reverse_eval_inverse(self) -> "RatFunc":
        """Return p(1/q) as a rational function."""
        if self.is_zero():
            return RatFunc.zero()
        n = self.degree
        return RatFunc(QPoly(reversed(self.coeffs)), QPoly.monomial(n))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "QPoly":
        return cls(Fraction(s) for s in data)

    def __repr__(self) -> str:
        return f"QPoly({self})"

    def __str__(self) -> str:
        return _format(self.coeffs, descending=False)

    def latex(self) -> str:
        return _format(self.coeffs, descending=True, latex=True)


def _as_poly(x: "QPoly | Scalar") -> QPoly:
    return x if isinstance(x, QPoly) else QPoly.constant(x)


def _format(coeffs: Sequence[Fraction], descending: bool, latex: bool = False) -> str:
    if not coeffs:
        return "0"
    order = range(len(coeffs) - 1, -1, -1) if descending else range(len(coeffs))
    terms = []
    for k in order:
        c = coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if latex and a.denominator != 1:
            mag = rf"\frac{{{a.numerator}}}{{{a.denominator}}}"
        else:
            mag = str(a)
        if k == 0:
            body = mag
        else:
            var = "q" if k == 1 else (f"q^{{{k}}}" if latex else f"q^{k}")
            body = var if a == 1 else (f"{mag}{var}" if latex else f"{mag}*{var}")
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd; gcd(0, 0) is 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


_ONE = QPoly.constant(1)


class RatFunc:
    """Element of Q(q) kept as num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: "QPoly | Scalar", den: "QPoly | Scalar" = 1, *, reduced: bool = False):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero divisor")
        if not reduced:
            num, den = _canonical(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls(QPoly(), _ONE, reduced=True)

    @classmethod
    def one(cls) -> "RatFunc":
        return cls(_ONE, _ONE, reduced=True)

    @classmethod
    def q_power(cls, k: int) -> "RatFunc":
        """q**k for any integer k."""
        if k >= 0:
            return cls(QPoly.monomial(k), _ONE, reduced=True)
        return cls(_ONE, QPoly.monomial(-k), reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (QPoly, int, Fraction)):
            return self.den.is_constant() and self.num == _as_poly(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduced=True)

    def __add__(self, other: "RatFunc | QPoly | Scalar") -> "RatFunc":
        other = as_ratfunc(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        if self.den.is_constant():
            return RatFunc(self.num * other.den + other.num, other.den, reduced=True)
        if other.den.is_constant():
            return RatFunc(self.num + other.num * self.den, self.den, reduced=True)
        g = poly_gcd(self.den, other.den)
        if g.is_constant():
            return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den, reduced=True)
        da, db = self.den // g, other.den // g
        return RatFunc(self.num * db + other.num * da, da * other.den)

    __radd__ = __add__

    def __sub__(self, other: "RatFunc | QPoly | Scalar") -> "RatFunc":
        return self + (-as_ratfunc(other))

    def __rsub__(self, other: "QPoly | Scalar") -> "RatFunc":
        return as_ratfunc(other) - self

    def __mul__(self, other: "RatFunc | QPoly | Scalar") -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc.zero()
            return RatFunc(self.num * other, self.den, reduced=True)
        other = as_ratfunc(other)
        if self.is_zero() or other.is_zero():
            return RatFunc.zero()
        # cross-cancel before multiplying keeps the result reduced
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = (self.num // g1, other.den // g1) if not g1.is_constant() else (self.num, other.den)
        n2, d1 = (other.num // g2, self.den // g2) if not g2.is_constant() else (other.num, self.den)
        num, den = n1 * n2, d1 * d2
        lead = den.lead
        if lead != 1:
            num, den = num * (1 / lead), den * (1 / lead)
        return RatFunc(num, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("zero divisor")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: "RatFunc | QPoly | Scalar") -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("zero divisor")
            return RatFunc(self.num * (1 / Fraction(other)), self.den, reduced=True)
        return self * as_ratfunc(other).inverse()

    def __rtruediv__(self, other: "QPoly | Scalar") -> "RatFunc":
        return as_ratfunc(other) / self

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, reduced=True)

    def subst_power(self, d: int) -> "RatFunc":
        """Return f(q**d).  Substitution preserves coprimality and monicity."""
        if d < 1:
            raise ValueError("substitution exponent must be positive")
        return RatFunc(self.num.subst_power(d), self.den.subst_power(d), reduced=True)

    def __call__(self, x: Scalar) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at pole")
        return self.num(x) / d

    def check_canonical(self) -> None:
        assert not self.den.is_zero()
        assert self.den.lead == 1
        assert poly_gcd(self.num, self.den).is_constant() or self.num.is_zero()
        if self.num.is_zero():
            assert self.den == _ONE

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        return cls(QPoly.from_json(data["num"]), QPoly.from_json(data["den"]))

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        if self.den == _ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _canonical(num: QPoly, den: QPoly) -> tuple[QPoly, QPoly]:
    if num.is_zero():
        return num, _ONE
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num, den = num // g, den // g
    lead = den.lead
    if lead != 1:
        inv = 1 / lead
        num, den = num * inv, den * inv
    return num, den


def as_ratfunc(x: "RatFunc | QPoly | Scalar") -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc(_as_poly(x), _ONE, reduced=True)


class NotAPolynomialError(ValueError):
    def __init__(self, denominator: QPoly):
        super().__init__(f"not a polynomial: denominator {denominator}")
        self.denominator = denominator


Q = QPoly((0, 1))


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def adams_subst(f: RatFunc, d: int) -> RatFunc:
    return as_ratfunc(f).subst_power(d)


def eval_prime_power(f: "RatFunc | QPoly", q0: int) -> Fraction:
    return as_ratfunc(f)(q0)


def to_polynomial(f: "RatFunc | QPoly") -> QPoly:
    if isinstance(f, QPoly):
        return f
    if not f.den.is_constant():
        raise NotAPolynomialError(f.den)
    return f.num
