"""Table-driven finite fields of small order.

Elements of F_{p^k} are encoded as integers 0..q-1 whose base-p digits are
the coefficients of a polynomial modulo a fixed irreducible of degree k.
0 and 1 encode the field's zero and one.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k, m = 0, q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, k
    raise ValueError(f"{q} is not a prime power")


def _digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds: list[int], p: int) -> int:
    return sum(d * p**i for i, d in enumerate(ds))


def _find_irreducible(p: int, k: int) -> list[int]:
    """Monic irreducible of degree k <= 3 over F_p (no roots suffices)."""
    if k == 1:
        return [0, 1]
    if k > 3:
        raise ValueError("extension degree above 3 not supported")
    for low in itertools.product(range(p), repeat=k):
        poly = list(low) + [1]
        if low[0] == 0:
            continue
        if all(sum(c * x**i for i, c in enumerate(poly)) % p for x in range(p)):
            return poly
    raise AssertionError("no irreducible polynomial found")


class SmallField:
    def __init__(self, order: int):
        if order not in SUPPORTED_ORDERS:
            raise ValueError(f"unsupported field order {order}; choose from {SUPPORTED_ORDERS}")
        p, k = _prime_power(order)
        self.order = order
        self.q = order
        self.p = p
        self.degree = k
        self.modulus = _find_irreducible(p, k)
        q = order
        self.add = [[_undigits([(a + b) % p for a, b in zip(_digits(x, p, k), _digits(y, p, k))], p) for y in range(q)] for x in range(q)]
        self.mul = [[self._poly_mul(x, y) for y in range(q)] for x in range(q)]
        self.neg = [next(y for y in range(q) if self.add[x][y] == 0) for x in range(q)]
        self.sub = [[self.add[x][self.neg[y]] for y in range(q)] for x in range(q)]
        self.inv = [None] + [next(y for y in range(1, q) if self.mul[x][y] == 1) for x in range(1, q)]
        self.generator = self._find_generator()
        self.exp_table = [1] * (q - 1)
        for i in range(1, q - 1):
            self.exp_table[i] = self.mul[self.exp_table[i - 1]][self.generator]
        self.log_table = {v: i for i, v in enumerate(self.exp_table)}
        self.elements = tuple(range(q))
        self.nonzero = tuple(range(1, q))
        self.verify()

    def _poly_mul(self, x: int, y: int) -> int:
        p, k = self.p, self.degree
        a, b = _digits(x, p, k), _digits(y, p, k)
        prod = [0] * (2 * k - 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                prod[i + j] = (prod[i + j] + u * v) % p
        mod = self.modulus
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
        return _undigits(prod[:k], p)

    def _find_generator(self) -> int:
        q = self.order
        for g in range(1, q):
            x, seen = 1, set()
            for _ in range(q - 1):
                x = self.mul[x][g]
                seen.add(x)
            if len(seen) == q - 1:
                return g
        raise AssertionError("multiplicative group not cyclic")

    def verify(self) -> None:
        """Exhaustive check of the field axioms on the tables."""
        E, add, mul = range(self.order), self.add, self.mul
        for a in E:
            assert add[a][0] == a and mul[a][1] == a and mul[a][0] == 0
            assert add[a][self.neg[a]] == 0
            if a:
                assert mul[a][self.inv[a]] == 1
            for b in E:
                assert add[a][b] == add[b][a] and mul[a][b] == mul[b][a]
                for c in E:
                    assert add[add[a][b]][c] == add[a][add[b][c]]
                    assert mul[mul[a][b]][c] == mul[a][mul[b][c]]
                    assert mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]

    def __repr__(self) -> str:
        return f"SmallField({self.order})"


@lru_cache(maxsize=None)
def get_field(order: int) -> SmallField:
    return SmallField(order)
