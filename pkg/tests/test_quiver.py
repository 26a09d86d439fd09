from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quivercount.arith import QPoly, eval_prime_power
from quivercount.oracle.fields import get_field
from quivercount.oracle.linalg import gl_elements
from quivercount.quiver import (
    ConfigError,
    Quiver,
    Stability,
    dim_vectors_below,
    euler_form,
    gl_order,
    in_delta_plus,
    rep_count,
    slope,
)

q = QPoly((0, 1))
J, K = Quiver.jordan(), Quiver.kronecker()


def test_quiver_validation():
    with pytest.raises(ConfigError, match="arrows must be n×n"):
        Quiver.from_json({"n": 2, "arrows": [[0, 1], [0]]})
    with pytest.raises(ConfigError, match="arrows must be n×n"):
        Quiver(3, ((0, 1), (0, 0)))
    with pytest.raises(ConfigError):
        Quiver(1, ((-1,),))
    assert Quiver.from_json(K.to_json()) == K


def test_arrow_list_order():
    assert K.arrow_list() == [(0, 1), (0, 1)]
    assert Quiver(2, ((1, 1), (1, 0))).arrow_list() == [(0, 0), (0, 1), (1, 0)]


def test_euler_form_examples():
    assert euler_form(J, (1,), (1,)) == 0
    assert euler_form(K, (1, 0), (0, 1)) == -2
    assert euler_form(K, (0, 0), (3, 1)) == 0


def test_rep_count_examples():
    assert rep_count(J, (1,)) == q
    assert rep_count(K, (1, 1)) == q**2
    assert rep_count(K, (0, 0)) == 1


def test_gl_order_examples():
    assert gl_order((1,)) == q - 1
    assert gl_order((2,)) == (q**2 - 1) * (q**2 - q)
    assert gl_order((1, 1)) == (q - 1) ** 2


def test_gl_order_matches_enumeration():
    F = get_field(2)
    for alpha in [(1,), (2,), (3,), (1, 1), (2, 1), (1, 1, 1)]:
        count = 1
        for a in alpha:
            count *= len(gl_elements(F, a)) if a else 1
        assert eval_prime_power(gl_order(alpha), 2) == count


def test_slope_examples():
    assert slope(Stability((1, 0)), (1, 1)) == Fraction(1, 2)
    assert slope(Stability((0, 0)), (3, 2)) == 0
    assert slope(Stability((1, 0)), (1, 0)) == 1
    with pytest.raises(ValueError, match="slope of zero vector"):
        slope(Stability((1, 0)), (0, 0))


def test_in_delta_examples():
    th = Stability((1, 0))
    assert in_delta_plus(th, Fraction(1, 2), (1, 1))
    assert not in_delta_plus(th, Fraction(1, 2), (1, 0))
    assert all(in_delta_plus(Stability((0, 0)), Fraction(0), a) for a in dim_vectors_below((2, 2)))
    assert in_delta_plus(th, Fraction(1, 2), (0, 0))


def test_dim_vectors_below():
    vs = dim_vectors_below((1, 2))
    assert vs == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]


arrow_mats = st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=3, max_size=3).map(Quiver.from_matrix)
vecs = st.lists(st.integers(-3, 3), min_size=3, max_size=3).map(tuple)
dims = st.lists(st.integers(0, 3), min_size=3, max_size=3).map(tuple)


@settings(max_examples=60, deadline=None)
@given(arrow_mats, vecs, vecs, vecs)
def test_euler_form_bilinear(Qv, a, a2, b):
    s = tuple(x + y for x, y in zip(a, a2))
    assert euler_form(Qv, s, b) == euler_form(Qv, a, b) + euler_form(Qv, a2, b)
    assert euler_form(Qv, b, s) == euler_form(Qv, b, a) + euler_form(Qv, b, a2)


@settings(max_examples=60, deadline=None)
@given(arrow_mats, dims, dims)
def test_rep_count_degree_superadditive(Qv, a, b):
    s = tuple(x + y for x, y in zip(a, b))
    assert rep_count(Qv, s).degree >= rep_count(Qv, a).degree + rep_count(Qv, b).degree


def test_rep_count_block_diagonal():
    # no arrows between vertex 0 and vertices {1, 2}
    Qv = Quiver(3, ((1, 0, 0), (0, 0, 2), (0, 1, 0)))
    a, b = (2, 0, 0), (0, 1, 2)
    s = (2, 1, 2)
    assert rep_count(Qv, a) * rep_count(Qv, b) == rep_count(Qv, s)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), dims, dims)
def test_slope_additivity(theta, a, b):
    th = Stability(tuple(theta))
    if not any(a) or not any(b):
        return
    if slope(th, a) == slope(th, b):
        s = tuple(x + y for x, y in zip(a, b))
        assert slope(th, s) == slope(th, a)
