import itertools
from fractions import Fraction

import pytest

from quivercount.arith import eval_prime_power
from quivercount.hn import HNContext
from quivercount.partitions import Partition, centralizer_order, enumerate_partition_tuples, fixed_point_formula, min_pairing, partitions
from quivercount.quiver import Quiver, Stability, gl_order, rep_count, rep_exponent, slope
from quivercount.oracle.classes import (
    abs_indecomposable_filter,
    both,
    census,
    count_iso_classes,
    indecomposable_filter,
    semistable_filter,
    stable_filter,
)
from quivercount.oracle.endo import Indecomposability, classify, end_analysis
from quivercount.oracle.fields import SUPPORTED_ORDERS, SmallField, get_field
from quivercount.oracle.linalg import gl_elements, inverse, matmul, nullspace, rank, subspaces
from quivercount.oracle.reps import FFRep, OracleCaps, OracleTooLarge, enumerate_reps, is_semistable, subrep_test
from quivercount.oracle.unipotent import (
    commuting_group_order,
    core_equivalence,
    extract_core,
    fixed_points,
    fixed_space_bruteforce,
    fixed_space_elements,
    intertwiner_basis,
    is_fixed,
    type_u_solution_dim,
    unipotent_element_count,
)

J, K = Quiver.jordan(), Quiver.kronecker()
P = lambda *parts: Partition(tuple(parts))
HALF = Fraction(1, 2)


@pytest.mark.parametrize("order", SUPPORTED_ORDERS)
def test_fields(order):
    F = get_field(order)
    assert F.p ** F.degree == order
    assert len(F.exp_table) == order - 1
    assert sorted(F.exp_table) == list(range(1, order))


def test_unsupported_field():
    with pytest.raises(ValueError):
        SmallField(6)
    with pytest.raises(ValueError):
        SmallField(11)


def gaussian_binomial(n, k, q0):
    num = den = 1
    for i in range(k):
        num *= q0 ** (n - i) - 1
        den *= q0 ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize("q0", [2, 3, 4])
def test_subspace_counts(q0):
    F = get_field(q0)
    for n in range(4 if q0 == 2 else 3):
        subs = subspaces(F, n)
        for k in range(n + 1):
            assert sum(1 for s in subs if s.dim == k) == gaussian_binomial(n, k, q0)


def test_linalg():
    F = get_field(3)
    for A in gl_elements(F, 2):
        assert matmul(F, A, inverse(F, A, 2), 2, 2) == ((1, 0), (0, 1))
    assert len(gl_elements(F, 2)) == 48
    assert rank(F, [[1, 2], [2, 1]], 2) == 1
    assert nullspace(F, [[1, 2]], 2) == [(1, 1)]


def test_enumerate_reps_examples():
    F2, F3 = get_field(2), get_field(3)
    assert len(list(enumerate_reps(J, (1,), F2))) == 2
    assert len(list(enumerate_reps(K, (1, 1), F2))) == 4
    assert len(list(enumerate_reps(K, (1, 1), F3))) == 9
    for alpha in [(1, 2), (2, 1), (2, 2)]:
        assert len(list(enumerate_reps(K, alpha, F2))) == eval_prime_power(rep_count(K, alpha), 2)


def test_enumeration_caps():
    with pytest.raises(OracleTooLarge, match="oracle instance too large"):
        list(enumerate_reps(K, (3, 3), get_field(2)))
    with pytest.raises(OracleTooLarge):
        list(enumerate_reps(K, (2, 2), get_field(4)))
    tiny = OracleCaps(entries={"default": 1})
    with pytest.raises(OracleTooLarge):
        list(enumerate_reps(K, (1, 1), get_field(2), tiny))


def test_subrep_test_examples():
    F = get_field(2)
    th = Stability((1, 0))
    zero = FFRep.build(K, (1, 1), [[[0]], [[0]]])
    one = FFRep.build(K, (1, 1), [[[1]], [[0]]])
    assert not subrep_test(zero, F, th).semistable
    flags = subrep_test(one, F, th)
    assert flags.semistable and flags.stable
    for M in enumerate_reps(K, (2, 1), F):
        assert subrep_test(M, F, Stability((0, 0))).semistable


def test_end_analysis_examples():
    F2 = get_field(2)
    for q0 in (2, 3):
        ea = end_analysis(FFRep.build(J, (1,), [[[0]]]), get_field(q0))
        assert (ea.end_dim, ea.idempotent_count, ea.residue_degree) == (1, 2, 1)
    ea = end_analysis(FFRep.build(K, (1, 1), [[[1]], [[1]]]), F2)
    assert ea.end_dim == 1 and ea.residue_degree == 1
    companion = FFRep.build(J, (2,), [[[0, 1], [1, 1]]])
    ea = end_analysis(companion, F2)
    assert ea.end_dim == 2 and ea.residue_degree == 2
    assert classify(companion, F2) is Indecomposability.INDECOMPOSABLE
    assert classify(FFRep.build(J, (2,), [[[0, 0], [0, 0]]]), F2) is Indecomposability.DECOMPOSABLE


def test_count_iso_classes_examples():
    F2, F3 = get_field(2), get_field(3)
    th = Stability((1, 0))
    assert count_iso_classes(K, (1, 1), F2, semistable_filter(th)).orbits == 3
    assert count_iso_classes(J, (1,), F2, abs_indecomposable_filter()).orbits == 2
    assert count_iso_classes(K, (1, 1), F3, both(abs_indecomposable_filter(), semistable_filter(th))).orbits == 4


@pytest.mark.parametrize("quiver,alpha,q0", [(J, (2,), 2), (J, (2,), 3), (K, (1, 2), 2), (K, (2, 2), 2), (Quiver(2, ((1, 1), (0, 0))), (1, 1), 3)])
def test_burnside_agrees_with_orbits(quiver, alpha, q0):
    F = get_field(q0)
    th = Stability((1,) + (0,) * (quiver.n - 1))
    for keep in (lambda M, F: True, semistable_filter(th), stable_filter(th), indecomposable_filter(), abs_indecomposable_filter()):
        res = count_iso_classes(quiver, alpha, F, keep)
        assert res.invariant
        assert res.consistent


def test_census_fields():
    c = census(K, (1, 1), get_field(2), Stability((0, 0)), Fraction(0))
    data = c.to_json()
    assert data["classes"]["all"] == 4
    assert data["classes"]["absolutely_indecomposable"] == 3
    assert data["representations"] == 4 and data["burnside_consistent"]


def test_type_u_examples():
    F = get_field(2)
    assert type_u_solution_dim(P(2), P(2), F) == 2
    assert type_u_solution_dim(P(3, 2, 2, 1), P(3, 2, 2, 1), F) == 26
    assert type_u_solution_dim(P(1), P(5), F) == 1
    with pytest.raises(OracleTooLarge):
        type_u_solution_dim(P(5, 4), P(5, 4), F)


def test_type_u_field_independence_small():
    for lam, mu in itertools.product([p for m in range(4) for p in partitions(m)], repeat=2):
        dims = {type_u_solution_dim(lam, mu, get_field(q0)) for q0 in (2, 3, 4)}
        assert dims == {min_pairing(lam, mu)}


def test_fixed_points_examples():
    F = get_field(2)
    fp = fixed_points(J, (P(2),), F, Stability((0,)))
    assert fp.total == fp.semistable == 4
    assert fixed_points(J, (P(1, 1),), F, Stability((0,))).semistable == 16
    assert fixed_points(K, (P(1), P(1)), F, Stability((1, 0)), HALF).semistable == 3


def test_fixed_space_linear_route_matches_bruteforce():
    F = get_field(2)
    for tau in [(P(2),), (P(2, 1),), (P(3),), (P(1), P(2)), (P(2), P(1, 1)), (P(2), P(2))]:
        quiver = J if len(tau) == 1 else K
        linear = set(fixed_space_elements(quiver, tau, F))
        brute = set(fixed_space_bruteforce(quiver, tau, F))
        assert linear == brute


def test_count_totals():
    for q0 in (2, 3):
        F = get_field(q0)
        for alpha in [(1, 1), (1, 2)]:
            assert sum(1 for _ in enumerate_reps(K, alpha, F)) == eval_prime_power(rep_count(K, alpha), q0)


def test_fixed_point_formula_small_grid():
    F = get_field(2)
    n = 0
    for quiver, theta, bound in [(J, (0,), (3,)), (K, (1, 0), (2, 2))]:
        th = Stability(theta)
        for tau in enumerate_partition_tuples(bound):
            alpha = tuple(lam.size for lam in tau)
            if not any(alpha) or rep_exponent(quiver, alpha) > 8:
                continue
            mu = slope(th, alpha)
            ctx = HNContext(quiver, th, mu)
            expected = eval_prime_power(fixed_point_formula(quiver.arrows, tau, ctx.rss), 2)
            assert fixed_points(quiver, tau, F, th, mu).semistable == expected, tau
            n += 1
    assert n >= 8


def test_extract_core_examples():
    F = get_field(3)
    for a, b in itertools.product(range(3), repeat=2):
        M = FFRep.build(J, (2,), [[[a, b], [0, a]]])
        core = extract_core(M, (P(2),), F)
        assert list(core) == [2]
        assert core[2].mats == (((a,),),)
    sigma = FFRep.build(K, (2, 1), [[[1, 2]], [[0, 1]]])
    core = extract_core(sigma, (P(1, 1), P(1)), F)
    assert core == {1: sigma}


def test_extract_core_layout():
    # tau = (3,2,2,1): core at s=1, 2 (2x2), 3 as the leading scalars a | k m r t | z
    F = get_field(2)
    tau = (P(3, 2, 2, 1),)
    basis = intertwiner_basis(F, tau[0], tau[0])
    assert len(basis) == 26
    flat = [sum(v[k] for v in basis) % 2 for k in range(64)]
    X = tuple(tuple(flat[8 * r:8 * r + 8]) for r in range(8))
    M = FFRep.build(J, (8,), [X])
    core = extract_core(M, tau, F)
    assert core[3].mats[0] == ((X[0][0],),)
    assert core[2].mats[0] == ((X[3][3], X[3][5]), (X[5][3], X[5][5]))
    assert core[1].mats[0] == ((X[7][7],),)


def test_extract_core_rejects_unfixed():
    F = get_field(2)
    M = FFRep.build(J, (2,), [[[0, 0], [1, 0]]])
    assert not is_fixed(M, (P(2),), F)
    with pytest.raises(ValueError):
        extract_core(M, (P(2),), F)


def test_core_equivalence_small():
    F = get_field(2)
    th = Stability((1, 0))
    for tau in [(P(2), P(2)), (P(2, 1), P(1, 1)), (P(1, 1), P(2))]:
        alpha = tuple(lam.size for lam in tau)
        mu = slope(th, alpha)
        for M in fixed_space_elements(K, tau, F):
            lhs, rhs = core_equivalence(M, tau, F, th, mu)
            assert lhs == rhs


def test_centralizer_oracle():
    F = get_field(2)
    for m in range(1, 4):
        for lam in partitions(m):
            assert commuting_group_order(lam, F) == eval_prime_power(centralizer_order(lam), 2)


def test_unipotent_class_equation():
    F = get_field(2)
    for m in range(4):
        total = sum(eval_prime_power(gl_order((m,)), 2) / eval_prime_power(centralizer_order(lam), 2) for lam in partitions(m))
        assert total == unipotent_element_count(m, F)


@pytest.mark.parametrize(
    "quiver,theta,alpha",
    [
        (Quiver.kronecker(), (1, 0), (1, 1)),
        (Quiver.kronecker(), (1, 0), (1, 2)),
        (Quiver.kronecker(), (0, 1), (2, 1)),
        (Quiver.jordan(), (0,), (2,)),
        (Quiver(3, ((0, 1, 1), (0, 0, 1), (0, 0, 0))), (1, 0, -1), (1, 1, 1)),
    ],
)
def test_is_semistable_matches_full_test(quiver, theta, alpha):
    F = get_field(2)
    th = Stability(theta)
    for mu in (slope(th, alpha), Fraction(7)):
        for M in enumerate_reps(quiver, alpha, F):
            assert is_semistable(M, F, th, mu) == subrep_test(M, F, th, mu).semistable
