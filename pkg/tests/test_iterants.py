import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from doccalc.iterants import (
    ETA,
    SIGMA,
    EtaElement,
    Iterant,
    boost_apply,
    boost_factor,
    coverage_counts,
    decomposition_json,
    diag,
    from_matrix,
    lorentz_boost,
    matmul2,
    perm_conjugation_check,
    perm_decompose,
    perm_matrix,
    pythagorean_velocity,
    quaternion_check,
    read_matrix_csv,
    reconstruct,
    spacetime,
    to_matrix,
    velocity_addition,
    write_matrix_csv,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=7)
iterants = st.builds(Iterant, small, small)
etas = st.builds(EtaElement, iterants, iterants)


def test_iterant_basics():
    a = Iterant(2, 3)
    assert a * Iterant(5, 7) == Iterant(10, 21)
    assert a.shift() == Iterant(3, 2)
    assert SIGMA * SIGMA == 1
    assert spacetime(5, 3) == Iterant(2, 8)
    # i = sigma D squares to -1 as an action
    assert a.i_action().i_action() == -a


@given(iterants)
def test_shift_is_involution(a):
    assert a.shift().shift() == a


@given(etas, etas)
def test_conjugation_is_anti_automorphism(p, q):
    assert (p * q).conjugate() == q.conjugate() * p.conjugate()


@given(etas)
def test_determinant_identity(p):
    det = p.determinant()
    assert p * p.conjugate() == EtaElement(det, Iterant(0, 0))
    (a, b), (c, d) = to_matrix(p)
    assert det == Iterant(a * d - b * c, a * d - b * c)


def test_eta_rules():
    q = Iterant(1, 4)
    assert ETA * ETA == EtaElement(Iterant(1, 1), Iterant(0, 0))
    assert ETA * EtaElement(q, Iterant(0, 0)) == EtaElement(q.shift(), Iterant(0, 0)) * ETA


def test_to_matrix_layout():
    p = EtaElement(Iterant(1, 4), Iterant(2, 3))
    assert to_matrix(p) == [[1, 2], [3, 4]]
    assert from_matrix([[1, 2], [3, 4]]) == p


@given(etas, etas)
def test_to_matrix_is_homomorphism(p, q):
    mp, mq = to_matrix(p), to_matrix(q)
    assert to_matrix(p * q) == matmul2(mp, mq)
    assert to_matrix(p + q) == [[mp[i][j] + mq[i][j] for j in range(2)] for i in range(2)]


@pytest.mark.parametrize("alternative", [False, True])
def test_quaternions(alternative):
    checks = quaternion_check(alternative)
    assert len(checks) == 8 and all(checks.values())


# -- boosts -------------------------------------------------------------------------

def test_boost_factor_examples():
    assert boost_factor(Fraction(3, 5)) == 2
    assert boost_factor(Fraction(1, 2)) == sympy.sqrt(3)
    assert boost_factor(0.6) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        boost_factor(Fraction(1))


def test_boost_composition():
    v1, v2 = Fraction(3, 5), Fraction(5, 13)
    assert velocity_addition(v1, v2) == Fraction(4, 5)
    assert lorentz_boost(v1) * lorentz_boost(v2) == lorentz_boost(velocity_addition(v1, v2))


@given(st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=12),
       st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=12))
def test_boost_composition_rational(k1, k2):
    v1, v2 = pythagorean_velocity(k1), pythagorean_velocity(k2)
    assert boost_factor(v1) == k1
    assert lorentz_boost(v1) * lorentz_boost(v2) == lorentz_boost(velocity_addition(v1, v2))


@given(st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=12), small, small)
def test_interval_invariance(k, t, x):
    tp, xp = boost_apply(lorentz_boost(pythagorean_velocity(k)), (t, x))
    assert isinstance(tp, Fraction)
    assert tp * tp - xp * xp == t * t - x * x


def test_interval_invariance_surd():
    tp, xp = boost_apply(lorentz_boost(Fraction(1, 2)), (Fraction(3), Fraction(1)))
    assert sympy.simplify(tp ** 2 - xp ** 2 - 8) == 0


def test_boost_velocity_matches_classic_formula():
    v = Fraction(3, 5)
    tp, xp = boost_apply(lorentz_boost(v), (Fraction(1), Fraction(0)))
    gamma = 1 / math.sqrt(1 - 0.36)
    # moving frame: the event (1, 0) gets |x'| = gamma v
    assert abs(float(xp)) == pytest.approx(gamma * 0.6)
    assert float(tp) == pytest.approx(gamma)


# -- permutation decomposition ----------------------------------------------------------

def test_perm_matrix_convention():
    p = perm_matrix((1, 2, 0))
    assert p[0, 1] == 1 and p[1, 2] == 1 and p[2, 0] == 1
    assert all(sum(p[i]) == 1 for i in range(3)) and all(sum(p[:, j]) == 1 for j in range(3))
    with pytest.raises(ValueError):
        perm_matrix((0, 0))


@pytest.mark.parametrize("n", range(1, 6))
def test_reconstruction(n):
    rng = random.Random(n)
    m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
    rec = reconstruct(perm_decompose(m), n)
    assert all(rec[i, j] == m[i][j] for i in range(n) for j in range(n))


@pytest.mark.parametrize("n", range(1, 6))
def test_coverage_counts(n):
    assert np.all(coverage_counts(n) == math.factorial(n - 1))


def test_conjugation_examples():
    x, y = sympy.symbols("x y")
    r = perm_conjugation_check([x, y], (1, 0))
    assert r.ok
    assert perm_conjugation_check([Fraction(1), Fraction(2), Fraction(3)], (0, 1, 2)).ok


@given(st.permutations(range(4)), st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_conjugation_random(perm, v):
    r = perm_conjugation_check([Fraction(a) for a in v], tuple(perm))
    # oracle: plain integer matrices
    P = np.zeros((4, 4), dtype=int)
    for i, j in enumerate(perm):
        P[i, j] = 1
    vpi = [v[perm[i]] for i in range(4)]
    assert r.ok
    assert np.array_equal(P @ np.diag(v), np.diag(vpi) @ P)
    assert np.array_equal(r.lhs.astype(int), P @ np.diag(v))


def test_decompose_cap():
    with pytest.raises(ValueError):
        perm_decompose(np.eye(7, dtype=int))


def test_matrix_io_round_trip():
    m = read_matrix_csv("1, 2\n3/2, -4\n")
    assert m[1, 0] == Fraction(3, 2)
    assert np.all(read_matrix_csv(write_matrix_csv(m)) == m)
    doc = json.loads(decomposition_json(perm_decompose(m)))
    assert {tuple(d["perm"]) for d in doc} == {(1, 2), (2, 1)}
    assert np.all(diag([1, 2])[1, 1] == 2)
