import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from doccalc.geometry import background, gauge_table, named_table
from doccalc.ncalg import (
    FREE,
    GaussianRational,
    J,
    ONE,
    ParseError,
    RewriteBudgetExceeded,
    TerminationError,
    atom,
    commutator,
    delta_rule,
    equals,
    named_rule,
    normalize,
    parse,
    prime_shift,
    random_expression,
)
from doccalc.ncalg import Expression

seeds = st.integers(0, 2**31)

X1, X2, Y = atom("X", 1), atom("X", 2), atom("Y")
x1, x2, y = Expression.of(X1), Expression.of(X2), Expression.of(Y)


def rexpr(seed, **kw):
    return random_expression(random.Random(seed), **kw)


# -- coefficients --------------------------------------------------------------------

def test_gaussian_arithmetic():
    a = GaussianRational(1, 2)
    b = GaussianRational("3/2")
    assert a * a == GaussianRational(-3, 4)
    assert (a / a) == 1
    assert a.conjugate() == GaussianRational(1, -2)
    assert GaussianRational.coerce("i") ** 2 == -1
    assert GaussianRational.coerce("(1 - i)") == GaussianRational(1, -1)
    assert b + b == 3


def test_gaussian_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


# -- expressions ---------------------------------------------------------------------

def test_no_zero_coefficients():
    e = x1 * x2 - x1 * x2 + y
    assert all(c for _, c in e.items())
    assert e == y


def test_j_moves_left_with_prime():
    # X J = J X'
    assert x1 * J == J * prime_shift(x1)
    assert x1 * J != J * x1
    assert str(x1 * J) == "JX1'"


def test_constants_are_central():
    c = Expression.of(atom("c"))
    assert normalize(x1 * c) == normalize(c * x1)
    assert prime_shift(c) == c


def test_canonical_render():
    e = parse("X2 X1 + 2 X1 - i")
    assert str(e) == "X2X1 + 2X1 - i"
    assert str(Expression()) == "0"


@pytest.mark.parametrize("text,expected", [
    ("[X1,X1]", "0"),
    ("[X1,X2]", "-X2X1 + X1X2"),
    ("(X1 + 1)(X1 - 1)", "X1X1 - 1"),
    ("D(X1)", "J(X1' - X1)"),
    ("d(X1)", "X1' - X1"),
    ("3/2 X1^2", "3/2X1X1"),
])
def test_parse_examples(text, expected):
    assert str(parse(text)) == expected


@pytest.mark.parametrize("bad", ["X1 +", "[X1 X2]", "(X1", "X1 ? 2", ""])
def test_parse_errors_have_offsets(bad):
    with pytest.raises(ParseError) as exc:
        parse(bad)
    assert 0 <= exc.value.offset <= len(bad)


def test_flat_table_canonical_relation():
    flat = named_table("flat")
    assert str(parse("[X1,P1]", flat)) == "1"
    assert parse("[X1,P2]", flat).is_zero()
    assert str(parse("P1X1", flat)) == "X1P1 - 1"


def test_equals_uses_table():
    flat = named_table("flat")
    assert equals(parse("P1X1"), parse("X1P1 - 1"), flat)
    assert not equals(parse("P1X1"), parse("X1P1"), flat)


def test_budget_exceeded():
    e = parse("(P1 + X1)^6", named_table("flat"))
    with pytest.raises(RewriteBudgetExceeded):
        normalize(parse("(P1 + X1)^6"), named_table("flat"), budget=5)
    assert not e.is_zero()


def test_table_rejects_non_decreasing_rule():
    # [X1, P1] -> P1 X1 P1 would grow the word, so it is refused
    grow = named_rule("P", "X", lambda p, x: Expression.of(x, p, x))
    with pytest.raises(TerminationError):
        FREE.extend(grow).bracket(atom("P", 1), atom("X", 1))


def test_delta_rule_scale():
    t = FREE.extend(delta_rule("X", "P", scale=GaussianRational(0, 1)))
    assert commutator(x1, Expression.of(atom("P", 1)), t) == GaussianRational(0, 1) * ONE


# -- properties ------------------------------------------------------------------------

@given(seeds, seeds, seeds)
def test_associativity(a, b, c):
    ea, eb, ec = (rexpr(s, max_terms=4) for s in (a, b, c))
    for t in (FREE, named_table("flat")):
        assert normalize((ea * eb) * ec, t) == normalize(ea * (eb * ec), t)


@given(seeds, seeds, seeds)
def test_distributivity(a, b, c):
    ea, eb, ec = (rexpr(s, max_terms=4) for s in (a, b, c))
    assert normalize(ea * (eb + ec)) == normalize(ea * eb + ea * ec)
    assert normalize((eb + ec) * ea) == normalize(eb * ea + ec * ea)


@given(seeds, seeds, seeds)
def test_jacobi(a, b, c):
    ea, eb, ec = (rexpr(s) for s in (a, b, c))
    for t in (FREE, named_table("gauge")):
        s = (commutator(commutator(ea, eb, t), ec, t) + commutator(commutator(ec, ea, t), eb, t)
             + commutator(commutator(eb, ec, t), ea, t))
        assert normalize(s, t).is_zero()


@pytest.mark.parametrize("fam,idx", [("X", (1,)), ("Y", ()), ("P", (2,)), ("A", (3,)), ("Xd", (1,)),
                                     ("g", (1, 2)), ("c", ())])
def test_j_conjugation(fam, idx):
    a = Expression.of(atom(fam, *idx))
    assert equals(commutator(a, J), J * (prime_shift(a) - a))


POOLS = {
    "flat": (atom("X", 1), atom("X", 2), atom("P", 1), atom("P", 2), atom("Y")),
    "gauge": (atom("X", 1), atom("P", 1), atom("P", 2), atom("A", 1), atom("A", 2)),
    "metric": (atom("X", 1), atom("X", 2), atom("Xd", 1), atom("Xd", 2), atom("g", 1, 2)),
    "metric-acc": (atom("X", 1), atom("Xd", 1), atom("Xdd", 2), atom("g", 1, 2)),
    "gauge-abelian": (atom("P", 1), atom("P", 2), atom("A", 1), atom("A", 2)),
}
TABLE_OF = {"metric-acc": lambda: named_table("metric"), "gauge-abelian": lambda: gauge_table(abelian=True)}


@pytest.mark.parametrize("name", sorted(POOLS))
@given(seed=seeds, order=seeds)
def test_confluence(name, seed, order):
    table = TABLE_OF[name]() if name in TABLE_OF else named_table(name)
    e = random_expression(random.Random(seed), POOLS[name], max_terms=3, max_len=4)
    assert normalize(e, table, rng=random.Random(order)) == normalize(e, table)


@given(seeds)
def test_parse_render_round_trip(seed):
    e = normalize(rexpr(seed, max_terms=4))
    assert parse(str(e)) == e


@given(seeds)
def test_parse_render_round_trip_metric(seed):
    t = background("metric", 3).table
    e = normalize(random_expression(random.Random(seed), POOLS["metric"]), t)
    assert parse(str(e), t) == e


@given(seeds)
def test_normal_form_is_idempotent(seed):
    t = named_table("flat")
    e = normalize(random_expression(random.Random(seed), POOLS["flat"]), t)
    assert normalize(e, t) == e


def test_same_time_rules_shift_with_primes():
    t = background("metric", 3).table
    xp = Expression.of(atom("X", 1, primes=2))
    vp = Expression.of(atom("Xd", 2, primes=2))
    assert commutator(xp, vp, t) == prime_shift(parse("g12"), 2)
    # different instants stay free
    v = Expression.of(atom("Xd", 2))
    assert t.bracket(atom("X", 1, primes=1), atom("Xd", 2)) is None
    assert not commutator(xp, v, t).is_zero()


def test_gauge_derivative_tower():
    t = gauge_table()
    assert str(parse("[A2,P1]", t)) == "dA12"
    assert str(parse("[dA12,P3]", t)) == "dA132"
    assert parse("[P1,[P2,A3]] - [P2,[P1,A3]]", t).is_zero()
