import math

import pytest
from hypothesis import given, strategies as st

from dirac_sea.errors import DomainMismatch
from dirac_sea.ordered_index import (NEG_INF, FiniteExplicit, Label, Order, OrdinalPoint,
                                     OrdinalSum, ReversedIntegers, Side, SignedInteger, Stratum,
                                     domain_from_json, position_from_json, position_to_json)
from dirac_sea.ordinals import Ordinal

from strategies import DOMAINS, domains, rngs
from dirac_sea import sampling as smp

Z = ReversedIntegers()
S = SignedInteger


def om(text, side=Side.MINUS):
    return OrdinalPoint(side, Ordinal.parse(text))


def test_reversed_integer_order():
    assert Z.compare(S(1), S(-1)) is Order.LESS
    assert Z.compare(S(-1), S(-2)) is Order.LESS
    assert Z.compare(S(3), S(2)) is Order.LESS
    assert Z.compare(S(4), S(4)) is Order.EQUAL


def test_ordinal_sum_order():
    d = OrdinalSum("w^2", "w^2")
    assert d.compare(om("w"), om("w+1")) is Order.LESS
    assert d.compare(om("w", Side.PLUS), om("1")) is Order.LESS
    # reversed ordinal order among plus points
    assert d.compare(om("w", Side.PLUS), om("5", Side.PLUS)) is Order.LESS
    assert d.compare(om("w+1", Side.PLUS), om("w", Side.PLUS)) is Order.LESS


def test_finite_order_follows_rank():
    d = FiniteExplicit((Label("a", 2, Side.MINUS), Label("b", 0, Side.PLUS), Label("c", 1, Side.MINUS)))
    assert [p.name for p in d.ordered] == ["b", "c", "a"]
    assert d.compare(d.label("b"), d.label("a")) is Order.LESS


@given(domain_and=st.tuples(domains, rngs))
def test_total_order(domain_and):
    d, rng = domain_and
    x, y, z = (smp.position(d, rng) for _ in range(3))
    assert d.compare(x, y) is {Order.LESS: Order.GREATER, Order.GREATER: Order.LESS,
                               Order.EQUAL: Order.EQUAL}[d.compare(y, x)]
    if d.compare(x, y) is Order.LESS and d.compare(y, z) is Order.LESS:
        assert d.compare(x, z) is Order.LESS
    assert (d.compare(x, y) is Order.EQUAL) == (x == y)


def test_interval_counts():
    assert Z.interval_count_in(Stratum.SEA, NEG_INF, S(-3)) == 3
    assert Z.interval_count_in(Stratum.WHOLE, S(2), S(-2)) == 3   # {1, -1, -2}
    assert Z.interval_count_in(Stratum.COMPLEMENT, NEG_INF, S(1)) == math.inf
    d = OrdinalSum(Ordinal.parse("w^2"), Ordinal.parse("w"))
    assert d.interval_count_in(Stratum.SEA, NEG_INF, om("w")) == math.inf
    assert d.interval_count_in(Stratum.SEA, om("w"), om("w+4")) == 4
    assert d.interval_count_in(Stratum.WHOLE, om("3", Side.PLUS), om("2")) == 4  # plus 2, 1; minus 1, 2


@given(domain_and=st.tuples(domains, rngs))
def test_empty_interval(domain_and):
    d, rng = domain_and
    x = smp.position(d, rng)
    assert d.interval_count_in(Stratum.WHOLE, x, x) == 0


@given(domain_and=st.tuples(domains, rngs))
def test_interval_additivity(domain_and):
    d, rng = domain_and
    a, b, c = sorted((smp.position(d, rng) for _ in range(3)), key=d.key)
    for stratum in Stratum:
        left = d.interval_count_in(stratum, a, b)
        right = d.interval_count_in(stratum, b, c)
        if left != math.inf and right != math.inf:
            assert d.interval_count_in(stratum, a, c) == left + right


def test_reversed_integer_down_set_is_usual_up_set():
    for j in (-4, -1, 1, 6):
        down = {n for n in range(-30, 31) if n and Z.key(S(n)) <= Z.key(S(j))}
        assert down == {n for n in range(-30, 31) if n and n >= j}


def test_rejects_foreign_positions():
    with pytest.raises(DomainMismatch):
        Z.compare(S(1), om("w"))
    with pytest.raises(ValueError):
        SignedInteger(0)
    with pytest.raises(ValueError):
        OrdinalPoint(Side.MINUS, Ordinal())
    d = OrdinalSum(Ordinal.parse("w+1"), Ordinal.parse("w"))
    assert not d.contains(om("w+1"))
    assert d.contains(om("w"))


def test_ordinal_sum_validation():
    with pytest.raises(ValueError):
        OrdinalSum("5", "w")
    with pytest.raises(ValueError):
        OrdinalSum("w^6", "w")
    assert OrdinalSum("w^6", "w", max_exponent=7).minus == Ordinal.parse("w^6")


def test_finite_label_validation():
    with pytest.raises(ValueError):
        FiniteExplicit((Label("a", 0, Side.MINUS), Label("a", 1, Side.PLUS)))
    with pytest.raises(ValueError):
        FiniteExplicit((Label("a", 0, Side.MINUS), Label("b", 0, Side.PLUS)))


@pytest.mark.parametrize("d", DOMAINS)
def test_json_roundtrip(d):
    assert domain_from_json(d.to_json()) == d
    for x in d.sample_positions():
        assert position_from_json(d, position_to_json(x)) == x


def test_json_shorthand_and_errors():
    assert domain_from_json("reversed_integers") == Z
    assert domain_from_json({"kind": "ordinal_sum", "minus": "w^2", "plus": "w"}) == OrdinalSum()
    with pytest.raises(ValueError):
        domain_from_json({"kind": "cantor"})
    with pytest.raises(DomainMismatch):
        position_from_json(Z, 0)
    with pytest.raises(DomainMismatch):
        position_from_json(Z, True)
