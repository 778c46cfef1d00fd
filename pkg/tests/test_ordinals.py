import pytest
from hypothesis import given
from sympy.sets.ordinals import OmegaPower, Ordinal as SympyOrdinal, ord0

from dirac_sea.ordinals import OMEGA, ONE, ZERO, Ordinal, ordinal_sum

from strategies import ordinals


def to_sympy(a: Ordinal):
    if a.is_zero:
        return ord0
    return SympyOrdinal(*[OmegaPower(e, c) for e, c in a.terms])


@given(ordinals, ordinals)
def test_addition_matches_sympy(a, b):
    assert to_sympy(a + b) == to_sympy(a) + to_sympy(b)


@given(ordinals, ordinals)
def test_order_matches_sympy(a, b):
    assert (a < b) == (to_sympy(a) < to_sympy(b))
    assert (a == b) == (to_sympy(a) == to_sympy(b))


@given(ordinals, ordinals)
def test_remainder_is_left_subtraction(a, b):
    lo, hi = sorted((a, b))
    assert lo + hi.remainder_after(lo) == hi


@given(ordinals)
def test_parse_roundtrip(a):
    assert Ordinal.parse(str(a)) == a


@given(ordinals)
def test_limit_and_finite_parts(a):
    assert a.limit_part + a.finite_part == a
    assert a.limit_part.is_zero or a.limit_part.is_limit


def test_absorption():
    assert ONE + OMEGA == OMEGA
    assert OMEGA + 1 != OMEGA
    assert OMEGA.one_plus() == OMEGA
    assert Ordinal.of(4).one_plus() == Ordinal.of(5)


@pytest.mark.parametrize("text, terms", [
    ("0", ()),
    ("7", ((0, 7),)),
    ("w", ((1, 1),)),
    ("w^2*3+w+5", ((2, 3), (1, 1), (0, 5))),
    ("ω+ω", ((1, 2),)),
    ("3+w", ((1, 1),)),
])
def test_parse(text, terms):
    assert Ordinal.parse(text).terms == terms


@pytest.mark.parametrize("bad", ["", "x", "w^", "w^-1", "2w"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        Ordinal.parse(bad)


def test_cnf_validation():
    with pytest.raises(ValueError):
        Ordinal(((0, 1), (1, 1)))
    with pytest.raises(ValueError):
        Ordinal(((1, 0),))


def test_sum_and_blocks():
    assert ordinal_sum([Ordinal.of(3), OMEGA, Ordinal.of(2)]) == Ordinal.parse("w+2")
    assert ordinal_sum([]) == ZERO
    assert Ordinal.parse("w+3").same_block(Ordinal.parse("w+9"))
    assert not Ordinal.parse("w+3").same_block(Ordinal.parse("w*2"))
