import doctest

import pytest
from hypothesis import given, strategies as st

from rvwarning import balls_bins, polyparse, ring_core
from rvwarning.multipoly import MultiPoly
from rvwarning.polyparse import PolySyntaxError, parse_poly, parse_polys


def t(i, n=2):
    return MultiPoly.variable(i - 1, n)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("t1 + t2", t(1) + t(2)),
        ("(t1+t2)^2", t(1) ** 2 + 2 * t(1) * t(2) + t(2) ** 2),
        ("3*t1^2 - t2", 3 * t(1) ** 2 - t(2)),
        ("-t1^2", -(t(1) ** 2)),
        ("t1 - -t2", t(1) + t(2)),
        ("2*3 - 4 - 1", MultiPoly.constant(1, 2)),
        ("(t1)^0", MultiPoly.constant(1, 2)),
    ],
)
def test_examples(text, expected):
    assert parse_poly(text, 2) == expected


def test_left_associativity():
    assert parse_poly("10 - 3 - 2", 1) == MultiPoly.constant(5, 1)
    assert parse_poly("2^3^2", 1) == MultiPoly.constant(64, 1)


def test_nvars_inferred_from_largest_index():
    assert parse_poly("t3").nvars == 3
    assert [f.nvars for f in parse_polys(["t1", "t4"])] == [4, 4]


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("t1 +", 1, 5),
        ("t1^t2", 1, 4),
        ("(t1", 1, 4),
        ("t1 $ 2", 1, 4),
        ("t1\n  + *t2", 2, 5),
        ("", 1, 1),
        ("t1 t2", 1, 4),
    ],
)
def test_errors_have_positions(text, line, col):
    with pytest.raises(PolySyntaxError) as err:
        parse_poly(text, 2)
    assert (err.value.line, err.value.column) == (line, col)


def test_variable_out_of_range():
    with pytest.raises(PolySyntaxError):
        parse_poly("t3", 2)
    with pytest.raises(PolySyntaxError):
        parse_poly("t0", 2)


mono = st.tuples(st.integers(0, 3), st.integers(0, 3))


@given(st.lists(st.tuples(mono, st.integers(-20, 20)), max_size=6))
def test_parse_of_serialized_is_idempotent(terms):
    f = MultiPoly(2, terms)
    once = parse_poly(str(f), 2)
    assert once == f
    assert str(parse_poly(str(once), 2)) == str(once)


def test_module_doctests():
    for mod in (polyparse, balls_bins, ring_core):
        assert doctest.testmod(mod).failed == 0
