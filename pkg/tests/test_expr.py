from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from voabimod.expr import ExprError, format_expr, format_vector, parse_element, parse_vector
from voabimod.vectors import GradedVector


def test_vacuum(heis):
    assert parse_vector("vac", heis) == heis.vacuum()


def test_word_is_partition_label(heis):
    v = parse_vector("a(-1)a(-2)vac", heis)
    assert v == GradedVector.basis((2, 1))
    assert v.weight == 3


def test_linear_combination(isg):
    v = parse_vector("3/2 L(-2)vac - L(-2)vac", isg)
    assert v == isg.conformal() * Fraction(1, 2)


def test_tolerant_spacing_and_star(isg):
    assert parse_vector(" 2 * L( -2 ) vac ", isg) == isg.conformal() * 2
    assert parse_vector("-L(-2)vac + L(-2)vac", isg) == GradedVector()


def test_positive_modes_act(heis):
    # a(1) a(-1) vac = vac
    assert parse_vector("a(1)a(-1)vac", heis) == heis.vacuum()


def test_wrong_generator(heis, isg):
    with pytest.raises(ExprError):
        parse_vector("L(-2)vac", heis)
    with pytest.raises(ExprError):
        parse_vector("a(-1)vac", isg)


@pytest.mark.parametrize("src,pos", [("", 0), ("a(-1)", 5), ("vac vac", 4), ("a(-1 vac", 2), ("2/ vac", 1), ("1/0 vac", 0)])
def test_syntax_errors_carry_position(src, pos):
    with pytest.raises(ExprError) as exc:
        parse_element(src)
    assert exc.value.pos == pos


def test_range_error(heis):
    from voabimod.voa import heisenberg
    from voabimod.modules import WeightRangeError
    with pytest.raises(WeightRangeError):
        parse_vector("a(-3)vac", heisenberg(2))


labels = st.lists(st.integers(1, 4), max_size=3).map(lambda l: tuple(sorted(l, reverse=True)))
vecs = st.dictionaries(labels, st.fractions(-3, 3, max_denominator=4).filter(bool), max_size=4).map(GradedVector)


@settings(max_examples=80, deadline=None)
@given(vecs)
def test_round_trip_vectors(heis, v):
    assert parse_vector(format_vector(v, heis), heis) == v


@settings(max_examples=80, deadline=None)
@given(st.text(alphabet="aL()-+0123456789/ vac*", max_size=20))
def test_parser_never_crashes(src):
    try:
        tree = parse_element(src)
    except ExprError:
        return
    assert parse_element(format_expr(tree)) == tree
