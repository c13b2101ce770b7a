import pytest
from hypothesis import given, strategies as st

from perfectcover.errors import InputError
from perfectcover.perms import (
    Permutation,
    commutator,
    format_cycles,
    parse_cycles,
)


def P(text, degree):
    return parse_cycles(text, degree)


def test_composition_is_left_to_right():
    # (sigma * tau)(i) = tau(sigma(i)): the left factor acts first
    assert P("(1 2)", 3) * P("(1 3)", 3) == P("(1 2 3)", 3)


def test_identity_and_inverse():
    e = Permutation.identity(4)
    p = P("(1 2 3 4)", 4)
    assert p * p.inverse() == e
    assert p.inverse() * p == e
    assert e.is_identity()
    assert not p.is_identity()


def test_pow_and_order():
    p = P("(1 2 3 4)", 4)
    assert p**4 == Permutation.identity(4)
    assert p**-1 == p.inverse()
    assert p.order() == 4
    assert P("(1 2)(3 4 5)", 5).order() == 6


def test_conjugation_convention():
    # x ** y = y^-1 x y: conjugating a cycle relabels its points by y
    x = P("(1 2 3)", 5)
    y = P("(1 4)", 5)
    assert x.conjugate(y) == P("(4 2 3)", 5)


def test_commutator_convention():
    # [x, y] = x^-1 y^-1 x y, frozen on the Klein-four example
    x = P("(1 2)(3 4)", 4)
    y = P("(1 2 3)", 4)
    assert commutator(x, y) == P("(1 3)(2 4)", 4)


def test_rejects_non_bijections():
    with pytest.raises(InputError):
        Permutation((0, 0, 1))
    with pytest.raises(InputError):
        Permutation((0, 1, 3))


def test_degree_mismatch():
    with pytest.raises(InputError):
        P("(1 2)", 2) * P("(1 2 3)", 3)


def test_cycle_parsing():
    assert P("(1 2 3)(4 5)", 5).images == (1, 2, 0, 4, 3)
    assert P("()", 3) == Permutation.identity(3)
    with pytest.raises(InputError):
        P("(1 2 2)", 3)
    with pytest.raises(InputError):
        P("(1 9)", 3)
    with pytest.raises(InputError):
        P("(1 2) junk", 3)
    with pytest.raises(InputError):
        P("", 3)


def test_format_cycles():
    assert format_cycles(Permutation.identity(4)) == "()"
    assert format_cycles(P("(1 2 3)(4 5)", 6)) == "(1 2 3)(4 5)"


perm_strategy = st.permutations(range(6)).map(lambda xs: Permutation(tuple(xs)))


@given(perm_strategy, perm_strategy, perm_strategy)
def test_associativity(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(perm_strategy)
def test_inverse_roundtrip(p):
    assert p * p.inverse() == Permutation.identity(6)
    assert p.inverse().inverse() == p


@given(perm_strategy)
def test_format_parse_roundtrip(p):
    assert parse_cycles(format_cycles(p), 6) == p


@given(perm_strategy, perm_strategy)
def test_conjugation_is_automorphism(p, q):
    y = Permutation(tuple(range(1, 6)) + (0,))
    assert (p * q).conjugate(y) == p.conjugate(y) * q.conjugate(y)
