import pytest
from hypothesis import given, strategies as st

from fitset.errors import ParseError
from fitset.perm import Permutation, parse_permutation


@pytest.mark.parametrize("text,degree,images", [
    ("(1 2 3)", 3, (1, 2, 0)),
    ("()", 4, (0, 1, 2, 3)),
    ("(1 2)(3 4)", 5, (1, 0, 3, 2, 4)),
    ("(1,2,3)", 3, (1, 2, 0)),
    ("", 2, (0, 1)),
])
def test_parse_examples(text, degree, images):
    assert parse_permutation(text, degree).images == images


def test_cycles_compose_left_to_right():
    # (1 2) then (2 3): 1 -> 2 -> 3, 2 -> 1, 3 -> 2
    p = parse_permutation("(1 2)(2 3)", 3)
    assert p.images == (2, 0, 1)


@pytest.mark.parametrize("text", ["(1 4)", "(0 1)", "(1 2", "1 2)", "((1 2))", "(1 2 1)", "(1 a)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_permutation(text, 3)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_permutation("(1 2)(3 x)", 4)
    assert info.value.pos == 8


perms = st.integers(1, 7).flatmap(lambda n: st.permutations(range(n)).map(lambda p: Permutation(tuple(p))))


@given(perms)
def test_str_round_trip(p):
    assert parse_permutation(str(p), p.degree) == p


@given(perms)
def test_inverse_by_cycles(p):
    inv = Permutation(tuple(sorted(range(p.degree), key=lambda i: p.images[i])))
    assert (p * inv) == Permutation.identity(p.degree)
