import random

import pytest
from hypothesis import given, strategies as st

import oracles
from rubikshape.perm import (Permutation, PermutationError, compose, format_cycles,
                             from_cycles, identity, inverse, parse_cycles, power, sign,
                             to_cycles, transposition)


def perms(max_degree=12):
    return st.integers(0, max_degree).flatmap(
        lambda n: st.permutations(list(range(n))).map(Permutation))


def same_degree_pair(max_degree=12):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.tuples(st.permutations(list(range(n))), st.permutations(list(range(n)))))


def test_identity():
    assert identity(3).image == (0, 1, 2)
    assert identity(0).image == ()
    p = from_cycles(5, [[0, 3], [1, 2, 4]])
    assert compose(identity(5), p) == p


def test_compose_left_to_right():
    assert compose(from_cycles(3, [[0, 1]]), from_cycles(3, [[1, 2]])) == from_cycles(3, [[0, 2, 1]])


def test_square_face_twice():
    s1 = from_cycles(12, [[0, 3, 5, 2]])
    assert compose(s1, s1) == from_cycles(12, [[0, 5], [3, 2]])


def test_compose_degree_mismatch():
    with pytest.raises(PermutationError):
        compose(identity(2), identity(3))


def test_inverse_examples():
    assert inverse(from_cycles(4, [[0, 1, 2, 3]])) == from_cycles(4, [[0, 3, 2, 1]])
    assert inverse(identity(4)) == identity(4)
    t = transposition(4, 0, 1)
    assert inverse(t) == t


def test_power_examples():
    c = from_cycles(4, [[0, 1, 2, 3]])
    assert power(c, 2) == from_cycles(4, [[0, 2], [1, 3]])
    assert power(c, -1) == from_cycles(4, [[0, 3, 2, 1]])
    assert power(from_cycles(3, [[0, 1, 2]]), 3) == identity(3)
    assert power(c, 0) == identity(4)


@pytest.mark.parametrize("cycles", [
    [[0, 1], [1, 2]],
    [[0, 0]],
    [[0, 4]],
    [[-1, 2]],
])
def test_from_cycles_rejects(cycles):
    with pytest.raises(PermutationError):
        from_cycles(4, cycles)


def test_from_cycles_empty():
    assert from_cycles(5, []) == identity(5)


def test_sign_examples():
    assert sign(from_cycles(4, [[0, 1, 2, 3]])) == -1
    assert sign(from_cycles(3, [[0, 1, 2]])) == 1
    assert sign(identity(0)) == 1


def test_to_cycles_canonical():
    assert to_cycles(identity(6)) == []
    assert to_cycles(from_cycles(4, [[3, 1], [2, 0]])) == [[0, 2], [1, 3]]
    assert to_cycles(power(from_cycles(4, [[0, 1, 2, 3]]), 2)) == [[0, 2], [1, 3]]
    assert to_cycles(from_cycles(5, [[4, 2, 3]])) == [[2, 3, 4]]


def test_cycle_text():
    p = from_cycles(12, [[0, 7], [1, 5], [2, 3]])
    assert format_cycles(p, 1) == "(1 8)(2 6)(3 4)"
    assert parse_cycles(12, "(1 8)(2 6)(3 4)", 1) == p
    assert format_cycles(identity(3)) == "()"
    assert parse_cycles(3, "()") == identity(3)


def test_image_must_be_bijection():
    with pytest.raises(PermutationError):
        Permutation([0, 0, 1])


@given(same_degree_pair())
def test_compose_matches_list_oracle(pair):
    a, b = pair
    assert compose(Permutation(a), Permutation(b)).image == tuple(oracles.compose(a, b))


@given(perms())
def test_sign_matches_inversion_count(p):
    assert sign(p) == oracles.inversion_sign(list(p.image))


@given(perms())
def test_to_cycles_round_trip(p):
    assert from_cycles(p.degree, to_cycles(p)) == p


@given(perms())
def test_power_order_is_identity(p):
    assert power(p, p.order()) == identity(p.degree)


@given(perms(), st.integers(-9, 9))
def test_power_matches_repeated_compose(p, e):
    q = identity(p.degree)
    step = p if e >= 0 else inverse(p)
    for _ in range(abs(e)):
        q = compose(q, step)
    assert power(p, e) == q


@pytest.mark.parametrize("m", range(1, 10))
def test_cycle_sign(m):
    assert sign(from_cycles(m, [list(range(m))])) == (-1) ** (m - 1)


def test_operators_follow_functions():
    rng = random.Random(3)
    a = Permutation(rng.sample(range(7), 7))
    b = Permutation(rng.sample(range(7), 7))
    assert a * b == compose(a, b)
    assert ~a == inverse(a)
    assert a ** -3 == power(a, -3)
    assert hash(a) == hash(Permutation(list(a.image)))
