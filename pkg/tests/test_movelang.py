import random

import pytest
from hypothesis import given, strategies as st

import oracles
from rubikshape import movelang
from rubikshape.movelang import (EMPTY, Atom, Inverse, Power, Sequence, ShapeFileError,
                                 UnboundName, UnknownName, WordSyntaxError, atom_count,
                                 eval_word, format_word, normalize, parse_shape_file,
                                 parse_word)
from rubikshape.perm import compose, identity, inverse, power
from rubikshape.shape import SharedEdgeViolation, generators
from rubikshape.square import STANDARD_COLORS, standard_square

MOVES = {"M1", "M2", "M3", "M4"}
G_TL = "M1M3M1M2M2M2M3M3M3M1M2"


@pytest.fixture(scope="module")
def square():
    return standard_square()[0]


def random_word(rng, depth=0):
    r = rng.random()
    if depth > 3 or r < 0.35:
        return Atom(rng.choice(["M1", "M2", "M3", "M4", "G_TL", "x_1"]))
    if r < 0.5:
        return Inverse(random_word(rng, depth + 1))
    if r < 0.65:
        return Power(random_word(rng, depth + 1), rng.randint(-4, 5))
    return Sequence(tuple(random_word(rng, depth + 1) for _ in range(rng.randint(0, 4))))


def test_parse_power_form_expands_to_printed_word():
    w = parse_word("M1 M3 M1 M2^3 M3^3 M1 M2", MOVES)
    assert isinstance(w, Sequence)
    spelled = [n for n, e in movelang.letters(w) for _ in range(e)]
    assert "".join(spelled) == G_TL


def test_parse_macro_sequence():
    w = parse_word("G_TL L_13 G_TL'", {"G_TL", "L_13"})
    assert w == Sequence((Atom("G_TL"), Atom("L_13"), Inverse(Atom("G_TL"))))


def test_unknown_name():
    with pytest.raises(UnknownName):
        parse_word("M5", MOVES)


@pytest.mark.parametrize("text, pos", [("M1 ^", 4), ("(M1 M2", 6), ("M1 )", 3), ("M1 $", 3)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(WordSyntaxError) as info:
        parse_word(text, MOVES)
    assert info.value.position == pos


def test_format_examples():
    assert format_word(Sequence((Atom("M1"), Inverse(Atom("M2"))))) == "M1 M2'"
    assert format_word(EMPTY) == ""
    assert format_word(Power(Atom("M3"), 3)) == "M3^3"
    assert format_word(Power(Sequence((Atom("a"), Atom("b"))), -2)) == "(a b)^-2"


def test_normalization():
    assert normalize(Power(Atom("a"), 1)) == Atom("a")
    assert normalize(Sequence((Atom("a"),))) == Atom("a")
    assert parse_word("(M1)^1") == Atom("M1")


def test_round_trip_200_random():
    rng = random.Random(2024)
    for _ in range(200):
        w = random_word(rng)
        assert parse_word(format_word(w)) == normalize(w)


@given(st.lists(st.sampled_from(sorted(MOVES)), max_size=12),
       st.lists(st.sampled_from(sorted(MOVES)), max_size=12))
def test_eval_homomorphism(a, b):
    shape = standard_square()[0]
    gens = generators(shape)
    wa, wb = parse_word(" ".join(a)), parse_word(" ".join(b))
    joined = parse_word(" ".join(a + b))
    assert eval_word(joined, gens, degree=12) == compose(eval_word(wa, gens, degree=12),
                                                         eval_word(wb, gens, degree=12))


@pytest.mark.parametrize("n", range(-8, 9))
def test_power_expansion(square, n):
    gens = generators(square)
    spelled = " ".join(["M2"] * n) if n >= 0 else " ".join(["M2'"] * -n)
    assert eval_word(parse_word(f"M2^{n}"), gens, degree=12) == \
        eval_word(parse_word(spelled), gens, degree=12)


def test_eval_examples(square):
    gens = generators(square)
    assert eval_word(parse_word("M1 M1 M1 M1"), gens) == identity(12)
    assert eval_word(parse_word("M1'"), gens) == inverse(gens["M1"])
    assert eval_word(EMPTY, gens, degree=12) == identity(12)
    with pytest.raises(UnboundName):
        eval_word(Atom("M9"), gens)


def test_conventions_disagree_and_rtl_reverses(square):
    gens = generators(square)
    w = parse_word("M1 M2 M3^2")
    ltr = eval_word(w, gens, "ltr")
    rtl = eval_word(w, gens, "rtl")
    assert ltr != rtl
    assert rtl == eval_word(parse_word("M3^2 M2 M1"), gens, "ltr")


def test_eval_matches_tracking_oracle(square):
    gens = generators(square)
    w = parse_word(" ".join(f"M{c}" for c in G_TL[1::2]))
    assert eval_word(w, gens).image == tuple(oracles.track(movelang.letters(w)))


def test_atom_count_with_macros():
    env = {"A": parse_word("M1 M2^3")}
    assert atom_count(parse_word("A A' M3^-2", {"A", "M3"}), env) == 10


def test_from_letters_merges_runs():
    w = movelang.from_letters([("M1", 1), ("M1", 1), ("M2", -1), ("M3", 1), ("M3", -1)])
    assert format_word(w) == "M1^2 M2'"


SQUARE_TRIANGLE = """\
base 4
attach path v0 v1 new 1
"""


def test_shape_file_square_triangle():
    doc = parse_shape_file(SQUARE_TRIANGLE)
    assert doc.shape.n_edges == 6
    assert doc.colors is None and doc.macros == {}


def test_bundled_square_file(data_dir, square):
    doc = movelang.load_shape_file(data_dir / "square2x2.shape")
    assert doc.shape == square
    assert str(doc.colors) == STANDARD_COLORS
    assert "".join(oracles.FIGURE2[i] for i in range(1, 13)) == STANDARD_COLORS
    assert atom_count(doc.macros["G_TL"]) == 11


def test_shared_edge_violation_has_line():
    text = "base 3\nattach path v0 v1 new 1\n# comment\nattach path v0 v1 new 2\n"
    with pytest.raises(SharedEdgeViolation) as info:
        parse_shape_file(text)
    assert info.value.line == 4
    assert "line 4" in str(info.value)


@pytest.mark.parametrize("text, line", [
    ("attach path v0 v1 new 1\n", 1),
    ("base 3\nbase 4\n", 2),
    ("base 3\nfrobnicate\n", 2),
    ("base 3\nlet M1 = M1 M1\n", 2),
    ("base 3\nlet A = M1\nlet A = M1'\n", 3),
    ("base 3\nlet A = M2\n", 2),
    ("base 3\ncolor 4 r\n", 2),
    ("base 3\ncolor 1 q\n", 2),
    ("base x\n", 1),
])
def test_shape_file_errors(text, line):
    with pytest.raises((ShapeFileError, movelang.MoveLangError, ValueError)) as info:
        parse_shape_file(text)
    assert f"line {line}" in str(info.value)


def test_partial_coloring_rejected():
    with pytest.raises(ShapeFileError):
        parse_shape_file("base 3\ncolor 1 r\n")


def test_power_zero_and_negative(square):
    gens = generators(square)
    assert eval_word(parse_word("M4^0"), gens, degree=12) == identity(12)
    assert eval_word(parse_word("(M1 M2)^-3"), gens) == power(compose(gens["M1"], gens["M2"]), -3)
