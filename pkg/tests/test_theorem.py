from math import factorial

import pytest

from rubikshape import movelang, theorem
from rubikshape.group import build_bsgs, group_order
from rubikshape.movelang import LTR, RTL, Atom, Inverse, Power, Sequence
from rubikshape.perm import sign, transposition
from rubikshape.shape import BACKWARD, FORWARD, generators, two_cycle_shape
from rubikshape.square import standard_square
from rubikshape.theorem import VariantSpec

S1, S2 = Atom("s1"), Atom("s2")
WORKING = VariantSpec(LTR, "(k-1)/2", BACKWARD, FORWARD)


def evaluate(w, k, l, v):
    return movelang.eval_word(w, theorem.base_bindings(k, l, v), v.order,
                              degree=theorem.base_degree(k, l))


def test_base_generators_follow_labels():
    s1, s2 = theorem.base_generators(4, 3)
    assert s1.image[:5] == (1, 2, 3, 4, 0)
    assert s2.image[0] == 7 and s2.image[7] == 6 and s2.image[5] == 0


def test_printed_word_k4_j1():
    w = theorem.base_psi_word(4, 3, 1)
    want = Sequence((Power(S1, 2), Sequence((Inverse(S2), S1, S2, S1)), Inverse(S2),
                     Power(S1, 2), S2, Power(S1, 4)))
    assert w == want


def test_odd_k_printed_exponent_inapplicable():
    with pytest.raises(theorem.InapplicableVariant):
        theorem.base_psi_word(3, 2, 1)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_last_j_ends_in_single_s1(k):
    v = VariantSpec(exponent="(k-2)/2" if k % 2 == 0 else "(k-1)/2")
    w = theorem.base_psi_word(k, 2, k, v)
    assert w.items[-1] == S1


def test_bad_j():
    with pytest.raises(ValueError):
        theorem.base_psi_word(4, 3, 0)


@pytest.mark.parametrize("k", range(2, 9, 2))
@pytest.mark.parametrize("l", range(2, 6))
def test_sign_identity_for_printed_word(k, l):
    _, s2 = theorem.base_generators(k, l)
    for j in range(1, k + 1):
        w = theorem.base_psi_word(k, l, j)
        counts = {"s1": 0, "s2": 0}
        for name, e in movelang.letters(w):
            counts[name] += abs(e)
        assert (counts["s1"], counts["s2"]) == (2 * k + 2, k)
        assert sign(evaluate(w, k, l, VariantSpec())) == sign(s2) ** k == 1


@pytest.mark.parametrize("k, l", [(4, 3), (2, 2), (6, 5)])
def test_even_k_report_flags_printed_word(k, l):
    rep = theorem.verify_base_case(k, l)
    assert any("sign(s2)^k = +1" in d for d in rep.discrepancies)
    assert "identity holds" in rep.lines[0]


@pytest.mark.parametrize("k", [3, 5, 7])
@pytest.mark.parametrize("l", [2, 3, 4])
def test_odd_k_verified_variant(k, l):
    rep = theorem.verify_base_case(k, l)
    assert WORKING.id in rep.validated
    assert rep.conclusion.startswith("constructive base case verified under variant")


def test_outcomes_reevaluate():
    rep = theorem.verify_base_case(3, 3)
    variants = {v.id: v for v in theorem.ALL_VARIANTS}
    n = theorem.base_degree(3, 3)
    for j, vid, kind, p in rep.outcomes:
        if kind == "inapplicable":
            assert p is None
            continue
        again = evaluate(theorem.base_psi_word(3, 3, j, variants[vid]), 3, 3, variants[vid])
        assert again == p
        assert (kind == f"is-transposition({j - 1},{j})") == (p == transposition(n, j - 1, j))


def test_verify_base_case_rejects_small():
    with pytest.raises(ValueError):
        theorem.verify_base_case(1, 3)


def test_big_psi():
    k, l = 5, 2
    psi = theorem.base_words(k, l, WORKING)
    n = theorem.base_degree(k, l)
    assert theorem.big_psi_word(2, 1, k, l, psi) == psi[2]
    w = theorem.big_psi_word(3, 1, k, l, psi)
    assert w == Sequence((Inverse(psi[3]), psi[2], psi[3]))
    for a in range(1, k + 1):
        for b in range(a):
            p = evaluate(theorem.big_psi_word(a, b, k, l, psi), k, l, WORKING)
            assert p == transposition(n, a, b)
            assert sign(p) == -1


def test_big_psi_missing_word():
    with pytest.raises(KeyError):
        theorem.big_psi_word(3, 0, 5, 2, {1: S1})


def test_cross_exponent_never_zero():
    for k in range(2, 9):
        for l in range(2, 9):
            for b in range(k + 1, k + l + 1):
                raw, e = theorem.cross_exponent(k, l, b)
                assert raw < 0 and 1 <= e <= l


@pytest.mark.parametrize("k, l", [(3, 2), (3, 4), (5, 3)])
def test_cross_cycle_words(k, l):
    psi = theorem.base_words(k, l, WORKING)
    n = theorem.base_degree(k, l)
    for a in range(1, k + 1):
        big = theorem.big_psi_word(a, 0, k, l, psi)
        for b in range(k + 1, k + l + 1):
            w = theorem.cross_cycle_word(a, b, k, l, big)
            assert evaluate(w, k, l, WORKING) == transposition(n, a, b)


def test_cross_cycle_ranges():
    with pytest.raises(ValueError):
        theorem.cross_cycle_word(0, 4, 3, 2, S1)
    with pytest.raises(ValueError):
        theorem.cross_cycle_word(1, 2, 3, 2, S1)


def test_inductive_phi_on_square():
    shape, _ = standard_square()
    gens = generators(shape)
    group = build_bsgs(12, list(gens.items()))
    from rubikshape.group import factor_word
    v = theorem.InductiveVariant(LTR, BACKWARD, FORWARD, -1)
    host, shared = theorem.host_cycle(shape, 2)
    nb = theorem.host_neighbor(shape, host, shared, v.neighbor)
    psi = factor_word(group, transposition(12, shared, nb))
    pos = theorem.positions_from(shape.cycles[2], shared)
    for j in range(1, 4):
        w = theorem.inductive_phi_word(shape, 2, j, psi, v)
        assert movelang.eval_word(w, gens, degree=12) == transposition(12, pos[j - 1], pos[j])


def test_inductive_phi_rejects_unverified():
    shape, _ = standard_square()
    with pytest.raises(theorem.UnverifiedWord):
        theorem.inductive_phi_word(shape, 2, 1, Atom("M1"))


def test_inductive_phi_exponent_one():
    shape, _ = standard_square()
    w = theorem.inductive_phi_word(shape, 2, 3, Atom("M1"), check=False)
    conj = w.items[2]
    assert conj.items[-1] == Atom("M3")


def test_constructive_square_triangle():
    rep = theorem.constructive_completeness(two_cycle_shape(4, 3))
    assert rep.full_symmetric is True
    assert rep.order == 720
    assert rep.conclusion == "full-symmetric"
    assert any("agrees" in line for line in rep.lines)


def test_constructive_two_triangles():
    rep = theorem.constructive_completeness(two_cycle_shape(3, 3))
    assert rep.full_symmetric is False
    assert "parity obstruction" in rep.conclusion
    assert any("alternating group on 5 edges" in line for line in rep.lines)


def test_constructive_square():
    rep = theorem.constructive_completeness(standard_square()[0])
    assert rep.full_symmetric is True and rep.order == 479001600
    assert any(line.startswith("step: cycle 3") for line in rep.lines)


@pytest.mark.parametrize("m1, m2", [(3, 3), (5, 5), (3, 7)])
def test_parity_obstruction_odd(m1, m2):
    ok, cert = theorem.parity_obstruction(two_cycle_shape(m1, m2))
    assert ok
    assert cert == [(1, m1, 1), (2, m2, 1)]


def test_parity_obstruction_square():
    ok, cert = theorem.parity_obstruction(standard_square()[0])
    assert not ok
    assert [c[1:] for c in cert] == [(4, -1)] * 4


def test_certificate_text():
    _, cert = theorem.parity_obstruction(two_cycle_shape(3, 3))
    assert theorem.format_certificate(cert) == "M1: 3-cycle sign +1; M2: 3-cycle sign +1"


def test_odd_shape_edge_count():
    # two cycles of lengths 2k+1 and 2l+1 glued on one edge
    for k in range(1, 4):
        for l in range(1, 4):
            s = two_cycle_shape(2 * k + 1, 2 * l + 1)
            assert s.n_edges == 2 * k + 2 * l + 1
            order = group_order(build_bsgs(s.n_edges, list(generators(s).items())))
            assert factorial(s.n_edges) // 2 % order == 0


def test_rtl_cross_mirror():
    k, l = 3, 3
    v = VariantSpec(RTL, "(k-1)/2", FORWARD, FORWARD)
    psi = theorem.base_words(k, l, v)
    n = theorem.base_degree(k, l)
    big = theorem.big_psi_word(1, 0, k, l, psi)
    p = evaluate(theorem.cross_cycle_word(1, k + 1, k, l, big), k, l, v)
    assert p == transposition(n, 1, 2 * k + l + 1 - (k + 1))
