"""Free words, the braid action, Fox derivatives, the g-basis."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gasslin.errors import GeneratorOutOfRange
from gasslin.freegroup import (
    braid_act,
    braid_act_letter,
    fox_derivative,
    fox_derivative_gbasis,
    fundamental_identity_holds,
    gbasis_to_word,
    gword_to_xword,
    psi_ring,
    psi_word,
    reduce_word,
    ring_add,
    ring_mul,
    ring_scale,
    word_inverse,
    word_mul,
    word_to_gbasis,
)
from gasslin.laurent import LaurentPoly

N = 4

letters = st.integers(min_value=-N, max_value=N).filter(lambda x: x != 0)
free_words = st.lists(letters, max_size=12).map(tuple)
braid_letters = st.integers(min_value=-(N - 1), max_value=N - 1).filter(lambda x: x != 0)
braid_words = st.lists(braid_letters, max_size=10).map(tuple)


# -- reduction and multiplication ------------------------------------------


def test_reduce_word_examples():
    assert reduce_word((1, -1)) == ()
    assert reduce_word((1, 2, -2, -1)) == ()
    assert reduce_word((1, 2, -1)) == (1, 2, -1)
    assert reduce_word((2, -1, 1, -2, 3)) == (3,)


def test_reduce_word_rejects_zero():
    with pytest.raises(GeneratorOutOfRange):
        reduce_word((1, 0, 2))


def test_word_mul_cancels_across_seam():
    assert word_mul((1, 2), (-2, 3)) == (1, 3)
    assert word_mul((1,), (-1,), (2,)) == (2,)
    assert word_mul() == ()


def test_word_inverse():
    assert word_inverse((1, -2, 3)) == (-3, 2, -1)


@given(free_words)
def test_inverse_is_two_sided(w):
    assert word_mul(w, word_inverse(w)) == ()
    assert word_mul(word_inverse(w), w) == ()


@given(free_words)
def test_reduce_idempotent(w):
    r = reduce_word(w)
    assert reduce_word(r) == r


@given(free_words, free_words, free_words)
def test_word_mul_associative(a, b, c):
    assert word_mul(word_mul(a, b), c) == word_mul(a, word_mul(b, c))


# -- braid action ----------------------------------------------------------


def test_action_on_generators():
    assert braid_act_letter((1,), 1, 3) == (1, 2, -1)
    assert braid_act_letter((2,), 1, 3) == (1,)
    assert braid_act_letter((3,), 1, 3) == (3,)
    assert braid_act_letter((-1,), 1, 3) == (1, -2, -1)
    assert braid_act_letter((1,), -1, 3) == (2,)
    assert braid_act_letter((2,), -1, 3) == (-2, 1, 2)


def test_action_letter_range():
    with pytest.raises(GeneratorOutOfRange):
        braid_act_letter((1,), 3, 3)
    with pytest.raises(GeneratorOutOfRange):
        braid_act_letter((1,), 0, 3)


def test_action_inverse_letters_cancel():
    for w in [(1,), (2,), (1, 2, -1), (3, -1)]:
        assert braid_act(w, (1, -1), N) == reduce_word(w)
        assert braid_act(w, (-2, 2), N) == reduce_word(w)


@given(free_words, braid_words)
@settings(max_examples=60)
def test_action_is_automorphism(w, bw):
    u, v = w[: len(w) // 2], w[len(w) // 2 :]
    assert braid_act(word_mul(u, v), bw, N) == word_mul(
        braid_act(u, bw, N), braid_act(v, bw, N)
    )


@given(braid_words)
@settings(max_examples=60)
def test_action_fixes_full_boundary_word(bw):
    boundary = tuple(range(1, N + 1))
    assert braid_act(boundary, bw, N) == boundary


@given(free_words, braid_words)
@settings(max_examples=60)
def test_action_undone_by_inverse_braid(w, bw):
    undo = tuple(-s for s in reversed(bw))
    assert braid_act(braid_act(w, bw, N), undo, N) == reduce_word(w)


def test_braid_relation_on_generators():
    # sigma_i sigma_{i+1} sigma_i = sigma_{i+1} sigma_i sigma_{i+1}
    for g in [(1,), (2,), (3,), (-2,)]:
        assert braid_act(g, (1, 2, 1), 3) == braid_act(g, (2, 1, 2), 3)


# -- group ring ------------------------------------------------------------


def test_ring_ops():
    a = {(1,): 2, (): -1}
    b = {(1,): -2, (2,): 3}
    assert ring_add(a, b) == {(): -1, (2,): 3}
    assert ring_scale(a, 0) == {}
    assert ring_scale(a, -2) == {(1,): -4, (): 2}
    assert ring_mul({(1,): 1}, {(-1, 2): 1, (): 1}) == {(2,): 1, (1,): 1}


# -- Fox derivatives -------------------------------------------------------


def test_fox_derivative_base_cases():
    assert fox_derivative((1,), 1, 2) == {(): 1}
    assert fox_derivative((-1,), 1, 2) == {(-1,): -1}
    assert fox_derivative((2,), 1, 2) == {}
    assert fox_derivative((1, 2), 2, 2) == {(1,): 1}
    assert fox_derivative((1, 1), 1, 2) == {(): 1, (1,): 1}


def test_fox_derivative_conjugate():
    # d(x_1 x_2 x_1^{-1})/dx_1 = 1 - x_1 x_2 x_1^{-1}
    assert fox_derivative((1, 2, -1), 1, 2) == {(): 1, (1, 2, -1): -1}


def test_fox_derivative_generator_range():
    with pytest.raises(GeneratorOutOfRange):
        fox_derivative((1,), 3, 2)


@given(free_words, free_words)
@settings(max_examples=60)
def test_fox_product_rule(u, v):
    for j in range(1, N + 1):
        lhs = fox_derivative(word_mul(u, v), j, N)
        rhs = ring_add(
            fox_derivative(u, j, N),
            ring_mul({reduce_word(u): 1}, fox_derivative(v, j, N)),
        )
        assert lhs == rhs


@given(free_words)
@settings(max_examples=80)
def test_fundamental_identity(w):
    assert fundamental_identity_holds(w, N)


# -- g-basis ---------------------------------------------------------------


def test_gbasis_words():
    assert gbasis_to_word(1, 4) == (1,)
    assert gbasis_to_word(3, 4) == (1, 2, 3)
    with pytest.raises(GeneratorOutOfRange):
        gbasis_to_word(5, 4)


def test_word_to_gbasis_examples():
    assert word_to_gbasis((1,), 3) == (1,)
    assert word_to_gbasis((2,), 3) == (-1, 2)
    assert word_to_gbasis((1, 2), 3) == (2,)
    assert word_to_gbasis((1, 2, 3), 3) == (3,)


@given(free_words)
@settings(max_examples=80)
def test_gbasis_roundtrip(w):
    assert gword_to_xword(word_to_gbasis(w, N), N) == reduce_word(w)


def test_fox_gbasis_oracles():
    # x_1 x_2 = g_2, so its g_1 derivative vanishes and its g_2 one is 1
    assert fox_derivative_gbasis((1, 2), 1, 3) == {}
    assert fox_derivative_gbasis((1, 2), 2, 3) == {(): 1}
    # x_2 = g_1^{-1} g_2: derivative -g_1^{-1} resp. g_1^{-1} over x-words
    assert fox_derivative_gbasis((2,), 1, 3) == {(-1,): -1}
    assert fox_derivative_gbasis((2,), 2, 3) == {(-1,): 1}


@given(free_words)
@settings(max_examples=60)
def test_fox_gbasis_routes_agree(w):
    # the function raises InternalMismatch if its two routes disagree
    for j in range(1, N + 1):
        fox_derivative_gbasis(w, j, N)


# -- abelianization --------------------------------------------------------


def test_psi_word_monomial():
    colors = (1, 2)
    assert psi_word((1, 1, -2), colors, 2) == LaurentPoly.monomial(2, [2, -1])
    assert psi_word((), colors, 2) == LaurentPoly.one(2)


def test_psi_word_unknown_generator():
    with pytest.raises(GeneratorOutOfRange):
        psi_word((3,), (1, 2), 2)


def test_psi_ring_linear():
    colors = (1, 1, 2)
    a = {(1,): 2, (3, 3): -1}
    expect = LaurentPoly.monomial(2, [1, 0]) * 2 - LaurentPoly.monomial(2, [0, 2])
    assert psi_ring(a, colors, 2) == expect
