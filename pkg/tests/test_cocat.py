import random

import pytest
from hypothesis import given, strategies as st

from ainfty.cocat import TensorBar, Word, bar_differential_word, concat_words, empty_word, split_word, word
from ainfty.graded import add_into, sign
from ainfty.zoo import RandomDgConfig, cone, dual, dual2, interval, random_dg

SMALL = RandomDgConfig(max_objects=2, max_layer1=2, max_layer2=1)


def _two_slot(seed):
    rng = random.Random(seed)
    return TensorBar([random_dg(rng, SMALL), rng.choice([dual(), interval(), cone()])], 3)


def _apply_left(T, pairs):
    """(Delta (x) 1) applied to a sum of pairs."""
    out: dict = {}
    for (k1, k2), s in pairs.items():
        for (a, b), t in T.delta(k1, 2, reduced=False).items():
            add_into(out, {(a, b, k2): s * t})
    return out


def _apply_right(T, pairs):
    out: dict = {}
    for (k1, k2), s in pairs.items():
        for (a, b), t in T.delta(k2, 2, reduced=False).items():
            add_into(out, {(k1, a, b): s * t})
    return out


@given(st.integers(0, 10_000))
def test_comultiplication_is_coassociative(seed):
    T = _two_slot(seed)
    for key in T.all_basis(3):
        d2 = T.delta(key, 2, reduced=False)
        d3 = T.delta(key, 3, reduced=False)
        assert _apply_left(T, d2) == d3 == _apply_right(T, d2)


@given(st.integers(0, 10_000))
def test_differential_is_a_coderivation(seed):
    """Delta d = (d (x) 1 + 1 (x) d) Delta, with the Koszul sign of d passing the left factor."""
    T = _two_slot(seed)
    for key in T.all_basis(3):
        lhs: dict = {}
        for k2, c in T.d(key).items():
            for pair, s in T.delta(k2, 2, reduced=False).items():
                add_into(lhs, {pair: c * s})
        rhs: dict = {}
        for (a, b), s in T.delta(key, 2, reduced=False).items():
            for a2, c in T.d(a).items():
                add_into(rhs, {(a2, b): s * c})
            for b2, c in T.d(b).items():
                add_into(rhs, {(a, b2): s * c * sign(T.degree(a))})
        assert lhs == rhs


@given(st.integers(0, 10_000))
def test_two_letter_differential_formula(seed):
    """d(sf|sg) = -(s m1 f|sg) - (-1)^{|sf|}(sf|s m1 g) - (-1)^{|sf|} s m2(f, g)."""
    a = random_dg(random.Random(seed), SMALL)
    one = a.field.one
    for f, g in a.chains(2):
        want: dict = {}
        sf = a.degree(f) - 1
        for y, c in a.m(1, (f,)).items():
            add_into(want, {word((y, g)): -c})
        for y, c in a.m(1, (g,)).items():
            add_into(want, {word((f, y)): -sign(sf) * c})
        for y, c in a.m(2, (f, g)).items():
            add_into(want, {word((y,)): -sign(sf) * c})
        assert bar_differential_word(a, word((f, g))) == want


def test_bar_differential_squares_to_zero_on_dual2():
    T = TensorBar([dual2()], 4, augmented=False)
    for key in T.all_basis(4):
        assert not T.d_vec(T.d(key))


def test_word_helpers():
    a = interval()
    f = next(x for x in a.all_basis() if x.label == "f")
    ids = [x for x in a.all_basis() if x.src == x.tgt]
    w = word((f, next(i for i in ids if i.tgt == f.src)))
    u, v = split_word(w, 1)
    assert concat_words([u, v]) == w
    assert split_word(w, 0)[0] == empty_word(w.tgt)
    with pytest.raises(ValueError):
        word(())


def test_weights_and_units():
    T = TensorBar([dual(), interval()], 2, include_units=True)
    units = [k for k in T.all_basis(2) if T.is_unit(k)]
    assert len(units) == len(T.objects)
    assert all(T.weight(k) <= 2 for k in T.all_basis(2))
    assert all(T.degree(T.unit(x)) == 0 for x in T.objects)
