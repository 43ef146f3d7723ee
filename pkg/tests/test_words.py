import itertools

import pytest
from hypothesis import given, strategies as st

from fbc import words as fw
from fbc.errors import IdentityInput, UnknownGenerator
from fbc.words import Alphabet

from conftest import random_word

letters2 = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=20)
letters3 = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=20)


def test_reduce_examples(f2):
    assert f2.format(f2.parse("a b b^-1 a")) == "a a"
    assert f2.format(f2.parse("")) == "1"
    assert f2.format(f2.parse("a a^-1")) == "1"
    assert f2.parse("a^3 b^-2") == (1, 1, 1, -2, -2)


def test_reduce_rejects_unknown_generator(f2):
    with pytest.raises(UnknownGenerator):
        fw.reduce([1, 3], rank=2)
    with pytest.raises(UnknownGenerator):
        f2.parse("a c")


def test_mul_and_inverse(f2):
    P = f2.parse
    assert fw.mul(P("a b"), P("b^-1 a")) == P("a a")
    assert f2.format(fw.inverse(P("a b^-1"))) == "b a^-1"


@given(letters3)
def test_reduce_idempotent(s):
    r = fw.reduce(s)
    assert fw.reduce(r) == r
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))


def test_group_laws_fuzz(rng):
    for _ in range(10_000):
        u, v, w = (random_word(rng, 3, 12) for _ in range(3))
        assert fw.mul(fw.mul(u, v), w) == fw.mul(u, fw.mul(v, w))
        assert fw.mul(u, fw.inverse(u)) == ()
        assert fw.inverse(fw.mul(u, v)) == fw.mul(fw.inverse(v), fw.inverse(u))


def brute_least_rotation(c):
    rots = [c[i:] + c[:i] for i in range(len(c))]
    return min(rots, key=lambda r: [fw.letter_key(x) for x in r])


@given(letters3)
def test_booth_matches_brute_force(s):
    c = tuple(s)
    if not c:
        return
    assert fw.rotate(c, fw.least_rotation(c)) == brute_least_rotation(c)


def test_letter_order_puts_inverses_last():
    assert sorted([-1, 2, 1, -2], key=fw.letter_key) == [1, 2, -1, -2]


def test_cyclic_form_examples(f2):
    P = f2.parse
    assert fw.cyclic_form(P("a b a^-1")) == (P("b"), P("a"))
    # "b a": rotations are "b a" and "a b"; a < b so "a b" is least
    assert brute_least_rotation(P("b a")) == P("a b")
    assert fw.cyclic_form(P("b a")) == (P("a b"), P("b"))
    assert fw.cyclic_form(()) == ((), ())


@given(letters3)
def test_cyclic_form_reassembles(s):
    x = fw.reduce(s)
    c, w = fw.cyclic_form(x)
    assert fw.mul(w, c, fw.inverse(w)) == x
    assert (c == ()) == (x == ())


def test_conjugacy_witness_examples(f2):
    P = f2.parse
    z = fw.conjugacy_witness(P("a b"), P("b a"))
    assert z == P("a^-1")
    assert fw.mul(fw.inverse(z), P("b a"), z) == P("a b")
    assert fw.conjugacy_witness(P("a"), P("b")) is None
    assert fw.conjugacy_witness(P("a b a"), P("a b a")) == ()


def test_conjugacy_matches_ball_search():
    # exhaustive over all pairs of words of length <= 4 in F_2, conjugators in the radius-4 ball
    ball = list(fw.words_up_to(2, 4))
    conj_class = {y: {fw.mul(fw.inverse(z), y, z) for z in ball} for y in ball}
    for y in ball:
        for x in ball:
            brute = x in conj_class[y]
            z = fw.conjugacy_witness(x, y)
            assert (z is not None) == brute
            if z is not None:
                assert fw.mul(fw.inverse(z), y, z) == x
            assert (fw.canonical(x) == fw.canonical(y)) == brute


def naive_power(u, m):
    out = ()
    for _ in range(m):
        out = fw.mul(out, u)
    return out


def test_primitive_root_examples(f2):
    P = f2.parse
    assert fw.primitive_root(P("a b a b")) == (P("a b"), 2)
    assert fw.primitive_root(P("a")) == (P("a"), 1)
    assert fw.centralizer_free(P("a b a b")) == P("a b")
    with pytest.raises(IdentityInput):
        fw.centralizer_free(())


def test_primitive_root_against_power_table():
    ball = list(fw.words_up_to(2, 6))
    best = {}
    for u in ball[1:]:
        for m in range(1, 7):
            w = naive_power(u, m)
            if len(w) <= 6:
                best[w] = max(best.get(w, 0), m)
    for x in ball[1:]:
        u, m = fw.primitive_root(x)
        assert naive_power(u, m) == x
        assert m == best[x]
        assert fw.primitive_root(u) == (u, 1)


def test_centralizer_free_commutes_and_generates(rng):
    for _ in range(300):
        x = random_word(rng, 2, 10)
        if not x:
            continue
        u = fw.centralizer_free(x)
        assert fw.mul(u, x) == fw.mul(x, u)
        _, m = fw.primitive_root(x)
        assert naive_power(u, m) == x


def test_count_reduced():
    assert fw.count_reduced(2, 2) == 17
    for rank, L in itertools.product([1, 2, 3], range(5)):
        assert fw.count_reduced(rank, L) == len(list(fw.words_up_to(rank, L)))


def test_words_up_to_is_shortlex():
    ws = list(fw.words_up_to(2, 3))
    assert ws == sorted(ws, key=fw.word_key)


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(["a", "a"])
    with pytest.raises(ValueError):
        Alphabet(["t", "a"])
    al = Alphabet(["x", "y", "z"])
    assert al.format(al.parse("x y^-1 z^2")) == "x y^-1 z z"
