from pathlib import Path

import pytest

from fbc import cfl, oracle
from fbc.cfl import Nt, bar_hillel, cfg_words, is_empty, parse_cfg, shortest_word
from fbc.centralizer import conjugators
from fbc.errors import AlphabetMismatch, GrammarSyntaxError, UnknownTerminal
from fbc.ratlang import GroupNfa

DATA = Path(__file__).resolve().parent.parent / "data"

DYCK = "S -> a S a^-1 S | 1"


def test_parse_examples(swap):
    G = parse_cfg("S -> a S a^-1 | 1", swap.letters())
    assert G.nonterminals == ["S"] and G.start == "S"
    assert G.productions["S"] == [("a", Nt("S"), "a^-1"), ()]
    with pytest.raises(GrammarSyntaxError):
        parse_cfg("S -> T", swap.letters())
    with pytest.raises(UnknownTerminal):
        parse_cfg("S -> c", swap.letters())
    with pytest.raises(GrammarSyntaxError):
        parse_cfg("S -> a |", swap.letters())
    with pytest.raises(GrammarSyntaxError):
        parse_cfg("", swap.letters())
    G = cfl.all_words_grammar(swap.letters())
    assert parse_cfg(G.to_text(), swap.letters()).productions == G.productions


def test_words_and_emptiness(swap):
    G = parse_cfg(DYCK, swap.letters())
    assert cfg_words(G, 4) == {(), ("a", "a^-1"), ("a", "a^-1", "a", "a^-1"), ("a", "a", "a^-1", "a^-1")}
    assert not is_empty(G) and shortest_word(G) == ()
    assert is_empty(cfl.empty_grammar(swap.letters()))
    G = parse_cfg("S -> a T\nT -> T b", swap.letters())
    assert is_empty(G) and shortest_word(G) is None


def test_bar_hillel_examples(swap):
    letters = swap.letters()
    G = parse_cfg(DYCK, letters)
    A = GroupNfa.word(letters, ["a", "a^-1"])
    I = bar_hillel(G, A)
    assert not is_empty(I) and cfg_words(I, 8) == {("a", "a^-1")}
    assert is_empty(bar_hillel(G, GroupNfa.empty(letters)))
    assert is_empty(bar_hillel(G, GroupNfa.word(letters, ["a"])))
    with pytest.raises(AlphabetMismatch):
        bar_hillel(G, GroupNfa.word(["a", "a^-1"], ["a"]))


def random_grammar(rng, letters):
    nts = ["S", "T", "U"]
    prods = {}
    for n in nts:
        alts = []
        for _ in range(rng.randint(1, 3)):
            rhs = tuple(rng.choice([Nt(rng.choice(nts)), rng.choice(letters)])
                        for _ in range(rng.randint(0, 3)))
            alts.append(rhs)
        prods[n] = alts
    return cfl.Cfg(letters, nts, prods)


def random_nfa(rng, letters, used):
    n = rng.randint(1, 4)
    trans = [(rng.randrange(n), rng.choice(used), rng.randrange(n)) for _ in range(rng.randint(2, 7))]
    return GroupNfa(letters, n, trans, [0], [rng.randrange(n)])


def test_bar_hillel_against_enumeration(swap, rng):
    letters = swap.letters()
    used = ["t", "a", "b^-1"]
    for _ in range(60):
        G = random_grammar(rng, used + ["a^-1"])
        G = cfl.Cfg(letters, G.nonterminals, G.productions)
        A = random_nfa(rng, letters, used)
        I = bar_hillel(G, A)
        expect = cfg_words(G, 6) & set(A.enumerate(6))
        assert cfg_words(I, 6) == expect
        if expect:
            assert not is_empty(I)
        if is_empty(I):
            assert not expect


def test_constrained_boundary_grammars(swap):
    letters = swap.letters()
    g, h = swap.parse("t b"), swap.parse("t a")
    dec = cfl.constrained_conjugacy(g, h, cfl.all_words_grammar(letters))
    assert dec.is_yes
    w = swap.evaluate(dec.certificate)
    assert w.inverse() * h * w == g
    assert cfl.constrained_conjugacy(g, h, cfl.empty_grammar(letters)).is_no
    assert cfl.constrained_conjugacy(g, swap.parse("t^2 a"), cfl.all_words_grammar(letters)).is_no


def test_constrained_zero_t_exponent(swap):
    G = parse_cfg((DATA / "zero_t.cfg").read_text(), swap.letters())
    cases = [("t b", "t a", True), ("t^2 b", "t^2 a", False), ("a b", "b a", True),
             ("t^2 a", "t^2 a", True)]
    for gs, hs, expected in cases:
        g, h = swap.parse(gs), swap.parse(hs)
        dec = cfl.constrained_conjugacy(g, h, G)
        # oracle: any ball conjugator with zero t-exponent
        ball = [w for w in oracle.brute_conjugators(h, g, 2, 2) if w.a == 0]
        assert dec.is_yes == bool(ball) == expected
        if dec.is_yes:
            w = swap.evaluate(dec.certificate)
            assert w.a == 0 and w.inverse() * h * w == g
        else:
            assert dec.is_no and conjugators(h, g).is_yes
