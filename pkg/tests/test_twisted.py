import pytest

from fbc import automorphism as am
from fbc import oracle, stallings
from fbc import words as fw
from fbc.decision import Budget
from fbc.group import GroupPresentation
from fbc.words import Alphabet
from fbc.errors import ContextMismatch, InvalidWitness
from fbc.twisted import (TwistedWitness, combine_witnesses, compute_ea, divisors,
                         fallback_witness, inner_conjugator, negate_witness,
                         outer_order, shift_coset_witness, twisted_centralizer, twisted_conjugator,
                         verify_witness, witness_holds)

from conftest import make, random_word


def test_verify_examples(swap, trivial, f2):
    P = f2.parse
    assert verify_witness(TwistedWitness(swap, P("a"), 2, 2, ()))
    assert not verify_witness(TwistedWitness(swap, P("a"), 2, 1, ()))
    x = P("a b a b")
    for z in (P("a b"), P("b^-1 a^-1"), ()):
        assert witness_holds(trivial, x, 0, 0, z)


def test_twisted_conjugator_identity_twist(f2):
    ident = am.Automorphism.identity(2)
    assert twisted_conjugator(f2.parse("a b"), f2.parse("b a"), ident).certificate == f2.parse("a^-1")
    assert twisted_conjugator(f2.parse("a"), f2.parse("b"), ident).is_no


def test_twisted_conjugator_swap(swap, f2):
    # a = (z^-1 sigma) b z has the short solution z = a: (a^-1 sigma) b a = b^-1 b a
    x, y = f2.parse("a"), f2.parse("b")
    dec = twisted_conjugator(x, y, swap.phi, Budget(radius=2))
    assert dec.is_yes and dec.certificate == f2.parse("a")
    assert oracle.brute_twisted_conjugators(x, y, swap.phi, 2)[0] == f2.parse("a")


def test_twisted_conjugator_unknown(nielsen, f2):
    # a and b are not nu-twisted conjugate within radius 3 (oracle agrees)
    x, y = f2.parse("a"), f2.parse("b")
    assert oracle.brute_twisted_conjugators(x, y, nielsen.phi, 3) == []
    dec = twisted_conjugator(x, y, nielsen.phi, Budget(radius=3))
    assert dec.is_unknown and dec.spent == {"radius": 3}


def test_twisted_conjugator_matches_oracle(rng):
    pres = make("ab", ["a b", "b"])
    for _ in range(60):
        x = random_word(rng, 2, 3)
        z = random_word(rng, 2, 2)
        psi = pres.phi_power(rng.choice([-1, 1, 2]))
        # y chosen so that z solves x = (z^-1 psi) y z
        y = fw.mul(psi.apply(z), x, fw.inverse(z))
        dec = twisted_conjugator(x, y, psi, Budget(radius=2))
        assert dec.is_yes
        assert dec.certificate == oracle.brute_twisted_conjugators(x, y, psi, 2)[0]


def test_combine_and_negate(swap, f2):
    w = TwistedWitness(swap, f2.parse("a"), 2, 2, ())
    four = combine_witnesses(w, w)
    assert four.k == 4 and verify_witness(four)
    neg = negate_witness(w)
    assert neg.k == -2 and verify_witness(neg)


def test_context_mismatch(swap, f2):
    w1 = TwistedWitness(swap, f2.parse("a"), 2, 2, ())
    w2 = TwistedWitness(swap, f2.parse("b"), 2, 2, ())
    with pytest.raises(ContextMismatch):
        combine_witnesses(w1, w2)
    with pytest.raises(ContextMismatch):
        shift_coset_witness(w1, w2)


def test_shift_examples(swap, f2):
    x = f2.parse("a")
    w = TwistedWitness(swap, x, 2, 2, ())
    assert shift_coset_witness(w, w).z == () and shift_coset_witness(w, w).k == 4
    cur = TwistedWitness(swap, x, 2, 0, ())
    for k in range(1, 6):
        cur = shift_coset_witness(cur, w)
        assert cur.k == 2 * k and verify_witness(cur)
    with pytest.raises(InvalidWitness):
        shift_coset_witness(TwistedWitness(swap, x, 2, 1, ()), w)


def test_witness_algebra_random(rng):
    for _ in range(200):
        rank = rng.choice([2, 3])
        phi, _ = am.random_nielsen(rank, rng.randint(1, 4), rng)
        pres = GroupPresentation(Alphabet.standard(rank), phi)
        x = random_word(rng, rank, 4)
        a = rng.choice([-2, -1, 1, 2])
        w1 = fallback_witness(pres, x, a)
        w2 = TwistedWitness(pres, x, a, 0, ())
        assert verify_witness(w1) and verify_witness(w2)
        for w in (combine_witnesses(w1, w1), negate_witness(w1), combine_witnesses(w1, negate_witness(w1)),
                  shift_coset_witness(w2, w1)):
            assert verify_witness(w)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(-5) == [1, 5]


def test_compute_ea_examples(swap, trivial, nielsen, f2):
    st = compute_ea(f2.parse("a"), swap, 2)
    assert (st.e_a, st.witness.z, st.unresolved_divisors) == (2, (), [])
    st = compute_ea(f2.parse("a b"), swap, 1)
    assert st.e_a == 1 and verify_witness(st.witness)
    st = compute_ea(f2.parse("a"), trivial, 3)
    assert st.e_a == 1 and st.exact
    st = compute_ea(f2.parse("a"), nielsen, -2)
    assert st.e_a in (1, 2) and verify_witness(st.witness)


def test_compute_ea_fallback_negative(swap, f2):
    st = compute_ea(f2.parse("a"), swap, -1)
    assert st.e_a == 1 and st.witness.k == 1 and verify_witness(st.witness)


def test_inner_conjugator(f2):
    P = f2.parse
    c = P("a b")
    phi = am.Automorphism(2, [fw.conjugate((1,), c), fw.conjugate((2,), c)])
    found = inner_conjugator(phi)
    assert found is not None
    for g in (1, 2):
        assert phi.apply((g,)) == fw.conjugate((g,), found)
    assert inner_conjugator(am.Automorphism(2, [P("b"), P("a")])) is None
    assert inner_conjugator(am.Automorphism.identity(2)) == ()


def test_inner_conjugator_random(rng):
    for _ in range(200):
        c = random_word(rng, 3, 6)
        phi = am.Automorphism(3, [fw.conjugate((g,), c) for g in (1, 2, 3)])
        found = inner_conjugator(phi)
        assert found is not None
        assert all(phi.apply((g,)) == fw.conjugate((g,), found) for g in (1, 2, 3))


def test_twisted_centralizer_examples(swap, trivial, f2):
    P = f2.parse
    fixed = twisted_centralizer(P("a"), swap, 2)
    assert fixed.exact and fixed.graph == stallings.build([P("a")])
    fixed = twisted_centralizer(P("a b a b"), trivial, 1)
    assert fixed.graph == stallings.build([P("a b")])
    # x = 1 under the swap: fixed points of sigma
    fixed = twisted_centralizer((), swap, 1, Budget(radius=4))
    assert fixed.exact and fixed.graph.rank == 0
    assert not fixed.graph.contains(P("a b"))
    for w in fw.words_up_to(2, 4):
        if swap.phi.apply(w) == w:
            assert fixed.graph.contains(w)


def test_twisted_centralizer_is_sound(rng, nielsen, swap):
    for _ in range(30):
        pres = rng.choice([nielsen, swap])
        x = random_word(rng, 2, 3)
        a = rng.choice([-2, -1, 1, 2])
        fixed = twisted_centralizer(x, pres, a, Budget(radius=4))
        for y in fixed.graph.basis():
            assert witness_holds(pres, x, a, 0, y)


def test_outer_order(swap, nielsen, trivial, f2):
    assert outer_order(swap.phi, 12) == 2
    assert outer_order(trivial.phi, 12) == 1
    assert outer_order(nielsen.phi, 12) is None
    c = f2.parse("a b^-1")
    conj_swap = am.Automorphism(2, [fw.conjugate(img, c) for img in swap.phi.images])
    assert outer_order(conj_swap, 12) == 2


def test_exact_fixed_subgroups_match_ball(rng, f2):
    # phi = swap followed by conjugation: finite outer order, so C_0 is structural
    for _ in range(25):
        c = random_word(rng, 2, 2)
        phi = am.Automorphism(2, [fw.conjugate(img, c) for img in (f2.parse("b"), f2.parse("a"))])
        pres = GroupPresentation(f2, phi)
        x = random_word(rng, 2, 3)
        a = rng.choice([-3, -1, 1, 3])
        fixed = twisted_centralizer(x, pres, a, Budget(radius=3))
        psi = pres.phi_power(a)
        for y in fw.words_up_to(2, 4):
            holds = fw.mul(fw.inverse(x), psi.apply(y), x) == y
            if fixed.exact:
                assert fixed.graph.contains(y) == holds
            elif holds:
                assert fixed.graph.contains(y) or len(y) > 3
