"""Twisted conjugacy certificates and the twisted centralizer.

For a presentation with automorphism phi, an exponent ``a`` and ``x`` in F_n,
a witness for ``k`` is any ``z`` with

    x = (z^-1 phi^a) (x phi^k) z,

that is, ``z`` lies in the coset C_k of the twisted centralizer C_0.  The
exponents admitting a witness form the subgroup e_a Z of Z with e_a | a.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

from . import stallings
from . import words as fw
from .automorphism import Automorphism
from .decision import DEFAULT_BUDGET, Budget, Decision
from .errors import ContextMismatch, InvalidWitness
from .group import GroupPresentation
from .stallings import SubgroupGraph
from .words import Word


@dataclass(frozen=True)
class TwistedWitness:
    pres: GroupPresentation
    x: Word
    a: int
    k: int
    z: Word

    def same_context(self, other: "TwistedWitness") -> bool:
        return self.pres is other.pres and self.x == other.x and self.a == other.a


def witness_holds(pres: GroupPresentation, x: Word, a: int, k: int, z: Sequence[int]) -> bool:
    lhs = fw.mul(pres.phi_power(a).apply(fw.inverse(z)), pres.phi_power(k).apply(x), z)
    return lhs == tuple(x)


def verify_witness(w: TwistedWitness) -> bool:
    return witness_holds(w.pres, w.x, w.a, w.k, w.z)


def _require_context(w1: TwistedWitness, w2: TwistedWitness) -> None:
    if not w1.same_context(w2):
        raise ContextMismatch("witnesses refer to different (x, a, phi)")


def combine_witnesses(w1: TwistedWitness, w2: TwistedWitness) -> TwistedWitness:
    """Witness for ``w1.k + w2.k``: the element ``(w1.z phi^{k2}) w2.z``."""
    _require_context(w1, w2)
    z = fw.mul(w1.pres.phi_power(w2.k).apply(w1.z), w2.z)
    out = TwistedWitness(w1.pres, w1.x, w1.a, w1.k + w2.k, z)
    assert verify_witness(out) or not (verify_witness(w1) and verify_witness(w2))
    return out


def negate_witness(w: TwistedWitness) -> TwistedWitness:
    """Witness for ``-w.k``: the element ``z^-1 phi^-k``."""
    z = w.pres.phi_power(-w.k).apply(fw.inverse(w.z))
    out = TwistedWitness(w.pres, w.x, w.a, -w.k, z)
    assert verify_witness(out) or not verify_witness(w)
    return out


def shift_coset_witness(y: TwistedWitness, z: TwistedWitness) -> TwistedWitness:
    """From ``y`` in C_{k e} and ``z`` in C_e, the element ``(y phi^e) z`` of C_{(k+1) e}."""
    _require_context(y, z)
    if not verify_witness(y) or not verify_witness(z):
        raise InvalidWitness("shift needs two verified witnesses")
    elem = fw.mul(y.pres.phi_power(z.k).apply(y.z), z.z)
    out = TwistedWitness(y.pres, y.x, y.a, y.k + z.k, elem)
    if not verify_witness(out):
        raise InvalidWitness("shifted witness failed verification")
    return out


def ball_with_images(rank: int, radius: int, psi: Automorphism) -> Iterator[tuple[Word, Word]]:
    """Pairs ``(z, z psi)`` over the ball of radius ``radius`` in shortlex order."""
    letters = sorted([*range(1, rank + 1), *range(-1, -rank - 1, -1)], key=fw.letter_key)
    images = {x: psi.apply((x,)) for x in letters}
    layer = [((), ())]
    yield (), ()
    for _ in range(radius):
        nxt = []
        for w, img in layer:
            last = w[-1] if w else 0
            for x in letters:
                if x != -last:
                    nxt.append((w + (x,), fw.mul(img, images[x])))
        yield from nxt
        layer = nxt


def twisted_conjugator(x: Sequence[int], y: Sequence[int], psi: Automorphism,
                       budget: Budget = DEFAULT_BUDGET) -> Decision:
    """Search for ``z`` with ``x = (z^-1 psi) y z``.

    Identity twisting is decided exactly; otherwise the ball of radius
    ``budget.radius`` is scanned in shortlex order and UNKNOWN is returned
    when it is exhausted.
    """
    x, y = fw.reduce(x), fw.reduce(y)
    if psi.is_identity():
        z = fw.conjugacy_witness(x, y)
        return Decision.yes(z) if z is not None else Decision.no()
    for z, img in ball_with_images(psi.rank, budget.radius, psi):
        if fw.mul(fw.inverse(img), y, z) == x:
            return Decision.yes(z)
    return Decision.unknown({"radius": budget.radius})


def divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass
class EaStatus:
    e_a: int
    witness: TwistedWitness
    unresolved_divisors: list[int] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return not self.unresolved_divisors


def fallback_witness(pres: GroupPresentation, x: Word, a: int) -> TwistedWitness:
    """The witness for ``|a|``: ``x`` itself when a > 0, its negation otherwise."""
    w = TwistedWitness(pres, x, a, a, x)
    return w if a > 0 else negate_witness(w)


def compute_ea(x: Sequence[int], pres: GroupPresentation, a: int,
               budget: Budget = DEFAULT_BUDGET) -> EaStatus:
    """Least positive generator of the exponent group, found by scanning the divisors of |a|."""
    if a == 0:
        raise ValueError("compute_ea needs a != 0")
    x = fw.reduce(x)
    psi = pres.phi_power(a)
    unresolved = []
    for d in divisors(a):
        dec = twisted_conjugator(x, pres.phi_power(d).apply(x), psi, budget)
        if dec.is_yes:
            w = TwistedWitness(pres, x, a, d, dec.certificate)
            assert verify_witness(w)
            return EaStatus(d, w, unresolved)
        if d == abs(a):
            w = fallback_witness(pres, x, a)
            assert verify_witness(w)
            return EaStatus(d, w, unresolved)
        if dec.is_unknown:
            unresolved.append(d)
    raise AssertionError("unreachable: |a| always admits a witness")


def inner_conjugator(phi: Automorphism) -> Word | None:
    """``c`` with ``g phi = c^-1 g c`` for every generator, or None if phi is not inner."""
    n = phi.rank
    if phi.is_identity():
        return ()
    if n == 1:
        return None
    img1 = phi.images[0]
    p, pinv, core = fw.cyclic_reduce(img1)
    if core != (1,):
        return None
    # c = g1^k p^-1 for some k; read k off p^-1 (g2 phi) p = g1^-k g2 g1^k
    w = fw.mul(pinv, phi.images[1], p)
    k = 0
    while k < len(w) and w[k] == -1:
        k += 1
    if k == 0:
        while k < len(w) and w[k] == 1:
            k += 1
        k = -k
    c = fw.mul((1,) * k if k >= 0 else (-1,) * -k, pinv)
    for g in range(1, n + 1):
        if phi.images[g - 1] != fw.conjugate((g,), c):
            return None
    return c


@dataclass
class FixedSubgroup:
    """Result of the fixed-subgroup closure for ``y -> x^-1 (y phi^a) x``.

    ``exact`` is True only for the structural routes (phi^a inner, phi of
    finite order modulo inner automorphisms, x = 1 with phi^a a letter
    permutation); an enumerated result is at best ``stabilized``, which is a
    heuristic flag.
    """

    graph: SubgroupGraph
    exact: bool
    stabilized: bool
    radius: int
    last_growth: int


def twisted_centralizer(x: Sequence[int], pres: GroupPresentation, a: int,
                        budget: Budget = DEFAULT_BUDGET) -> FixedSubgroup:
    """The subgroup C_0 = {y : x = (y^-1 phi^a) x y}."""
    x = fw.reduce(x)
    n = pres.rank
    psi = pres.phi_power(a)
    c = inner_conjugator(psi)
    if c is not None:
        # psi-twisting is conjugation by c, so C_0 is the centralizer of c x
        cx = fw.mul(c, x)
        gens = [(g,) for g in range(1, n + 1)] if not cx else [fw.primitive_root(cx)[0]]
        graph = stallings.build(gens)
        assert _all_fixed(graph, x, psi)
        return FixedSubgroup(graph, True, True, 0, 0)

    graph = _fixed_via_outer_order(x, pres, a, budget.kmax)
    if graph is None and not x and all(len(img) == 1 for img in psi.images):
        # a signed letter permutation fixes a reduced word iff it fixes every letter
        graph = stallings.build([(g,) for g in range(1, n + 1) if psi.images[g - 1] == (g,)])
    if graph is not None:
        assert _all_fixed(graph, x, psi)
        return FixedSubgroup(graph, True, True, 0, 0)

    gens: list[Word] = []
    graph = stallings.build(gens)
    last_growth = 0
    xinv = fw.inverse(x)
    for y, img in ball_with_images(n, budget.radius, psi):
        if fw.mul(xinv, img, x) == y and not graph.contains(y):
            gens.append(y)
            graph = stallings.build(gens)
            last_growth = len(y)
    # rebuild from the basis so every generator is verified below
    graph = stallings.build(graph.basis())
    assert _all_fixed(graph, x, psi)
    stabilized = last_growth <= budget.radius // 2
    return FixedSubgroup(graph, False, stabilized, budget.radius, last_growth)


def outer_order(phi: Automorphism, limit: int, max_len: int = 2000) -> int | None:
    """Least ``p`` in [1, limit] with ``phi^p`` inner, or None.

    Gives up early once the images of ``phi^p`` exceed ``max_len`` letters in total.
    """
    for p in range(1, limit + 1):
        cur = phi.power(p)
        if inner_conjugator(cur) is not None:
            return p
        if sum(map(len, cur.images)) > max_len:
            return None
    return None


def _fixed_via_outer_order(x: Word, pres: GroupPresentation, a: int, kmax: int) -> SubgroupGraph | None:
    """C_0 from a power of ``t^a x`` whose twisting is inner, when that power pins it down.

    Elements of F_n commuting with g also commute with g^m.  If phi^{am} is
    conjugation by c, the F_n-part of C(g^m) is the cyclic group <r> with r the
    root of c x_m.  The twisting map of g is an automorphism preserving <r>, so
    by uniqueness of roots C_0 is <r> when r is fixed and trivial otherwise.
    """
    p = outer_order(pres.phi, kmax)
    if p is None:
        return None
    m = p // gcd(p, abs(a))
    gm = pres.element(a, x) ** m
    c = inner_conjugator(pres.phi_power(gm.a))
    cx = fw.mul(c, gm.u)
    if not cx:
        return None
    r = fw.primitive_root(cx)[0]
    psi = pres.phi_power(a)
    fixed = fw.mul(fw.inverse(x), psi.apply(r), x) == r
    return stallings.build([r] if fixed else [])


def _all_fixed(graph: SubgroupGraph, x: Word, psi: Automorphism) -> bool:
    xinv = fw.inverse(x)
    return all(fw.mul(xinv, psi.apply(b), x) == b for b in graph.basis())
