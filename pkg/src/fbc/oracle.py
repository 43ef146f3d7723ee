"""Exhaustive ground truth on small balls.

Nothing here shares code with the centralizer pipeline beyond group
multiplication and word reduction; every result is exact within its ball.
Cost model: F_n has ``1 + sum_{k=1..L} 2n (2n-1)^(k-1)`` reduced words of
length <= L, and a ball with |t-exponent| <= A has 2A+1 times as many elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import words as fw
from .automorphism import Automorphism
from .errors import BudgetTooLarge
from .group import FbcElement, GroupPresentation, commute
from .words import Word

HARD_CAP = 10**6


def _check_size(n: int, cap: int) -> None:
    if n > cap:
        raise BudgetTooLarge(f"{n} elements exceeds the cap of {cap}")


@dataclass
class Ball:
    A: int
    L: int
    elements: list[FbcElement]


def ball(pres: GroupPresentation, A: int, L: int, cap: int = HARD_CAP) -> Ball:
    """All ``t^b y`` with |b| <= A and |y| <= L, sorted by (|b|, b, length, lex)."""
    _check_size((2 * A + 1) * fw.count_reduced(pres.rank, L), cap)
    words = list(fw.words_up_to(pres.rank, L))
    exps = sorted(range(-A, A + 1), key=lambda b: (abs(b), b))
    return Ball(A, L, [FbcElement(pres, b, y) for b in exps for y in words])


def brute_centralizer(g: FbcElement, A: int, L: int, cap: int = HARD_CAP) -> list[FbcElement]:
    return [h for h in ball(g.pres, A, L, cap).elements if commute(g, h)]


def brute_twisted_class(x: Sequence[int], psi: Automorphism, L: int,
                        cap: int = HARD_CAP) -> list[Word]:
    """Distinct ``(z^-1 psi) x z`` over |z| <= L, shortlex sorted."""
    _check_size(fw.count_reduced(psi.rank, L), cap)
    x = fw.reduce(x)
    seen = {fw.mul(psi.apply(fw.inverse(z)), x, z) for z in fw.words_up_to(psi.rank, L)}
    return sorted(seen, key=fw.word_key)


def brute_twisted_conjugators(x: Sequence[int], y: Sequence[int], psi: Automorphism,
                              L: int, cap: int = HARD_CAP) -> list[Word]:
    """Every ``z`` with |z| <= L and ``x = (z^-1 psi) y z``."""
    _check_size(fw.count_reduced(psi.rank, L), cap)
    x, y = fw.reduce(x), fw.reduce(y)
    return [z for z in fw.words_up_to(psi.rank, L)
            if fw.mul(psi.apply(fw.inverse(z)), y, z) == x]


def brute_Ea(x: Sequence[int], pres: GroupPresentation, a: int, kmax: int, L: int,
             cap: int = HARD_CAP) -> list[int]:
    """Exponents ``|k| <= kmax`` with a witness of length <= L."""
    _check_size((2 * kmax + 1) * fw.count_reduced(pres.rank, L), cap)
    x = fw.reduce(x)
    psi = pres.phi_power(a)
    zs = list(fw.words_up_to(pres.rank, L))
    zinv_images = [(z, psi.apply(fw.inverse(z))) for z in zs]
    found = []
    for k in range(-kmax, kmax + 1):
        xk = pres.phi_power(k).apply(x)
        if any(fw.mul(img, xk, z) == x for z, img in zinv_images):
            found.append(k)
    return found


def brute_conjugators(g: FbcElement, h: FbcElement, A: int, L: int,
                      cap: int = HARD_CAP) -> list[FbcElement]:
    """Ball elements ``w`` with ``w^-1 g w = h``."""
    out = []
    for w in ball(g.pres, A, L, cap).elements:
        if w.inverse() * g * w == h:
            out.append(w)
    return out
