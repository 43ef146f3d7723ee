"""Elements of G = F_n x|_phi Z in the normal form t^a u.

Conjugation by t applies phi: ``t^-b u t^b = u phi^b``, so
``(t^a u)(t^b v) = t^(a+b) (u phi^b) v``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from . import words as fw
from .automorphism import Automorphism
from .errors import InputError, PresentationMismatch
from .words import Alphabet, Word

_T_TOKEN = re.compile(r"^t(?:\^(-?\d+))?$")


class GroupPresentation:
    """F_n x|_phi Z for a named alphabet and an automorphism phi."""

    def __init__(self, alphabet: Alphabet, phi: Automorphism):
        if phi.rank != alphabet.rank:
            raise PresentationMismatch("automorphism rank differs from alphabet rank")
        self.alphabet = alphabet
        self.phi = phi
        # negative powers need the inverse up front
        phi.inverse()

    @classmethod
    def from_images(cls, names: Sequence[str], images: Sequence[str]) -> "GroupPresentation":
        alphabet = Alphabet(names)
        return cls(alphabet, Automorphism.parse(alphabet, list(images)))

    def __repr__(self):
        imgs = ", ".join(f"{n}->{self.alphabet.format(w)}"
                         for n, w in zip(self.alphabet.names, self.phi.images))
        return f"GroupPresentation({imgs})"

    @property
    def rank(self) -> int:
        return self.alphabet.rank

    def phi_power(self, k: int) -> Automorphism:
        return self.phi.power(k)

    def element(self, a: int = 0, u: Sequence[int] = ()) -> "FbcElement":
        return FbcElement(self, a, fw.reduce(u, self.rank))

    def identity(self) -> "FbcElement":
        return FbcElement(self, 0, ())

    def t(self, a: int = 1) -> "FbcElement":
        return FbcElement(self, a, ())

    def gen(self, letter: int) -> "FbcElement":
        return FbcElement(self, 0, fw.reduce((letter,), self.rank))

    def generators(self) -> list["FbcElement"]:
        return [self.t(1)] + [self.gen(g) for g in range(1, self.rank + 1)]

    # --- letters of the group alphabet {t, t^-1} U generators^{+-1}

    def letter_element(self, token: str) -> "FbcElement":
        if token == "t":
            return self.t(1)
        if token == "t^-1":
            return self.t(-1)
        letters = self.alphabet.parse_token(token)
        if len(letters) != 1:
            raise InputError(f"{token!r} is not a single letter")
        return self.gen(letters[0])

    def letters(self) -> list[str]:
        """Group alphabet tokens in canonical order."""
        return ["t", "t^-1"] + [self.alphabet.letter_name(x) for x in self.alphabet.letters()]

    def evaluate(self, tokens: Sequence[str]) -> "FbcElement":
        g = self.identity()
        for tok in tokens:
            g = g * self.letter_element(tok)
        return g

    def parse(self, text: str) -> "FbcElement":
        """Parse e.g. ``"t^2 a b^-1"``; t-tokens may appear anywhere."""
        g = self.identity()
        for token in text.split():
            if token == "1":
                continue
            m = _T_TOKEN.match(token)
            if m:
                k = int(m.group(1)) if m.group(1) is not None else 1
                g = g * self.t(k)
            else:
                g = g * self.element(0, self.alphabet.parse_token(token))
        return g


@dataclass(frozen=True, eq=False)
class FbcElement:
    pres: GroupPresentation
    a: int
    u: Word

    def __eq__(self, other):
        return (isinstance(other, FbcElement) and self.pres is other.pres
                and self.a == other.a and self.u == other.u)

    def __hash__(self):
        return hash((self.a, self.u))

    def key(self) -> tuple:
        """Canonical sort key: (|a|, a, length, lex)."""
        return (abs(self.a), self.a, len(self.u), [fw.letter_key(x) for x in self.u])

    def __mul__(self, other: "FbcElement") -> "FbcElement":
        return mul(self, other)

    def inverse(self) -> "FbcElement":
        return inv(self)

    def __pow__(self, k: int) -> "FbcElement":
        base = self if k >= 0 else inv(self)
        result = self.pres.identity()
        square = base
        k = abs(k)
        while k:
            if k & 1:
                result = result * square
            square = square * square
            k >>= 1
        return result

    def tokens(self) -> list[str]:
        """A spelling over the group alphabet: |a| t-letters, then u."""
        t = ["t" if self.a > 0 else "t^-1"] * abs(self.a)
        return t + [self.pres.alphabet.letter_name(x) for x in self.u]

    def __str__(self):
        parts = []
        if self.a == 1:
            parts.append("t")
        elif self.a:
            parts.append(f"t^{self.a}")
        if self.u:
            parts.append(self.pres.alphabet.format(self.u))
        return " ".join(parts) or "1"

    def __repr__(self):
        return f"FbcElement({self})"


def _check(g: FbcElement, h: FbcElement) -> None:
    if g.pres is not h.pres:
        raise PresentationMismatch("elements belong to different presentations")


def mul(g: FbcElement, h: FbcElement) -> FbcElement:
    _check(g, h)
    u = g.pres.phi_power(h.a).apply(g.u) if h.a else g.u
    return FbcElement(g.pres, g.a + h.a, fw.mul(u, h.u))


def inv(g: FbcElement) -> FbcElement:
    u = fw.inverse(g.u)
    if g.a:
        u = g.pres.phi_power(-g.a).apply(u)
    return FbcElement(g.pres, -g.a, u)


def commute(g: FbcElement, h: FbcElement) -> bool:
    return mul(g, h) == mul(h, g)


def conjugate(g: FbcElement, h: FbcElement) -> FbcElement:
    """h^-1 g h."""
    return mul(mul(inv(h), g), h)
