"""Automorphisms of F_n given by generator images, acting on the right."""

from __future__ import annotations

import threading
from typing import Sequence

from . import stallings
from . import words as fw
from .errors import NotBijective, UnknownGenerator
from .words import Word


def inverse_images(rank: int, images: Sequence[Word]) -> tuple[Word, ...]:
    """Images of the inverse map; raises NotBijective when the images do not generate F_n."""
    graph = stallings.build(images)
    inv = []
    for g in range(1, rank + 1):
        if not graph.contains((g,)):
            raise NotBijective(f"generator {g} is not in the subgroup generated by the images")
        # the expression is a word in the images; read it as a word in the generators
        inv.append(graph.express_in_generators((g,)))
    return tuple(inv)


class Automorphism:
    """An automorphism of F_n; ``apply(w)`` computes ``w`` phi.

    Construction checks bijectivity by computing the inverse.
    """

    def __init__(self, rank: int, images: Sequence[Sequence[int]], *,
                 _inverse: Sequence[Word] | None = None):
        if len(images) != rank:
            raise ValueError(f"expected {rank} images, got {len(images)}")
        self.rank = rank
        self.images: tuple[Word, ...] = tuple(fw.reduce(w, rank) for w in images)
        for w in self.images:
            if not w:
                raise NotBijective("a generator is sent to the identity")
        inv = inverse_images(rank, self.images) if _inverse is None else tuple(_inverse)
        self._inverse_images = inv
        self._powers: dict[int, Automorphism] = {1: self}
        self._lock = threading.Lock()

    @classmethod
    def identity(cls, rank: int) -> "Automorphism":
        gens = tuple((g,) for g in range(1, rank + 1))
        return cls(rank, gens, _inverse=gens)

    @classmethod
    def parse(cls, alphabet, images: dict[str, str] | Sequence[str]) -> "Automorphism":
        if isinstance(images, dict):
            missing = [n for n in alphabet.names if n not in images]
            if missing:
                raise UnknownGenerator(f"no image given for {', '.join(missing)}")
            images = [images[n] for n in alphabet.names]
        return cls(alphabet.rank, [alphabet.parse(s) for s in images])

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Automorphism({list(self.images)})"

    def is_identity(self) -> bool:
        return all(img == (g,) for g, img in enumerate(self.images, 1))

    def apply(self, w: Sequence[int]) -> Word:
        images = self.images
        parts = []
        for x in w:
            if x > 0:
                parts.append(images[x - 1])
            elif x < 0:
                parts.append(fw.inverse(images[-x - 1]))
            else:
                raise UnknownGenerator("letter 0")
        return fw.mul(*parts)

    __call__ = apply

    def then(self, other: "Automorphism") -> "Automorphism":
        """Apply ``self`` first, then ``other``."""
        return compose(self, other)

    def inverse(self) -> "Automorphism":
        if -1 not in self._powers:
            inv = Automorphism(self.rank, self._inverse_images, _inverse=self.images)
            inv._powers[-1] = self
            self._powers[-1] = inv
        return self._powers[-1]

    def power(self, k: int) -> "Automorphism":
        cached = self._powers.get(k)
        if cached is not None:
            return cached
        if k == 0:
            self._powers[0] = Automorphism.identity(self.rank)
            return self._powers[0]
        with self._lock:
            base = self if k > 0 else self.inverse()
            step = 1 if k > 0 else -1
            # extend from the largest cached power with the same sign
            j = step
            while (j + step) in self._powers and abs(j + step) <= abs(k):
                j += step
            result = self._powers[j]
            while j != k:
                result = compose(result, base)
                j += step
                self._powers[j] = result
            return result


def compose(phi: Automorphism, psi: Automorphism) -> Automorphism:
    """The map ``w -> (w phi) psi``."""
    if phi.rank != psi.rank:
        raise ValueError("rank mismatch")
    images = tuple(psi.apply(img) for img in phi.images)
    inv = tuple(phi.inverse().apply(img) for img in psi.inverse().images)
    return Automorphism(phi.rank, images, _inverse=inv)


def invert(phi: Automorphism) -> Automorphism:
    return phi.inverse()


def power(phi: Automorphism, k: int) -> Automorphism:
    return phi.power(k)


def apply(phi: Automorphism, w: Sequence[int]) -> Word:
    return phi.apply(w)


def nielsen_move(rank: int, kind: str, i: int, j: int = 0) -> tuple[Automorphism, Automorphism]:
    """An elementary Nielsen automorphism and its inverse.

    kinds: ``"invert"`` (x_i -> x_i^-1), ``"swap"`` (x_i <-> x_j),
    ``"right"`` (x_i -> x_i x_j), ``"left"`` (x_i -> x_j x_i).
    """
    gens = [(g,) for g in range(1, rank + 1)]
    if kind == "invert":
        img = list(gens)
        img[i - 1] = (-i,)
        inv = img
    elif kind == "swap":
        img = list(gens)
        img[i - 1], img[j - 1] = (j,), (i,)
        inv = img
    elif kind == "right":
        img, inv = list(gens), list(gens)
        img[i - 1] = (i, j)
        inv[i - 1] = (i, -j)
    elif kind == "left":
        img, inv = list(gens), list(gens)
        img[i - 1] = (j, i)
        inv[i - 1] = (-j, i)
    else:
        raise ValueError(f"unknown Nielsen move {kind!r}")
    if kind != "invert" and i == j:
        raise ValueError("Nielsen move needs two distinct generators")
    return (Automorphism(rank, img, _inverse=inv), Automorphism(rank, inv, _inverse=img))


def random_nielsen(rank: int, moves: int, rng) -> tuple[Automorphism, tuple[Word, ...]]:
    """Composition of ``moves`` random Nielsen moves.

    Returns the automorphism and the images of its inverse, the latter
    composed from the known move inverses in reverse order (independent of
    the Stallings-based inversion).
    """
    images = tuple((g,) for g in range(1, rank + 1))
    inv_images = images
    kinds = ["invert", "right", "left", "swap"] if rank > 1 else ["invert"]
    for _ in range(moves):
        kind = rng.choice(kinds)
        i = rng.randint(1, rank)
        j = i
        while kind != "invert" and j == i:
            j = rng.randint(1, rank)
        m, m_inv = nielsen_move(rank, kind, i, j)
        images = tuple(m.apply(w) for w in images)
        inv_images = tuple(_substitute(inv_images, w) for w in m_inv.images)
    return Automorphism(rank, images), inv_images


def _substitute(images: Sequence[Word], w: Sequence[int]) -> Word:
    return fw.mul(*(images[x - 1] if x > 0 else fw.inverse(images[-x - 1]) for x in w))
