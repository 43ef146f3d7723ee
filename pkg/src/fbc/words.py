"""Reduced words in a free group F_n.

A word is a tuple of nonzero integers: ``i`` is the i-th generator (1-based)
and ``-i`` its inverse.  All public functions return freely reduced tuples.
Letters are ordered positives first (by index), then inverses (by index);
this order is used for canonical rotations and for shortlex enumeration.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

from .errors import IdentityInput, InputError, UnknownGenerator

Word = tuple[int, ...]

IDENTITY: Word = ()

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")

# offset placing inverse letters after every positive letter
_INVERSE_OFFSET = 1 << 20


def letter_key(letter: int) -> int:
    return letter if letter > 0 else _INVERSE_OFFSET - letter


def word_key(w: Sequence[int]) -> tuple:
    """Shortlex sort key."""
    return (len(w), [letter_key(x) for x in w])


class Alphabet:
    """Named generators of F_n in a fixed order."""

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if not names:
            raise ValueError("alphabet must have at least one generator")
        for name in names:
            if not _NAME.match(name) or name == "t":
                raise ValueError(f"invalid generator name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self.names = names
        self.rank = len(names)
        self._index = {name: i + 1 for i, name in enumerate(names)}

    @classmethod
    def standard(cls, rank: int) -> "Alphabet":
        if rank <= 3:
            return cls("abc"[:rank])
        return cls([f"x{i}" for i in range(1, rank + 1)])

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet({list(self.names)})"

    def letters(self) -> list[int]:
        """All letters in the canonical order."""
        return sorted([*range(1, self.rank + 1), *range(-1, -self.rank - 1, -1)], key=letter_key)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {name!r}") from None

    def letter_name(self, letter: int) -> str:
        if letter == 0 or abs(letter) > self.rank:
            raise UnknownGenerator(f"letter {letter} outside rank {self.rank}")
        name = self.names[abs(letter) - 1]
        return name if letter > 0 else name + "^-1"

    def parse_token(self, token: str) -> list[int]:
        m = _TOKEN.match(token)
        if not m:
            raise InputError(f"bad word token {token!r}")
        gen = self.index(m.group(1))
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if exp == 0:
            raise InputError(f"zero exponent in token {token!r}")
        return [gen if exp > 0 else -gen] * abs(exp)

    def parse(self, text: str) -> Word:
        """Parse ``"a b^-1 a^2"``; ``"1"`` or the empty string is the identity."""
        letters: list[int] = []
        for token in text.split():
            if token == "1":
                continue
            letters.extend(self.parse_token(token))
        return reduce(letters)

    def format(self, w: Sequence[int]) -> str:
        if not w:
            return "1"
        return " ".join(self.letter_name(x) for x in w)

    def check(self, w: Iterable[int]) -> None:
        for x in w:
            if x == 0 or abs(x) > self.rank:
                raise UnknownGenerator(f"letter {x} outside rank {self.rank}")


def reduce(letters: Iterable[int], rank: int | None = None) -> Word:
    """Free reduction by a single stack pass."""
    out: list[int] = []
    for x in letters:
        if x == 0 or (rank is not None and abs(x) > rank):
            raise UnknownGenerator(f"letter {x} outside rank {rank}")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def mul(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def power(w: Sequence[int], k: int) -> Word:
    if k < 0:
        return power(inverse(w), -k)
    p, q, c = cyclic_reduce(w)
    if k == 0:
        return IDENTITY
    return mul(p, c * k, inverse(p))


def conjugate(w: Sequence[int], z: Sequence[int]) -> Word:
    """z^-1 w z."""
    return mul(inverse(z), w, z)


def cyclic_reduce(w: Sequence[int]) -> tuple[Word, Word, Word]:
    """Split reduced ``w`` as ``p c p^-1`` with ``c`` cyclically reduced.

    Returns ``(p, p^-1, c)``.
    """
    w = tuple(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    p = w[:i]
    return p, inverse(p), w[i:j + 1]


def least_rotation(seq: Sequence[int]) -> int:
    """Index of the lexicographically least rotation (Booth's algorithm)."""
    s = [letter_key(x) for x in seq]
    n = len(s)
    if n == 0:
        return 0
    s = s + s
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            # here i == -1
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def rotate(w: Sequence[int], r: int) -> Word:
    w = tuple(w)
    if not w:
        return w
    r %= len(w)
    return w[r:] + w[:r]


def canonical(w: Sequence[int]) -> Word:
    """Canonical representative of the conjugacy class of ``w``."""
    _, _, c = cyclic_reduce(w)
    return rotate(c, least_rotation(c))


def cyclic_form(x: Sequence[int]) -> tuple[Word, Word]:
    """Return ``(c, w)`` with ``c`` canonical and ``x == w c w^-1``."""
    p, _, cx = cyclic_reduce(x)
    if not cx:
        return IDENTITY, IDENTITY
    r = least_rotation(cx)
    c = rotate(cx, r)
    # cx = u v and c = v u with u = cx[:r], v = cx[r:]; cx = u c u^-1
    return c, mul(p, cx[:r])


def rotation_offset(c: Sequence[int], d: Sequence[int]) -> int | None:
    """Smallest ``k`` with ``d == rotate(c, k)``, or None."""
    c, d = tuple(c), tuple(d)
    if len(c) != len(d):
        return None
    if not c:
        return 0
    for k in range(len(c)):
        if c[k:] + c[:k] == d:
            return k
    return None


def conjugacy_witness(x: Sequence[int], y: Sequence[int]) -> Word | None:
    """Some ``z`` with ``x == z^-1 y z``, or None if ``x`` and ``y`` are not conjugate."""
    p, pinv, cx = cyclic_reduce(x)
    q, _, cy = cyclic_reduce(y)
    k = rotation_offset(cx, cy)
    if k is None:
        return None
    # cy = s^-1 cx s with s = cx[:k]
    return mul(q, inverse(cx[:k]), pinv)


def is_conjugate(x: Sequence[int], y: Sequence[int]) -> bool:
    return canonical(x) == canonical(y)


def smallest_period(c: Sequence[int]) -> int:
    n = len(c)
    for d in range(1, n + 1):
        if n % d == 0 and all(c[i] == c[i % d] for i in range(n)):
            return d
    return n


def primitive_root(x: Sequence[int]) -> tuple[Word, int]:
    """``(u, m)`` with ``x == u^m``, ``m`` maximal and ``u`` not a proper power.

    The identity returns ``((), 1)``.
    """
    p, pinv, c = cyclic_reduce(x)
    if not c:
        return IDENTITY, 1
    d = smallest_period(c)
    return mul(p, c[:d], pinv), len(c) // d


def centralizer_free(x: Sequence[int]) -> Word:
    """Generator of the (cyclic) centralizer of ``x != 1`` in F_n."""
    if not x:
        raise IdentityInput("the centralizer of 1 is the whole free group")
    return primitive_root(x)[0]


def words_up_to(rank: int, length: int) -> Iterator[Word]:
    """All reduced words of length <= ``length`` in shortlex order."""
    letters = sorted([*range(1, rank + 1), *range(-1, -rank - 1, -1)], key=letter_key)
    layer: list[Word] = [IDENTITY]
    yield IDENTITY
    for _ in range(length):
        nxt = []
        for w in layer:
            last = w[-1] if w else 0
            for x in letters:
                if x != -last:
                    nxt.append(w + (x,))
        yield from nxt
        layer = nxt


def count_reduced(rank: int, length: int) -> int:
    """Number of reduced words of length <= ``length``."""
    total = 1
    for k in range(1, length + 1):
        total += 2 * rank * (2 * rank - 1) ** (k - 1)
    return total
