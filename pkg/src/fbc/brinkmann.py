"""Bounded orbit scans for periodicity modulo conjugation and Brinkmann's problem."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import words as fw
from .decision import Decision
from .group import GroupPresentation
from .words import Word


@dataclass(frozen=True)
class OrbitRecord:
    k: int
    canonical: Word
    length: int


def orbit(x: Sequence[int], pres: GroupPresentation, kmin: int, kmax: int) -> list[OrbitRecord]:
    """Canonical conjugacy forms of ``x phi^k`` for ``kmin <= k <= kmax``."""
    out = []
    for k in range(kmin, kmax + 1):
        img = pres.phi_power(k).apply(x)
        out.append(OrbitRecord(k, fw.canonical(img), len(img)))
    return out


def find_period(x: Sequence[int], pres: GroupPresentation, kmax: int) -> Decision:
    """Least ``k`` in [1, kmax] with ``x phi^k ~ x``, with a conjugator.

    YES carries ``(k, z)`` where ``x = z^-1 (x phi^k) z``.
    """
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    x = fw.reduce(x)
    if not x:
        return Decision.yes((1, ()))
    target = fw.canonical(x)
    img = x
    phi = pres.phi
    for k in range(1, kmax + 1):
        img = phi.apply(img)
        if fw.canonical(img) == target:
            z = fw.conjugacy_witness(x, img)
            assert z is not None and fw.conjugate(img, z) == x
            return Decision.yes((k, z))
    return Decision.unknown({"kmax": kmax})


def _scan_order(kmax: int):
    yield 0
    for k in range(1, kmax + 1):
        yield k
        yield -k


def brinkmann_cp(x: Sequence[int], y: Sequence[int], pres: GroupPresentation,
                 kmax: int) -> Decision:
    """Smallest ``|k| <= kmax`` (positive first) with ``x phi^k ~ y``."""
    target = fw.canonical(y)
    for k in _scan_order(kmax):
        if fw.canonical(pres.phi_power(k).apply(x)) == target:
            return Decision.yes(k)
    return Decision.unknown({"kmax": kmax})
