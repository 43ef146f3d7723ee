"""Centralizers and conjugacy in free-by-cyclic groups F_n x|_phi Z."""

from .automorphism import Automorphism
from .centralizer import CentralizerResult, centralize, conjugators, member
from .decision import Budget, Decision, Verdict
from .group import FbcElement, GroupPresentation
from .words import Alphabet

__all__ = [
    "Alphabet",
    "Automorphism",
    "Budget",
    "CentralizerResult",
    "Decision",
    "FbcElement",
    "GroupPresentation",
    "Verdict",
    "centralize",
    "conjugators",
    "member",
]
