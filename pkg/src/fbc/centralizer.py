"""Centralizers of elements of F_n x|_phi Z and conjugator sets.

For ``g = t^a x``, ``t^b y`` commutes with ``g`` iff ``y`` is a twisted witness
for ``b``.  The t-exponents of centralizer elements therefore form ``e Z`` and
the centralizer is generated by its F_n-part C_0 together with one element
``t^e z``.  When no vertical element exists the centralizer is C_0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import stallings
from . import words as fw
from .brinkmann import find_period
from .decision import DEFAULT_BUDGET, Budget, Decision
from .group import FbcElement, commute, conjugate, inv, mul
from .stallings import SubgroupGraph
from .twisted import compute_ea, twisted_centralizer, twisted_conjugator

EXACT = "exact"
BUDGET_LIMITED = "budget-limited"


@dataclass
class CentralizerResult:
    input: FbcElement
    generators: list[FbcElement]
    c0: SubgroupGraph
    torus_generator: FbcElement | None
    status: str
    report: dict[str, Any] = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.status == EXACT


def _whole_group(g: FbcElement) -> CentralizerResult:
    pres = g.pres
    c0 = stallings.build([(i,) for i in range(1, pres.rank + 1)])
    gens = pres.generators()
    return CentralizerResult(g, gens, c0, pres.t(1), EXACT, {"case": "identity"})


def centralize(g: FbcElement, budget: Budget = DEFAULT_BUDGET) -> CentralizerResult:
    """Finite generating set for the centralizer of ``g``."""
    pres, a, x = g.pres, g.a, g.u
    if a == 0 and not x:
        result = _whole_group(g)
    elif a == 0:
        u = fw.centralizer_free(x)
        c0 = stallings.build([u])
        period = find_period(x, pres, max(budget.kmax, 1))
        report: dict[str, Any] = {"case": "a=0", "root": u}
        if period.is_yes:
            e0, z = period.certificate
            torus = pres.element(e0, z)
            report["e0"] = e0
            result = CentralizerResult(g, [torus, pres.element(0, u)], c0, torus, EXACT, report)
        else:
            report["period"] = f"none up to kmax={budget.kmax}"
            result = CentralizerResult(g, [pres.element(0, u)], c0, None, BUDGET_LIMITED, report)
    else:
        ea = compute_ea(x, pres, a, budget)
        fixed = twisted_centralizer(x, pres, a, budget)
        torus = pres.element(ea.e_a, ea.witness.z)
        gens = [torus] + [pres.element(0, b) for b in fixed.graph.basis()]
        # the stabilization flag is heuristic, so only a structural C_0 counts as exact
        exact = ea.exact and fixed.exact
        report = {
            "case": "a!=0",
            "e_a": ea.e_a,
            "unresolved_divisors": list(ea.unresolved_divisors),
            "c0_exact": fixed.exact,
            "c0_stabilized": fixed.stabilized,
        }
        result = CentralizerResult(g, gens, fixed.graph, torus,
                                   EXACT if exact else BUDGET_LIMITED, report)
    for h in result.generators:
        if not commute(h, g):
            raise AssertionError(f"generator {h} does not commute with {g}")
    return result


def member(C: CentralizerResult, h: FbcElement) -> Decision:
    """Decide whether ``h`` lies in the subgroup described by ``C``."""
    found = _member(C, h)
    if found:
        return Decision.yes(h)
    return Decision.no() if C.exact else Decision.unknown({"status": C.status})


def _member(C: CentralizerResult, h: FbcElement) -> bool:
    T = C.torus_generator
    if T is None:
        return h.a == 0 and C.c0.contains(h.u)
    if h.a % T.a:
        return False
    peeled = mul(T ** (-(h.a // T.a)), h)
    return peeled.a == 0 and C.c0.contains(peeled.u)


@dataclass
class ConjugatorSet:
    """All solutions of ``w^-1 g w = h``: the coset ``C(g) * witness``."""

    witness: FbcElement
    centralizer: CentralizerResult

    def contains(self, w: FbcElement) -> Decision:
        return member(self.centralizer, mul(w, inv(self.witness)))


def _scan(kmax: int):
    yield 0
    for c in range(1, kmax + 1):
        yield c
        yield -c


def conjugators(g: FbcElement, h: FbcElement, budget: Budget = DEFAULT_BUDGET) -> Decision:
    """Solution set of ``w^-1 g w = h`` as a :class:`ConjugatorSet`."""
    pres = g.pres
    if g.a != h.a:
        return Decision.no()
    a = g.a
    if a == 0 and not g.u:
        if h.u:
            return Decision.no()
        return Decision.yes(ConjugatorSet(pres.identity(), centralize(g, budget)))
    psi = pres.phi_power(a)
    refuted: set[int] = set()
    for c in _scan(budget.kmax):
        dec = twisted_conjugator(h.u, pres.phi_power(c).apply(g.u), psi, budget)
        if dec.is_yes:
            w = pres.element(c, dec.certificate)
            if conjugate(g, w) != h:
                raise AssertionError("conjugator failed verification")
            return Decision.yes(ConjugatorSet(w, centralize(g, budget)))
        if dec.is_no and a:
            # solvability depends only on c mod a
            refuted.add(c % abs(a))
            if len(refuted) == abs(a):
                return Decision.no()
    return Decision.unknown({"kmax": budget.kmax, "radius": budget.radius})
