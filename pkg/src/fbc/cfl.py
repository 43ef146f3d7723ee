"""Context-free grammars over the group alphabet and constrained conjugacy.

A grammar file has lines ``N -> rhs | rhs ...``; right-hand sides mix
nonterminals and alphabet letters, and ``1`` is the empty string.  The first
nonterminal declared is the start symbol.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from .centralizer import conjugators
from .decision import DEFAULT_BUDGET, Budget, Decision
from .errors import AlphabetMismatch, GrammarSyntaxError, UnknownTerminal
from .group import FbcElement, GroupPresentation
from .ratlang import GroupNfa, build_centralizer_nfa, concat

PRECONDITION = ("note: the grammar is assumed to generate the full preimage of K "
                "(every word representing an element of K); this is not checked")


@dataclass(frozen=True)
class Nt:
    name: str

    def __str__(self):
        return self.name


Symbol = Nt | str


class Cfg:
    def __init__(self, letters: Sequence[str], nonterminals: Sequence[str],
                 productions: dict[str, list[tuple[Symbol, ...]]], start: str | None = None):
        self.letters = tuple(letters)
        self.nonterminals = list(nonterminals)
        self.productions = {n: list(productions.get(n, [])) for n in self.nonterminals}
        self.start = start if start is not None else (self.nonterminals[0] if self.nonterminals else None)
        declared, terminals = set(self.nonterminals), set(self.letters)
        for lhs, rhss in self.productions.items():
            for rhs in rhss:
                for sym in rhs:
                    if isinstance(sym, Nt):
                        if sym.name not in declared:
                            raise GrammarSyntaxError(f"undeclared nonterminal {sym.name!r} in {lhs}")
                    elif sym not in terminals:
                        raise UnknownTerminal(f"unknown terminal {sym!r} in {lhs}")

    def __repr__(self):
        n = sum(len(r) for r in self.productions.values())
        return f"Cfg(nonterminals={len(self.nonterminals)}, productions={n}, start={self.start!r})"

    def to_text(self) -> str:
        lines = []
        for n in self.nonterminals:
            alts = [" ".join(map(str, rhs)) if rhs else "1" for rhs in self.productions[n]]
            if alts:
                lines.append(f"{n} -> " + " | ".join(alts))
        return "\n".join(lines) + "\n"


def parse_cfg(text: str, letters: Sequence[str]) -> Cfg:
    rules: list[tuple[str, list[list[str]]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise GrammarSyntaxError(f"line {lineno}: expected 'N -> rhs'")
        lhs, rhs = line.split("->", 1)
        lhs = lhs.strip()
        if not lhs or len(lhs.split()) != 1:
            raise GrammarSyntaxError(f"line {lineno}: bad left-hand side {lhs!r}")
        if lhs in letters:
            raise GrammarSyntaxError(f"line {lineno}: {lhs!r} is an alphabet letter")
        alts = [alt.split() for alt in rhs.split("|")]
        if any(not alt for alt in alts):
            raise GrammarSyntaxError(f"line {lineno}: empty alternative (write 1 for the empty string)")
        rules.append((lhs, alts))
    if not rules:
        raise GrammarSyntaxError("grammar has no productions")
    nonterminals = list(dict.fromkeys(lhs for lhs, _ in rules))
    declared = set(nonterminals)
    terminals = set(letters)
    productions: dict[str, list[tuple[Symbol, ...]]] = defaultdict(list)
    for lhs, alts in rules:
        for alt in alts:
            rhs: list[Symbol] = []
            for tok in alt:
                if tok == "1" and len(alt) == 1:
                    continue
                if tok in declared:
                    rhs.append(Nt(tok))
                elif tok in terminals:
                    rhs.append(tok)
                elif tok[0].isupper():
                    raise GrammarSyntaxError(f"undeclared nonterminal {tok!r} in rule for {lhs}")
                else:
                    raise UnknownTerminal(f"unknown terminal {tok!r} in rule for {lhs}")
            productions[lhs].append(tuple(rhs))
    return Cfg(letters, nonterminals, productions)


def productive(G: Cfg) -> set[str]:
    prod: set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhss in G.productions.items():
            if lhs in prod:
                continue
            if any(all(not isinstance(s, Nt) or s.name in prod for s in rhs) for rhs in rhss):
                prod.add(lhs)
                changed = True
    return prod


def is_empty(G: Cfg) -> bool:
    return G.start is None or G.start not in productive(G)


def shortest_word(G: Cfg) -> tuple[str, ...] | None:
    """A shortest terminal string derivable from the start symbol."""
    best: dict[str, tuple[str, ...]] = {}
    changed = True
    while changed:
        changed = False
        for lhs, rhss in G.productions.items():
            for rhs in rhss:
                if all(not isinstance(s, Nt) or s.name in best for s in rhs):
                    w = tuple(t for s in rhs
                              for t in (best[s.name] if isinstance(s, Nt) else (s,)))
                    if lhs not in best or len(w) < len(best[lhs]):
                        best[lhs] = w
                        changed = True
    return best.get(G.start)


def _binarize(G: Cfg) -> list[tuple[str, tuple[Symbol, ...]]]:
    rules = []
    for lhs, rhss in G.productions.items():
        for j, rhs in enumerate(rhss):
            cur = lhs
            rhs = list(rhs)
            i = 0
            while len(rhs) > 2:
                fresh = f"{lhs}#{j}.{i}"
                rules.append((cur, (rhs[0], Nt(fresh))))
                cur, rhs, i = fresh, rhs[1:], i + 1
            rules.append((cur, tuple(rhs)))
    return rules


def bar_hillel(G: Cfg, A: GroupNfa) -> Cfg:
    """Grammar for L(G) intersected with L(A), via the triple construction.

    Only productive triples ``(p, X, q)`` are generated (bottom-up chart),
    then the result is restricted to symbols reachable from the start.
    """
    if set(G.letters) != set(A.letters):
        raise AlphabetMismatch("grammar and automaton use different alphabets")
    rules = _binarize(G)
    unit = defaultdict(list)       # X -> [A] for A -> X
    left = defaultdict(list)       # X -> [(A, Y)] for A -> X Y
    right = defaultdict(list)      # Y -> [(A, X)] for A -> X Y
    nullable = []
    for lhs, rhs in rules:
        key = [s.name if isinstance(s, Nt) else ("T", s) for s in rhs]
        if len(rhs) == 0:
            nullable.append(lhs)
        elif len(rhs) == 1:
            unit[key[0]].append(lhs)
        else:
            left[key[0]].append((lhs, key[1]))
            right[key[1]].append((lhs, key[0]))

    items: set = set()
    by_start = defaultdict(set)    # (p, X) -> {q}
    by_end = defaultdict(set)      # (q, X) -> {p}
    derivations = defaultdict(set)
    work = []

    def add(p, X, q, body):
        derivations[(p, X, q)].add(body)
        if (p, X, q) not in items:
            items.add((p, X, q))
            by_start[(p, X)].add(q)
            by_end[(q, X)].add(p)
            work.append((p, X, q))

    for p, tok, q in A.transitions:
        add(p, ("T", tok), q, None)
    for lhs in nullable:
        for p in range(A.nstates):
            add(p, lhs, p, ())
    while work:
        p, X, q = work.pop()
        for lhs in unit[X]:
            add(p, lhs, q, ((p, X, q),))
        for lhs, Y in left[X]:
            for r in list(by_start[(q, Y)]):
                add(p, lhs, r, ((p, X, q), (q, Y, r)))
        for lhs, W in right[X]:
            for s in list(by_end[(p, W)]):
                add(s, lhs, q, ((s, W, p), (p, X, q)))

    def sym(item):
        p, X, q = item
        if isinstance(X, tuple):
            return X[1]
        return Nt(f"[{p},{X},{q}]")

    start = "S'"
    productions: dict[str, list[tuple[Symbol, ...]]] = defaultdict(list)
    for i in sorted(A.initial):
        for f in sorted(A.accepting):
            if (i, G.start, f) in items:
                productions[start].append((sym((i, G.start, f)),))
    # keep only what the start symbol reaches
    seen = set()
    stack = [(i, G.start, f) for i in A.initial for f in A.accepting if (i, G.start, f) in items]
    while stack:
        item = stack.pop()
        if item in seen or isinstance(item[1], tuple):
            continue
        seen.add(item)
        for body in derivations[item]:
            stack.extend(body)
    for item in sorted(seen, key=str):
        name = sym(item).name
        for body in sorted(derivations[item], key=str):
            productions[name].append(tuple(sym(b) for b in body))
    nonterminals = [start] + [sym(item).name for item in sorted(seen, key=str)]
    return Cfg(G.letters, nonterminals, productions, start)


def cfg_words(G: Cfg, maxlen: int) -> set[tuple[str, ...]]:
    """All terminal strings of length <= maxlen generated by G (desk scale)."""
    lang: dict[str, set] = {n: set() for n in G.nonterminals}
    changed = True
    while changed:
        changed = False
        for lhs, rhss in G.productions.items():
            for rhs in rhss:
                partial = {()}
                for s in rhs:
                    options = lang[s.name] if isinstance(s, Nt) else {(s,)}
                    partial = {w + v for w in partial for v in options if len(w) + len(v) <= maxlen}
                    if not partial:
                        break
                new = partial - lang[lhs]
                if new:
                    lang[lhs] |= new
                    changed = True
    return lang.get(G.start, set())


def all_words_grammar(letters: Sequence[str]) -> Cfg:
    return Cfg(letters, ["S"], {"S": [()] + [(tok, Nt("S")) for tok in letters]})


def empty_grammar(letters: Sequence[str]) -> Cfg:
    return Cfg(letters, ["S"], {"S": [(Nt("S"),)]})


def constrained_conjugacy(g: FbcElement, h: FbcElement, G: Cfg,
                          budget: Budget = DEFAULT_BUDGET) -> Decision:
    """Is there ``w`` in K with ``g = w^-1 h w``, where L(G) is the preimage of K?

    YES carries a word of L(G) whose value is such a conjugator.
    """
    pres: GroupPresentation = g.pres
    if set(G.letters) != set(pres.letters()):
        raise AlphabetMismatch("grammar alphabet differs from the presentation")
    sol = conjugators(h, g, budget)
    if not sol.is_yes:
        return sol
    cs = sol.certificate
    A_sol = concat(build_centralizer_nfa(cs.centralizer),
                   GroupNfa.word(pres.letters(), cs.witness.tokens()))
    inter = bar_hillel(G, A_sol)
    if is_empty(inter):
        if cs.centralizer.exact:
            return Decision.no()
        return Decision.unknown({"status": cs.centralizer.status})
    word = shortest_word(inter)
    w = pres.evaluate(word)
    if (w.inverse() * h * w) != g:
        raise AssertionError("constrained conjugator failed verification")
    return Decision.yes(word)
