"""Finite automata over the group alphabet {t, t^-1} U generators^{+-1}.

Letters are string tokens (``"t"``, ``"a^-1"``); a word is a tuple of tokens
and its value in the group is computed by :meth:`GroupPresentation.evaluate`.
Operations may introduce epsilon moves internally; every public result is
epsilon-free and trimmed.
"""

from __future__ import annotations

from collections import defaultdict, deque
from typing import Iterable, Sequence

from .errors import AlphabetMismatch, InputError, MissingWitness
from .group import FbcElement, GroupPresentation
from .stallings import SubgroupGraph


def invert_letter(tok: str) -> str:
    return tok[:-3] if tok.endswith("^-1") else tok + "^-1"


class GroupNfa:
    def __init__(self, letters: Sequence[str], nstates: int,
                 transitions: Iterable[tuple[int, str | None, int]],
                 initial: Iterable[int], accepting: Iterable[int]):
        self.letters = tuple(letters)
        self.nstates = nstates
        self.transitions = frozenset(transitions)
        self.initial = frozenset(initial)
        self.accepting = frozenset(accepting)
        known = set(self.letters)
        for p, tok, q in self.transitions:
            if tok is not None and tok not in known:
                raise AlphabetMismatch(f"letter {tok!r} not in the automaton alphabet")
            if not (0 <= p < nstates and 0 <= q < nstates):
                raise ValueError(f"transition {p}->{q} outside {nstates} states")

    def __repr__(self):
        return (f"GroupNfa(states={self.nstates}, transitions={len(self.transitions)}, "
                f"initial={sorted(self.initial)}, accepting={sorted(self.accepting)})")

    # --- construction helpers

    @classmethod
    def empty(cls, letters: Sequence[str]) -> "GroupNfa":
        return cls(letters, 1, [], [0], [])

    @classmethod
    def word(cls, letters: Sequence[str], tokens: Sequence[str]) -> "GroupNfa":
        n = len(tokens) + 1
        return cls(letters, n, [(i, tok, i + 1) for i, tok in enumerate(tokens)], [0], [n - 1])

    @classmethod
    def from_subgroup_graph(cls, pres: GroupPresentation, graph: SubgroupGraph) -> "GroupNfa":
        """Loops at the base of a Stallings graph, read as words."""
        name = pres.alphabet.letter_name
        trans = []
        for u, g, v in graph.edges():
            trans.append((u, name(g), v))
            trans.append((v, name(-g), u))
        return cls(pres.letters(), graph.nvertices, trans, [0], [0])

    @classmethod
    def loops(cls, pres: GroupPresentation, elements: Sequence[FbcElement]) -> "GroupNfa":
        """Bouquet of loops spelling each element and its inverse: the subgroup they generate."""
        trans = []
        n = 1
        for g in elements:
            for spelled in (g.tokens(), g.inverse().tokens()):
                if not spelled:
                    continue
                path = [0] + list(range(n, n + len(spelled) - 1)) + [0]
                n += len(spelled) - 1
                trans.extend((path[i], tok, path[i + 1]) for i, tok in enumerate(spelled))
        return cls(pres.letters(), n, trans, [0], [0])

    # --- normalization

    def _normalized(self) -> "GroupNfa":
        eps = defaultdict(set)
        for p, tok, q in self.transitions:
            if tok is None:
                eps[p].add(q)
        closure = {}
        for p in range(self.nstates):
            seen = {p}
            stack = [p]
            while stack:
                s = stack.pop()
                for q in eps[s]:
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
            closure[p] = seen
        by_src = defaultdict(list)
        for p, tok, q in self.transitions:
            if tok is not None:
                by_src[p].append((tok, q))
        trans = set()
        for p in range(self.nstates):
            for s in closure[p]:
                for tok, q in by_src[s]:
                    trans.add((p, tok, q))
        accepting = {p for p in range(self.nstates) if closure[p] & self.accepting}
        return GroupNfa(self.letters, self.nstates, trans, self.initial, accepting).trim()

    def trim(self) -> "GroupNfa":
        """Drop states that are not both reachable and co-reachable; renumber."""
        fwd, bwd = defaultdict(list), defaultdict(list)
        for p, tok, q in self.transitions:
            fwd[p].append(q)
            bwd[q].append(p)

        def reach(start, adj):
            seen = set(start)
            queue = deque(sorted(start))
            while queue:
                s = queue.popleft()
                for q in adj[s]:
                    if q not in seen:
                        seen.add(q)
                        queue.append(q)
            return seen

        live = reach(self.initial, fwd) & reach(self.accepting, bwd)
        if not live:
            return GroupNfa.empty(self.letters)
        order = {s: i for i, s in enumerate(sorted(live))}
        trans = [(order[p], tok, order[q]) for p, tok, q in self.transitions
                 if p in order and q in order]
        return GroupNfa(self.letters, len(order), trans,
                        [order[s] for s in self.initial if s in order],
                        [order[s] for s in self.accepting if s in order])

    # --- semantics

    def step(self, states: Iterable[int], tok: str) -> frozenset[int]:
        states = set(states)
        return frozenset(q for p, t, q in self.transitions if p in states and t == tok)

    def accepts(self, tokens: Sequence[str]) -> bool:
        cur = self.initial
        for tok in tokens:
            cur = self.step(cur, tok)
            if not cur:
                return False
        return bool(cur & self.accepting)

    def enumerate(self, maxlen: int) -> list[tuple[str, ...]]:
        """All accepted words of length <= maxlen, shortlex in the letter order."""
        rank = {tok: i for i, tok in enumerate(self.letters)}
        out_by = defaultdict(lambda: defaultdict(set))
        for p, tok, q in self.transitions:
            out_by[p][tok].add(q)
        result = []
        layer = [((), self.initial)]
        for length in range(maxlen + 1):
            for w, states in layer:
                if states & self.accepting:
                    result.append(w)
            if length == maxlen:
                break
            nxt = []
            for w, states in layer:
                moves = defaultdict(set)
                for s in states:
                    for tok, qs in out_by[s].items():
                        moves[tok] |= qs
                for tok in sorted(moves, key=rank.__getitem__):
                    nxt.append((w + (tok,), frozenset(moves[tok])))
            layer = nxt
        return result

    def to_text(self) -> str:
        lines = [f"states {self.nstates}",
                 "initial " + " ".join(map(str, sorted(self.initial))),
                 "accept " + " ".join(map(str, sorted(self.accepting)))]
        for p, tok, q in sorted(self.transitions, key=lambda e: (e[0], e[2], e[1])):
            lines.append(f"edge {p} {q} {tok}")
        return "\n".join(lines) + "\n"


def parse_nfa(text: str, letters: Sequence[str], path: str | None = None) -> GroupNfa:
    """Read the ``states / initial / accept / edge`` file format."""
    nstates = None
    initial, accepting, trans = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "states":
                nstates = int(rest[0])
            elif head == "initial":
                initial.extend(int(s) for s in rest)
            elif head == "accept":
                accepting.extend(int(s) for s in rest)
            elif head == "edge":
                p, q, tok = rest
                trans.append((int(p), tok, int(q)))
            else:
                raise InputError(f"unknown directive {head!r}", path, lineno)
        except (ValueError, IndexError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed line {raw!r}", path, lineno) from None
    if nstates is None:
        raise InputError("missing 'states' line", path)
    return GroupNfa(letters, nstates, trans, initial, accepting)


def _same_alphabet(*nfas: GroupNfa) -> tuple[str, ...]:
    letters = nfas[0].letters
    for A in nfas[1:]:
        if A.letters != letters:
            raise AlphabetMismatch("automata over different alphabets")
    return letters


def _shifted(A: GroupNfa, offset: int):
    return [(p + offset, tok, q + offset) for p, tok, q in A.transitions]


def union(*nfas: GroupNfa) -> GroupNfa:
    letters = _same_alphabet(*nfas)
    trans, initial, accepting = [], [], []
    offset = 0
    for A in nfas:
        trans += _shifted(A, offset)
        initial += [s + offset for s in A.initial]
        accepting += [s + offset for s in A.accepting]
        offset += A.nstates
    return GroupNfa(letters, offset, trans, initial, accepting).trim()


def concat(*nfas: GroupNfa) -> GroupNfa:
    letters = _same_alphabet(*nfas)
    trans = []
    offset = 0
    prev_accepting = None
    initial = None
    for A in nfas:
        trans += _shifted(A, offset)
        if prev_accepting is None:
            initial = [s + offset for s in A.initial]
        else:
            trans += [(f, None, s + offset) for f in prev_accepting for s in A.initial]
        prev_accepting = [s + offset for s in A.accepting]
        offset += A.nstates
    return GroupNfa(letters, offset, trans, initial, prev_accepting)._normalized()


def plus(A: GroupNfa) -> GroupNfa:
    trans = list(A.transitions) + [(f, None, i) for f in A.accepting for i in A.initial]
    return GroupNfa(A.letters, A.nstates, trans, A.initial, A.accepting)._normalized()


def inversion(A: GroupNfa) -> GroupNfa:
    """Accepts the formal inverses (reversed, letterwise inverted) of A's words."""
    trans = [(q, invert_letter(tok), p) for p, tok, q in A.transitions]
    return GroupNfa(A.letters, A.nstates, trans, A.accepting, A.initial).trim()


def apply_automorphism(A: GroupNfa, pres: GroupPresentation, e: int) -> GroupNfa:
    """Replace every generator edge by a path spelling its image under phi^e."""
    psi = pres.phi_power(e)
    name = pres.alphabet.letter_name
    trans = []
    n = A.nstates
    for p, tok, q in A.transitions:
        if tok in ("t", "t^-1"):
            trans.append((p, tok, q))
            continue
        letter = pres.alphabet.parse_token(tok)[0]
        image = [name(x) for x in psi.apply((letter,))]
        path = [p] + list(range(n, n + len(image) - 1)) + [q]
        n += len(image) - 1
        trans.extend((path[i], image[i], path[i + 1]) for i in range(len(image)))
    return GroupNfa(A.letters, n, trans, A.initial, A.accepting).trim()


def t_power_word(pres: GroupPresentation, e: int) -> GroupNfa:
    return GroupNfa.word(pres.letters(), ["t" if e > 0 else "t^-1"] * abs(e))


def build_centralizer_nfa(C) -> GroupNfa:
    """Automaton whose words evaluate into the centralizer described by ``C``.

    For ``a != 0`` this is ``S^-1 U C_0 U S`` with ``S = (t^e C_e)^+`` and
    ``C_e = (C_0 phi^e) z`` for the vertical generator ``t^e z``.
    """
    g = C.input
    pres = g.pres
    if g.a == 0:
        return GroupNfa.loops(pres, C.generators)
    T = C.torus_generator
    if T is None:
        raise MissingWitness("no vertical generator: cannot build the coset automaton")
    e = T.a
    A0 = GroupNfa.from_subgroup_graph(pres, C.c0)
    Ce = concat(apply_automorphism(A0, pres, e), GroupNfa.word(pres.letters(), T.tokens()[abs(e):]))
    S = plus(concat(t_power_word(pres, e), Ce))
    return union(inversion(S), A0, S)


def evaluate_word(pres: GroupPresentation, tokens: Sequence[str]) -> FbcElement:
    return pres.evaluate(tokens)
