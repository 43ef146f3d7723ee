"""Folded Stallings graphs of finitely generated subgroups of F_n.

Every edge carries a provenance word over the input generators (symbol ``i``
stands for ``gens[i-1]``).  Folding keeps the invariant that along any closed
path at the base vertex, the product of provenance words evaluates to the
path label.  That is what :func:`express_in_generators` reads off, and what
automorphism inversion relies on.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from . import words as fw
from .errors import NotAMember
from .words import Word


class SubgroupGraph:
    """Folded, base-pointed graph; vertex 0 is the base.

    ``out[v][letter] = (w, prov)``: following ``letter`` from ``v`` reaches
    ``w`` and the traversal has provenance ``prov``.  Both orientations of
    every edge are stored.
    """

    def __init__(self, nvertices: int, out: list[dict[int, tuple[int, Word]]],
                 gens: tuple[Word, ...]):
        self.nvertices = nvertices
        self.out = out
        self.gens = gens
        self._tree: tuple[list[Word], set] | None = None

    def edges(self) -> list[tuple[int, int, int]]:
        """Positively labelled edges ``(u, g, v)`` in canonical order."""
        return [(u, g, v) for u in range(self.nvertices)
                for g, (v, _) in sorted(self.out[u].items()) if g > 0]

    @property
    def rank(self) -> int:
        if self.nvertices == 0:
            return 0
        return len(self.edges()) - self.nvertices + 1

    def signature(self) -> tuple:
        """Canonical form; equal signatures mean isomorphic based graphs."""
        return (self.nvertices, tuple(self.edges()))

    def __eq__(self, other):
        return isinstance(other, SubgroupGraph) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return f"SubgroupGraph(vertices={self.nvertices}, rank={self.rank})"

    def read(self, w: Sequence[int]) -> int | None:
        v = 0
        for x in w:
            step = self.out[v].get(x)
            if step is None:
                return None
            v = step[0]
        return v

    def contains(self, w: Sequence[int]) -> bool:
        return self.read(fw.reduce(w)) == 0

    def _spanning_tree(self) -> tuple[list[Word], set]:
        if self._tree is None:
            paths: list[Word | None] = [None] * self.nvertices
            paths[0] = fw.IDENTITY
            tree = set()
            queue = deque([0])
            while queue:
                u = queue.popleft()
                for x in sorted(self.out[u], key=fw.letter_key):
                    v = self.out[u][x][0]
                    if paths[v] is None:
                        paths[v] = paths[u] + (x,)
                        tree.add((u, x))
                        tree.add((v, -x))
                        queue.append(v)
            self._tree = (paths, tree)
        return self._tree

    def basis(self) -> list[Word]:
        """Free basis: one element per edge outside a BFS spanning tree."""
        paths, tree = self._spanning_tree()
        return [fw.mul(paths[u], (g,), fw.inverse(paths[v]))
                for u, g, v in self.edges() if (u, g) not in tree]

    def express(self, w: Sequence[int]) -> Word:
        """Write ``w`` as a word over basis symbols (1-based indices into ``basis()``)."""
        _, tree = self._spanning_tree()
        index = {(u, g): i + 1 for i, (u, g, v) in
                 enumerate(e for e in self.edges() if (e[0], e[1]) not in tree)}
        out = []
        v = 0
        for x in fw.reduce(w):
            step = self.out[v].get(x)
            if step is None:
                raise NotAMember(f"word {w} is not in the subgroup")
            nxt = step[0]
            if x > 0 and (v, x) in index:
                out.append(index[(v, x)])
            elif x < 0 and (nxt, -x) in index:
                out.append(-index[(nxt, -x)])
            v = nxt
        if v != 0:
            raise NotAMember(f"word {w} is not in the subgroup")
        return fw.reduce(out)

    def express_in_generators(self, w: Sequence[int]) -> Word:
        """Write ``w`` as a word over the generators the graph was built from."""
        v = 0
        parts = []
        for x in fw.reduce(w):
            step = self.out[v].get(x)
            if step is None:
                raise NotAMember(f"word {w} is not in the subgroup")
            v, prov = step
            parts.append(prov)
        if v != 0:
            raise NotAMember(f"word {w} is not in the subgroup")
        return fw.mul(*parts)

    def to_dot(self, alphabet=None) -> str:
        lines = ["digraph stallings {", "  0 [shape=doublecircle];"]
        for u, g, v in self.edges():
            label = alphabet.names[g - 1] if alphabet else str(g)
            lines.append(f'  {u} -> {v} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)


def evaluate(expr: Sequence[int], gens: Sequence[Sequence[int]]) -> Word:
    """Substitute ``gens[i-1]`` for symbol ``i`` in ``expr``."""
    return fw.mul(*(gens[s - 1] if s > 0 else fw.inverse(gens[-s - 1]) for s in expr))


class _Folder:
    """Mutable multigraph used while folding."""

    def __init__(self):
        self.edges: dict[int, list] = {}   # id -> [src, g>0, dst, prov]
        self.incident: dict[int, set[int]] = {0: set()}
        self.next_vertex = 1
        self.next_edge = 0

    def new_vertex(self) -> int:
        v = self.next_vertex
        self.next_vertex += 1
        self.incident[v] = set()
        return v

    def add_edge(self, u: int, x: int, v: int, prov: Word) -> None:
        if x < 0:
            u, v, x, prov = v, u, -x, fw.inverse(prov)
        e = self.next_edge
        self.next_edge += 1
        self.edges[e] = [u, x, v, prov]
        self.incident[u].add(e)
        self.incident[v].add(e)

    def add_petal(self, w: Word, symbol: int) -> None:
        if not w:
            return
        u = 0
        for i, x in enumerate(w):
            v = 0 if i == len(w) - 1 else self.new_vertex()
            self.add_edge(u, x, v, (symbol,) if i == 0 else ())
            u = v

    def _darts(self, v: int):
        """(letter, edge id, far end, provenance in the leaving direction) at ``v``."""
        for e in sorted(self.incident[v]):
            src, g, dst, prov = self.edges[e]
            if src == v:
                yield g, e, dst, prov
            if dst == v:
                yield -g, e, src, fw.inverse(prov)

    def _find_fold(self, v: int):
        seen = {}
        for x, e, far, prov in self._darts(v):
            if x in seen and seen[x][0] != e:
                return seen[x], (e, far, prov)
            seen.setdefault(x, (e, far, prov))
        return None

    def _delete_edge(self, e: int) -> None:
        src, _, dst, _ = self.edges.pop(e)
        self.incident[src].discard(e)
        self.incident[dst].discard(e)

    def _merge(self, keep: int, drop: int, delta: Word) -> None:
        # a path entering `drop` continues from `keep` after a detour of
        # trivial label and provenance delta^-1
        dinv = fw.inverse(delta)
        for e in list(self.incident[drop]):
            edge = self.edges[e]
            if edge[0] == drop:
                edge[0] = keep
                edge[3] = fw.mul(delta, edge[3])
            if edge[2] == drop:
                edge[2] = keep
                edge[3] = fw.mul(edge[3], dinv)
            self.incident[keep].add(e)
        del self.incident[drop]

    def fold(self) -> None:
        work = deque(sorted(self.incident))
        while work:
            v = work.popleft()
            if v not in self.incident:
                continue
            pair = self._find_fold(v)
            if pair is None:
                continue
            (e1, v1, p1), (e2, v2, p2) = pair
            if v1 == v2:
                self._delete_edge(e2)
            elif v1 < v2:
                self._merge(v1, v2, fw.mul(fw.inverse(p1), p2))
            else:
                self._merge(v2, v1, fw.mul(fw.inverse(p2), p1))
            keep = min(v1, v2)
            work.appendleft(v)
            work.append(keep)

    def freeze(self, gens: tuple[Word, ...]) -> SubgroupGraph:
        # renumber by BFS from the base so the result is canonical
        order = {0: 0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for x, _, far, _ in sorted(self._darts(u), key=lambda d: fw.letter_key(d[0])):
                if far not in order:
                    order[far] = len(order)
                    queue.append(far)
        out: list[dict[int, tuple[int, Word]]] = [dict() for _ in order]
        for src, g, dst, prov in self.edges.values():
            out[order[src]][g] = (order[dst], prov)
            out[order[dst]][-g] = (order[src], fw.inverse(prov))
        return SubgroupGraph(len(order), out, gens)


def build(gens: Sequence[Sequence[int]]) -> SubgroupGraph:
    """Folded graph of the subgroup generated by ``gens``."""
    gens = tuple(fw.reduce(g) for g in gens)
    folder = _Folder()
    for i, g in enumerate(gens):
        folder.add_petal(g, i + 1)
    folder.fold()
    return folder.freeze(gens)


def contains(graph: SubgroupGraph, w: Sequence[int]) -> bool:
    return graph.contains(w)


def basis(graph: SubgroupGraph) -> list[Word]:
    return graph.basis()


def express(graph: SubgroupGraph, w: Sequence[int]) -> Word:
    return graph.express(w)
