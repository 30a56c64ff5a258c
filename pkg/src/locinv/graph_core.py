"""Bicolored graphs and the local-inversion calculus.

A bicolored graph pairs a simple undirected graph on vertices 0..n-1 with
a coloring assigning each vertex -1 or +1.  The basic move, *local
inversion* at a vertex ``a``, complements the adjacency inside the open
neighborhood of ``a`` and negates the colors of all its neighbors, leaving
``a`` itself and everything else untouched.  Words (finite sequences of
vertices) act letter by letter, left to right.

Every move is an involution, so deleting adjacent equal letters never
changes the action of a word; :func:`reduce_word` computes the unique
freely reduced form.

Adjacency is stored as one bitmask per vertex, which makes a local
complementation cost O(deg) integer operations.  All values are immutable;
operations return new values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Word = tuple[int, ...]
Coloring = tuple[int, ...]
VertexSet = frozenset[int]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True, slots=True)
class Graph:
    """Simple undirected labeled graph on vertices ``0..n-1``.

    ``rows[u]`` is the bitmask of neighbors of ``u``.  The relation is kept
    symmetric and irreflexive; violations raise :class:`ValueError` at
    construction time.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        for u, row in enumerate(self.rows):
            if row < 0 or row >> self.n:
                raise ValueError(f"row {u} mentions vertices outside 0..{self.n - 1}")
            if row & (1 << u):
                raise ValueError(f"loop at vertex {u}")
        for u, row in enumerate(self.rows):
            for v in iter_bits(row):
                if not (self.rows[v] >> u) & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"loop edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    @staticmethod
    def from_upper_bits(n: int, bits: int) -> "Graph":
        """Build a graph from packed upper-triangle bits.

        Bit ``j*(j-1)/2 + i`` holds the adjacency of pair ``(i, j)`` for
        ``i < j`` (column-major pair order, as in the graph6 format).
        """
        rows = [0] * n
        k = 0
        for j in range(1, n):
            for i in range(j):
                if (bits >> k) & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                k += 1
        return Graph(n, tuple(rows))

    @staticmethod
    def path(t: int) -> "Graph":
        """Path on ``t`` vertices, edges i..i+1."""
        return Graph.from_edges(t, [(i, i + 1) for i in range(t - 1)])

    @staticmethod
    def complete(t: int) -> "Graph":
        return Graph.from_edges(t, [(i, j) for i in range(t) for j in range(i + 1, t)])

    @staticmethod
    def star(t: int) -> "Graph":
        """Star on ``t`` vertices: center 0, leaves 1..t-1."""
        return Graph.from_edges(t, [(0, i) for i in range(1, t)])

    # -- queries ------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return tuple(iter_bits(self.rows[v]))

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        out = []
        for u in range(self.n):
            row = self.rows[u] >> (u + 1)
            for d in iter_bits(row):
                out.append((u, u + 1 + d))
        return out

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def upper_bits(self) -> int:
        """Inverse of :meth:`from_upper_bits`."""
        bits = 0
        shift = 0
        for j in range(1, self.n):
            bits |= (self.rows[j] & ((1 << j) - 1)) << shift
            shift += j
        return bits

    def induced(self, s: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on ``s``, relabeled to ``0..|s|-1``.

        Returns the subgraph together with the sorted original ids, where
        the new vertex ``i`` corresponds to ``ids[i]``.
        """
        ids = sorted(set(s))
        for v in ids:
            self._check_vertex(v)
        index = {v: i for i, v in enumerate(ids)}
        rows = []
        for v in ids:
            row = 0
            for w in iter_bits(self.rows[v]):
                if w in index:
                    row |= 1 << index[w]
            rows.append(row)
        return Graph(len(ids), tuple(rows)), tuple(ids)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} outside 0..{self.n - 1}")


# -- connectivity helpers ---------------------------------------------


def reachable_mask(g: Graph, start: int, within: int) -> int:
    """Bitmask of vertices reachable from ``start`` inside the mask ``within``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.rows[v] & within
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    full = (1 << g.n) - 1
    return reachable_mask(g, 0, full) == full


def induced_connected(g: Graph, s: Iterable[int]) -> bool:
    """Whether the subgraph of ``g`` induced by ``s`` is connected."""
    sm = mask_of(s)
    if sm == 0:
        return True
    start = (sm & -sm).bit_length() - 1
    return reachable_mask(g, start, sm) == sm


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components, sorted by smallest member."""
    return components_within(g, range(g.n))


def components_within(g: Graph, s: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of the subgraph induced by ``s``."""
    rest = mask_of(s)
    out = []
    while rest:
        start = (rest & -rest).bit_length() - 1
        comp = reachable_mask(g, start, rest)
        out.append(frozenset(iter_bits(comp)))
        rest &= ~comp
    return out


# -- coloring and bicolored graphs ------------------------------------


def all_plus(n: int) -> Coloring:
    return (1,) * n


@dataclass(frozen=True, slots=True)
class BicoloredGraph:
    """A graph together with a coloring in {-1, +1} per vertex."""

    graph: Graph
    coloring: Coloring

    def __post_init__(self) -> None:
        if len(self.coloring) != self.graph.n:
            raise ValueError(
                f"coloring has {len(self.coloring)} entries for {self.graph.n} vertices"
            )
        for v, c in enumerate(self.coloring):
            if c not in (-1, 1):
                raise ValueError(f"color of vertex {v} is {c}, expected -1 or +1")


# -- the calculus ------------------------------------------------------


def _lc_rows(rows: Sequence[int], a: int) -> tuple[int, ...]:
    """Adjacency rows after local complementation at ``a``."""
    nb = rows[a]
    out = list(rows)
    m = nb
    while m:
        low = m & -m
        u = low.bit_length() - 1
        out[u] ^= nb ^ low
        m ^= low
    return tuple(out)


def local_complement(g: Graph, a: int) -> Graph:
    """Toggle adjacency between every pair of distinct neighbors of ``a``."""
    g._check_vertex(a)
    return Graph(g.n, _lc_rows(g.rows, a))


def apply_word_graph(g: Graph, w: Sequence[int]) -> Graph:
    """Fold :func:`local_complement` over ``w`` left to right."""
    rows = g.rows
    for a in w:
        if not (0 <= a < g.n):
            raise ValueError(f"word letter {a} outside 0..{g.n - 1}")
        rows = _lc_rows(rows, a)
    return Graph(g.n, rows)


def local_inversion(b: BicoloredGraph, a: int) -> BicoloredGraph:
    """Local complement at ``a`` plus color negation on all neighbors of ``a``."""
    g = b.graph
    g._check_vertex(a)
    nb = g.rows[a]
    coloring = tuple(
        -c if (nb >> v) & 1 else c for v, c in enumerate(b.coloring)
    )
    return BicoloredGraph(Graph(g.n, _lc_rows(g.rows, a)), coloring)


def apply_word(b: BicoloredGraph, w: Sequence[int]) -> BicoloredGraph:
    """Fold :func:`local_inversion` over ``w`` left to right."""
    n = b.graph.n
    rows = b.graph.rows
    colors = list(b.coloring)
    for a in w:
        if not (0 <= a < n):
            raise ValueError(f"word letter {a} outside 0..{n - 1}")
        nb = rows[a]
        for v in iter_bits(nb):
            colors[v] = -colors[v]
        rows = _lc_rows(rows, a)
    return BicoloredGraph(Graph(n, rows), tuple(colors))


def flip(b: BicoloredGraph, s: Iterable[int]) -> BicoloredGraph:
    """Negate the colors on ``s``; the graph is unchanged."""
    sm = mask_of(s)
    if sm >> b.graph.n:
        raise ValueError("flip set mentions vertices outside the graph")
    coloring = tuple(
        -c if (sm >> v) & 1 else c for v, c in enumerate(b.coloring)
    )
    return BicoloredGraph(b.graph, coloring)


def reduce_word(w: Sequence[int]) -> Word:
    """Freely reduce ``w`` by cancelling adjacent equal letters.

    One stack pass yields the normal form; the rewriting is terminating and
    confluent, so the result does not depend on cancellation order, and the
    reduced word acts exactly like the original on every bicolored graph.
    """
    out: list[int] = []
    for x in w:
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)
