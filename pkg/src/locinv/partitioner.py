"""Structural decompositions that feed word synthesis.

Two constructions live here:

* :func:`p3_partition` splits the edges of a rooted odd tree (every vertex
  of odd degree) into length-2 paths plus a single edge at the root, with
  the properties the synthesizer relies on: path ends are children of their
  center, the root is an end of the single edge, and every vertex is an end
  of exactly one piece.

* :func:`perfect_forest` finds a spanning forest of a connected even-order
  graph whose trees are induced subgraphs and odd trees.  It starts from an
  odd-degree spanning subgraph and repeatedly eliminates cycles and chords;
  both rewrites preserve every degree parity and strictly shrink the edge
  set, so the loop terminates with induced odd trees.

Both run in time polynomial in the graph size and are deterministic: ties
break toward smaller vertex ids throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph_core import Graph, is_connected, iter_bits

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, slots=True)
class RootedTree:
    """A tree on an arbitrary vertex set with a distinguished root."""

    vertices: frozenset[int]
    edges: tuple[Edge, ...]
    root: int

    def __post_init__(self) -> None:
        vs = frozenset(self.vertices)
        es = tuple(sorted(_norm_edge(u, v) for u, v in self.edges))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        if self.root not in vs:
            raise ValueError(f"root {self.root} not among the tree vertices")
        if len(es) != len(vs) - 1:
            raise ValueError(f"{len(vs)} vertices need {len(vs) - 1} tree edges, got {len(es)}")
        adj = self.adjacency()
        for u, v in es:
            if u not in vs or v not in vs:
                raise ValueError(f"edge ({u}, {v}) leaves the vertex set")
        seen = {self.root}
        queue = deque([self.root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if seen != vs:
            raise ValueError("tree edges do not connect the vertex set")

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def is_odd_tree(self) -> bool:
        adj = self.adjacency()
        return all(len(adj[v]) % 2 == 1 for v in self.vertices)

    def depths(self) -> dict[int, int]:
        """Distance of every vertex from the root."""
        adj = self.adjacency()
        depth = {self.root: 0}
        queue = deque([self.root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in depth:
                    depth[y] = depth[x] + 1
                    queue.append(y)
        return depth


@dataclass(frozen=True, slots=True)
class EdgePartition:
    """Edges of an odd tree split into (end, center, end) triples plus one edge.

    The single edge keeps the root as its first entry.
    """

    p3s: tuple[tuple[int, int, int], ...]
    k2: Edge


@dataclass(frozen=True, slots=True)
class PerfectForest:
    """Vertex-disjoint induced odd trees covering the whole graph.

    ``trees`` holds one sorted edge tuple per tree, ordered by smallest
    vertex.
    """

    trees: tuple[tuple[Edge, ...], ...]

    def vertex_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(
            frozenset(v for e in tree for v in e) for tree in self.trees
        )


def p3_partition(t: RootedTree) -> EdgePartition:
    """Partition an even-order odd tree into (end, center, end) triples and one edge.

    Follows the inductive peeling argument: take the deepest vertex ``v``
    adjacent to a leaf (smallest id on ties); all its children are then
    leaves, and since deg(v) is odd and at least 3 it has two leaf children
    ``u < w`` to detach as the triple (u, v, w).  What remains is a smaller
    odd tree; after (n-2)/2 rounds only the root and one neighbor survive,
    forming the final edge.
    """
    n = len(t.vertices)
    if n < 2 or n % 2 == 1:
        raise ValueError(f"need an even vertex count >= 2, got {n}")
    if not t.is_odd_tree():
        raise ValueError("every tree vertex must have odd degree")

    depth = t.depths()
    adj = t.adjacency()
    triples: list[tuple[int, int, int]] = []
    while len(adj) > 2:
        leaves = {x for x, nb in adj.items() if len(nb) == 1}
        candidates = [x for x, nb in adj.items() if nb & leaves]
        v = min(candidates, key=lambda x: (-depth[x], x))
        leaf_children = sorted(
            u for u in adj[v] if u in leaves and depth[u] == depth[v] + 1
        )
        assert len(leaf_children) >= 2, "deepest leaf-neighbor must own two leaf children"
        u, w = leaf_children[0], leaf_children[1]
        triples.append((u, v, w))
        for x in (u, w):
            adj[v].discard(x)
            del adj[x]

    (a, b) = sorted(adj)
    assert t.root in (a, b), "the root survives every peeling round"
    other = b if a == t.root else a
    return EdgePartition(tuple(triples), (t.root, other))


def odd_degree_spanning_subgraph(g: Graph) -> frozenset[Edge]:
    """Spanning edge set of a connected even-order graph with all degrees odd.

    Root a BFS spanning tree at vertex 0 and sweep it children-first: a
    vertex keeps the edge to its parent exactly when its degree so far is
    even.  Every non-root ends odd by construction, and the root follows
    because the total degree sum is even and n is even.
    """
    if g.n < 2 or g.n % 2 == 1:
        raise ValueError(f"need an even vertex count >= 2, got {g.n}")
    if not is_connected(g):
        raise ValueError("graph must be connected")

    parent = {0: None}
    order = [0]
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in iter_bits(g.rows[x]):
            if y not in parent:
                parent[y] = x
                order.append(y)
                queue.append(y)

    fdeg = [0] * g.n
    chosen: set[Edge] = set()
    for v in reversed(order[1:]):
        if fdeg[v] % 2 == 0:
            p = parent[v]
            chosen.add(_norm_edge(v, p))
            fdeg[v] += 1
            fdeg[p] += 1
    assert all(d % 2 == 1 for d in fdeg), "parity sweep must leave all degrees odd"
    return frozenset(chosen)


def _forest_components(n: int, edges: set[Edge]) -> list[tuple[list[int], dict[int, list[int]]]]:
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen: set[int] = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append((sorted(comp), adj))
    return comps


def _find_cycle(n: int, edges: set[Edge]) -> list[Edge] | None:
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen: set[int] = set()
    for start in sorted(adj):
        if start in seen:
            continue
        stack = [(start, None)]
        prev: dict[int, int | None] = {start: None}
        while stack:
            x, par = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            for y in adj[x]:
                if y == par:
                    continue
                if y in prev:
                    # close the cycle through the two discovery paths
                    px = [x]
                    while px[-1] is not None:
                        px.append(prev[px[-1]])
                    py = [y]
                    while py[-1] is not None:
                        py.append(prev[py[-1]])
                    common = next(a for a in px if a in set(py))
                    cyc = px[: px.index(common) + 1] + py[: py.index(common)][::-1]
                    return [_norm_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
                prev[y] = x
                stack.append((y, x))
    return None


def _tree_path(adj: dict[int, list[int]], src: int, dst: int) -> list[int]:
    prev = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for y in adj[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1]


def perfect_forest(g: Graph) -> PerfectForest:
    """Spanning forest of induced odd trees of a connected even-order graph.

    Starting from :func:`odd_degree_spanning_subgraph`, remove the edges of
    any cycle, then repeatedly resolve chords: if some tree on vertex set S
    has a graph edge e inside S that is not a forest edge, replace the tree
    path between e's endpoints by e.  Both rewrites keep every degree parity
    and strictly decrease the edge count, so at termination each tree is an
    induced odd tree.  Trees are scanned by smallest vertex and chords
    lexicographically, making the output deterministic.
    """
    fset = set(odd_degree_spanning_subgraph(g))

    def parities() -> list[int]:
        deg = [0] * g.n
        for u, v in fset:
            deg[u] += 1
            deg[v] += 1
        return [d % 2 for d in deg]

    guard = g.edge_count() + 1
    while True:
        cyc = _find_cycle(g.n, fset)
        if cyc is None:
            break
        fset -= set(cyc)
        guard -= 1
        assert guard > 0, "cycle elimination must shrink the edge set"
        assert parities() == [1] * g.n, "cycle removal must preserve degree parity"

    while True:
        swapped = False
        for comp, adj in _forest_components(g.n, fset):
            sm = 0
            for v in comp:
                sm |= 1 << v
            chord = None
            for u in comp:
                row = g.rows[u] & sm & ~((1 << (u + 1)) - 1)
                for v in iter_bits(row):
                    if _norm_edge(u, v) not in fset:
                        chord = (u, v)
                        break
                if chord:
                    break
            if chord is None:
                continue
            u, v = chord
            path = _tree_path(adj, u, v)
            for i in range(len(path) - 1):
                fset.discard(_norm_edge(path[i], path[i + 1]))
            fset.add(_norm_edge(u, v))
            swapped = True
            guard -= 1
            assert guard > 0, "chord elimination must shrink the edge set"
            assert parities() == [1] * g.n, "chord swap must preserve degree parity"
            break
        if not swapped:
            break

    trees = [
        tuple(sorted(_norm_edge(u, v) for u, v in _component_edges(comp, fset)))
        for comp, _ in _forest_components(g.n, fset)
    ]
    covered = {v for tree in trees for e in tree for v in e}
    assert covered == set(range(g.n)), "forest must span every vertex"
    return PerfectForest(tuple(trees))


def _component_edges(comp: Iterable[int], edges: set[Edge]) -> list[Edge]:
    cs = set(comp)
    return [e for e in edges if e[0] in cs]
