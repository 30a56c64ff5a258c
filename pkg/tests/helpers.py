"""Shared test utilities: random instance generators and independent checkers.

The checkers here are deliberately written from the definitions, not by
calling the code under test, so they can serve as oracles.
"""

from __future__ import annotations

import random
from collections import deque

from locinv.graph_core import Graph
from locinv.partitioner import EdgePartition, PerfectForest, RootedTree


# -- random instances ----------------------------------------------------


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def random_connected_graph(rng: random.Random, n: int, extra: float = 0.3) -> Graph:
    """A uniform random tree plus extra random edges; always connected."""
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra:
                edges.add((u, v))
    return Graph.from_edges(n, edges)


def random_odd_tree(rng: random.Random, n: int) -> RootedTree:
    """Random tree with all degrees odd, on n (even) relabeled vertices.

    Grown by repeatedly attaching two fresh leaves to a random vertex,
    which preserves every degree parity; any odd tree arises this way.
    """
    assert n >= 2 and n % 2 == 0
    edges = [(0, 1)]
    size = 2
    while size < n:
        host = rng.randrange(size)
        edges.append((host, size))
        edges.append((host, size + 1))
        size += 2
    relabel = list(range(n))
    rng.shuffle(relabel)
    shuffled = [(relabel[u], relabel[v]) for u, v in edges]
    return RootedTree(frozenset(range(n)), tuple(shuffled), rng.randrange(n))


def random_coloring(rng: random.Random, n: int) -> tuple[int, ...]:
    return tuple(rng.choice((-1, 1)) for _ in range(n))


# -- independent oracles ---------------------------------------------------


def local_complement_reference(g: Graph, a: int) -> Graph:
    """Second implementation of local complementation, pair by pair."""
    nb = set(g.neighbors(a))
    edges = set()
    for u in range(g.n):
        for v in range(u + 1, g.n):
            has = g.has_edge(u, v)
            if u in nb and v in nb:
                has = not has
            if has:
                edges.add((u, v))
    return Graph.from_edges(g.n, edges)


def check_p3_partition(t: RootedTree, part: EdgePartition) -> None:
    """Validate the partition conditions directly from the definitions."""
    n = len(t.vertices)
    assert len(part.p3s) == (n - 2) // 2, "triple count must be (n-2)/2"

    used = []
    for end_a, center, end_b in part.p3s:
        used.append(tuple(sorted((end_a, center))))
        used.append(tuple(sorted((center, end_b))))
    used.append(tuple(sorted(part.k2)))
    assert len(used) == len(set(used)), "pieces reuse an edge"
    assert sorted(set(used)) == sorted(t.edges), "pieces must cover E(T) exactly"

    depth = t.depths()
    for end_a, center, end_b in part.p3s:
        assert depth[end_a] == depth[center] + 1, "triple end must be a child of its center"
        assert depth[end_b] == depth[center] + 1, "triple end must be a child of its center"

    assert t.root in part.k2, "the root must be an end of the single edge"

    end_count = {v: 0 for v in t.vertices}
    for end_a, _, end_b in part.p3s:
        end_count[end_a] += 1
        end_count[end_b] += 1
    for v in part.k2:
        end_count[v] += 1
    assert all(c == 1 for c in end_count.values()), "each vertex ends exactly one piece"


def check_perfect_forest(g: Graph, forest: PerfectForest) -> None:
    """Validate spanning, disjoint, induced, odd, treeness from definitions."""
    seen: set[int] = set()
    for tree in forest.trees:
        vs = {v for e in tree for v in e}
        assert not (vs & seen), "trees must be vertex-disjoint"
        seen |= vs

        deg = {v: 0 for v in vs}
        for u, v in tree:
            assert g.has_edge(u, v), "forest edge missing from the graph"
            deg[u] += 1
            deg[v] += 1
        assert all(d % 2 == 1 for d in deg.values()), "all degrees must be odd"

        assert len(tree) == len(vs) - 1, "tree edge count"
        adj = {v: set() for v in vs}
        for u, v in tree:
            adj[u].add(v)
            adj[v].add(u)
        start = next(iter(vs))
        reach = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in reach:
                    reach.add(y)
                    queue.append(y)
        assert reach == vs, "tree must be connected"

        ordered = sorted(vs)
        for i, u in enumerate(ordered):
            for v in ordered[i + 1 :]:
                assert g.has_edge(u, v) == ((u, v) in set(tree)), "tree must be induced"
    assert seen == set(range(g.n)), "forest must span all vertices"
