"""Exact ground truth at desk scale.

A bicolored graph on n vertices packs into a single integer: the upper
triangle of the adjacency matrix in column-major pair order, followed by
one bit per vertex color.  Breadth-first search over the n successor moves
per state yields shortest transformation words, the exact color reversal
number of small graphs, and an exhaustive survey of all connected graphs
up to a vertex cap.

The default cap is 7 vertices (state space 2^28); the survey of everything
up to 5 vertices runs in seconds.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .errors import CapExceededError, UnsatisfiableError
from .graph_core import (
    BicoloredGraph,
    Graph,
    Word,
    all_plus,
    flip,
    is_connected,
    _lc_rows,
)
from .graph6 import emit_graph6
from .synthesizer import color_reversal_word

DEFAULT_CAP = 7


# -- state packing ------------------------------------------------------


def pack_state(b: BicoloredGraph) -> int:
    """Pack a bicolored graph into adjacency bits followed by color bits.

    Bit layout: the low ``n`` bits hold the coloring (bit v set means
    vertex v is colored -1); above them sit the n(n-1)/2 upper-triangle
    adjacency bits in column-major pair order.
    """
    n = b.graph.n
    cmask = 0
    for v, c in enumerate(b.coloring):
        if c == -1:
            cmask |= 1 << v
    return (b.graph.upper_bits() << n) | cmask


def unpack_state(key: int, n: int) -> BicoloredGraph:
    """Inverse of :func:`pack_state` for a fixed vertex count."""
    cmask = key & ((1 << n) - 1)
    g = Graph.from_upper_bits(n, key >> n)
    coloring = tuple(-1 if (cmask >> v) & 1 else 1 for v in range(n))
    return BicoloredGraph(g, coloring)


def _pack_rows(rows: Sequence[int], n: int, cmask: int) -> int:
    bits = 0
    shift = 0
    for j in range(1, n):
        bits |= (rows[j] & ((1 << j) - 1)) << shift
        shift += j
    return (bits << n) | cmask


# -- breadth-first search ------------------------------------------------


def min_flip_word(
    b: BicoloredGraph, target: BicoloredGraph, cap: int = DEFAULT_CAP
) -> tuple[int, Word] | None:
    """Shortest word transforming ``b`` into ``target``, or None if unreachable.

    Plain breadth-first search over the n moves per state, so the returned
    word length is exactly the layer in which the target first appears.
    """
    n = b.graph.n
    if target.graph.n != n:
        raise ValueError("source and target must have the same vertex count")
    if n > cap:
        raise CapExceededError(f"{n} vertices exceed the search cap {cap}")

    cmask0 = 0
    for v, c in enumerate(b.coloring):
        if c == -1:
            cmask0 |= 1 << v
    start = _pack_rows(b.graph.rows, n, cmask0)
    goal = pack_state(target)
    if start == goal:
        return (0, ())

    visited: dict[int, tuple[int, int] | None] = {start: None}
    frontier: list[tuple[tuple[int, ...], int, int]] = [(b.graph.rows, cmask0, start)]
    while frontier:
        nxt: list[tuple[tuple[int, ...], int, int]] = []
        for rows, cmask, key in frontier:
            for a in range(n):
                ncmask = cmask ^ rows[a]
                nrows = _lc_rows(rows, a)
                nkey = _pack_rows(nrows, n, ncmask)
                if nkey in visited:
                    continue
                visited[nkey] = (key, a)
                if nkey == goal:
                    letters: list[int] = []
                    cur: int | None = nkey
                    while visited[cur] is not None:
                        cur, letter = visited[cur]
                        letters.append(letter)
                    letters.reverse()
                    return (len(letters), tuple(letters))
                nxt.append((nrows, ncmask, nkey))
        frontier = nxt
    return None


# -- reports ---------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class CrReport:
    """Exact color reversal data for one graph, with the synthesized word for comparison."""

    graph_id: str
    n: int
    exact_cr: int | None
    witness: Word
    synthesized_length: int | None
    bound: int | None


def exact_cr(g: Graph, cap: int = DEFAULT_CAP) -> CrReport:
    """Exact color reversal number of ``g`` by breadth-first search.

    Searches from the all-plus coloring to the all-minus coloring; the
    flipped set of any word is coloring-independent, so this one pair
    decides reversibility for every coloring.  ``None`` entries mean the
    reversal is unreachable (isolated vertices) or synthesis declined.
    """
    start = BicoloredGraph(g, all_plus(g.n))
    target = flip(start, range(g.n))
    found = min_flip_word(start, target, cap=cap)
    try:
        cw = color_reversal_word(g)
        synth_len, bound = len(cw.word), cw.bound
    except UnsatisfiableError:
        synth_len, bound = None, None
    if found is None:
        return CrReport(emit_graph6(g), g.n, None, (), synth_len, bound)
    return CrReport(emit_graph6(g), g.n, found[0], found[1], synth_len, bound)


# -- enumeration -------------------------------------------------------------


def _connected_bits(bits: int, n: int) -> bool:
    g = Graph.from_upper_bits(n, bits)
    return is_connected(g)


def _bit_remaps(n: int) -> list[tuple[int, ...]]:
    """For each vertex permutation, where each upper-triangle bit lands."""
    index = {}
    k = 0
    for j in range(1, n):
        for i in range(j):
            index[(i, j)] = k
            k += 1
    remaps = []
    for perm in permutations(range(n)):
        table = [0] * k
        for (i, j), src in index.items():
            pi, pj = perm[i], perm[j]
            table[src] = index[(pi, pj) if pi < pj else (pj, pi)]
        remaps.append(tuple(table))
    return remaps


def connected_graphs(n: int) -> Iterator[Graph]:
    """All connected graphs on ``n`` vertices, one per isomorphism class.

    Canonical representatives minimize the packed upper-triangle bits over
    all vertex permutations, found by brute force; fine for n <= 7.
    """
    if n == 1:
        yield Graph(1, (0,))
        return
    remaps = _bit_remaps(n)
    nbits = n * (n - 1) // 2
    for bits in range(1 << nbits):
        if not _connected_bits(bits, n):
            continue
        smaller = False
        for table in remaps:
            permuted = 0
            m = bits
            while m:
                low = m & -m
                permuted |= 1 << table[low.bit_length() - 1]
                m ^= low
            if permuted < bits:
                smaller = True
                break
        if not smaller:
            yield Graph.from_upper_bits(n, bits)


# -- survey -------------------------------------------------------------------


def _survey_one(args: tuple[str, int]) -> CrReport:
    from .graph6 import parse_graph6

    line, cap = args
    return exact_cr(parse_graph6(line), cap=cap)


def survey(
    n_max: int,
    *,
    graph6_lines: Iterable[str] | None = None,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> list[CrReport]:
    """Exact reports for every connected graph with 2..n_max vertices.

    Graphs come from ``graph6_lines`` when given (filtered to at most
    ``n_max`` vertices) and from internal isomorphism-free enumeration
    otherwise.  Workers share nothing; results keep input order, so the
    output is deterministic for fixed inputs.
    """
    if n_max > cap:
        raise CapExceededError(f"n_max {n_max} exceeds the search cap {cap}")
    if graph6_lines is not None:
        from .graph6 import parse_graph6

        ids = [line for line in graph6_lines if parse_graph6(line).n <= n_max]
    else:
        ids = [
            emit_graph6(g) for n in range(2, n_max + 1) for g in connected_graphs(n)
        ]
    tasks = [(line, cap) for line in ids]
    if jobs <= 1:
        return [_survey_one(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_survey_one, tasks))


@dataclass(frozen=True, slots=True)
class SurveySummary:
    graphs: int
    max_cr: int | None
    max_ratio: float | None
    violations: tuple[str, ...]


def summarize(reports: Iterable[CrReport]) -> SurveySummary:
    """Aggregate a survey: largest cr, largest cr/3n ratio, sandwich breaks.

    A violation is any report where exact <= synthesized <= bound fails to
    hold among its defined entries.
    """
    count = 0
    max_cr: int | None = None
    max_ratio: float | None = None
    violations: list[str] = []
    for rep in reports:
        count += 1
        if rep.exact_cr is not None:
            if max_cr is None or rep.exact_cr > max_cr:
                max_cr = rep.exact_cr
            ratio = rep.exact_cr / (3 * rep.n)
            if max_ratio is None or ratio > max_ratio:
                max_ratio = ratio
            if rep.synthesized_length is not None and rep.exact_cr > rep.synthesized_length:
                violations.append(f"{rep.graph_id}: exact {rep.exact_cr} > synthesized {rep.synthesized_length}")
        if (
            rep.synthesized_length is not None
            and rep.bound is not None
            and rep.synthesized_length > rep.bound
        ):
            violations.append(f"{rep.graph_id}: synthesized {rep.synthesized_length} > bound {rep.bound}")
    return SurveySummary(count, max_cr, max_ratio, tuple(violations))
