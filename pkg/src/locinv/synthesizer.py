"""Bound-certified word synthesis.

Every public operation returns a :class:`CertifiedWord`: a word together
with the vertex set it flips, a length bound, and a tag describing the
construction path.  Replaying the word on any coloring of the target graph
flips exactly ``target_flip`` and restores the graph; the flipped set does
not depend on the starting coloring, so one replay suffices in principle
and :func:`verify_certificate` adds random colorings purely as an
implementation check.

Building blocks (lengths in letters):

* ``gadget_edge(a, b)``, 6: flips {a, b} across an edge ab.
* ``gadget_triangle(a, b, c)``, 7: flips {a} on a triangle abc.
* ``gadget_p3_ends(a, b, c)``, 8: flips {a, b} when c sees both and ab is
  a non-edge.
* ``gadget_p3_end(a, b, c)``, 7: flips {a} under the same hypotheses.

On top of those: whole-graph color reversal within 4n-4 (n even) or 4n-3
(n odd) letters per connected component, arbitrary recoloring within
floor((11n-3)/2) letters, and explicit 3n-letter words for stars and
complete graphs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .errors import BoundExceededError, UnsatisfiableError, VerificationError
from .graph_core import (
    BicoloredGraph,
    Graph,
    Word,
    all_plus,
    apply_word,
    components,
    components_within,
    flip,
    induced_connected,
    is_connected,
    iter_bits,
    reduce_word,
)
from .partitioner import RootedTree, p3_partition, perfect_forest

Anchor = Literal["end", "start"]


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True, slots=True)
class CertifiedWord:
    """A word plus the claim it certifies.

    ``word`` flips exactly ``target_flip`` and restores the underlying
    graph; ``len(word) <= bound`` always holds, and ``construction`` names
    the synthesis path that produced it.  Words are emitted unreduced so
    that fixture strings match letter for letter; ``reduced`` gives the
    freely reduced variant, which certifies the same claim.
    """

    word: Word
    target_flip: frozenset[int]
    bound: int
    construction: str

    def __post_init__(self) -> None:
        if len(self.word) > self.bound:
            raise BoundExceededError(
                f"{self.construction}: word of length {len(self.word)} exceeds bound {self.bound}",
                witness={"word": self.word, "bound": self.bound},
            )

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def reduced(self) -> Word:
        return reduce_word(self.word)


# -- constant gadgets ---------------------------------------------------


def gadget_edge(a: int, b: int) -> Word:
    """Flip {a, b}; valid whenever ab is an edge at application time."""
    return (a, b, a, b, a, b)


def gadget_triangle(a: int, b: int, c: int) -> Word:
    """Flip {a}; valid whenever abc is a triangle at application time."""
    return (a, b, a, c, b, a, c)


def gadget_p3_ends(a: int, b: int, c: int) -> Word:
    """Flip {a, b}; valid when a, b are neighbors of c and ab is a non-edge."""
    return (c, a, b, a, b, a, b, c)


def gadget_p3_end(a: int, b: int, c: int) -> Word:
    """Flip {a}; valid when a, b are neighbors of c and ab is a non-edge."""
    return (c, a, b, a, c, b, a)


# -- small whole-graph base cases ----------------------------------------


def base_case_word(g: Graph) -> CertifiedWord:
    """Color-reversal word for a graph that is exactly K2, K3, or P3."""
    n = g.n
    m = g.edge_count()
    everything = frozenset(range(n))
    if n == 2 and m == 1:
        return CertifiedWord((0, 1), everything, 2, "base/k2")
    if n == 3 and m == 3:
        a, b, c = 0, 1, 2
        word = (a, b, a, b, a, b, c, a, c)
        return CertifiedWord(word, everything, 9, "base/k3")
    if n == 3 and m == 2:
        center = next(v for v in range(3) if g.degree(v) == 2)
        a, c = sorted(v for v in range(3) if v != center)
        b = center
        word = (a, b, a, b, a, c, a, c, b)
        return CertifiedWord(word, everything, 9, "base/p3")
    raise ValueError("graph is not K2, K3, or P3")


# -- single-vertex flips --------------------------------------------------


def _triangle_at(g: Graph, a: int, allowed: int) -> tuple[int, int] | None:
    """Smallest (b, c) completing a triangle at ``a`` inside the mask."""
    nb = g.rows[a] & allowed
    for b in iter_bits(nb):
        row = g.rows[b] & nb & ~((1 << (b + 1)) - 1)
        for c in iter_bits(row):
            return (b, c)
    return None


def _p3_end_at(g: Graph, a: int, allowed: int) -> tuple[int, int] | None:
    """Smallest (b, c) with a, b neighbors of c, ab a non-edge, inside the mask."""
    na = g.rows[a] & allowed
    for b in range(g.n):
        if b == a or not (allowed >> b) & 1 or (g.rows[a] >> b) & 1:
            continue
        common = g.rows[b] & na
        if common:
            c = (common & -common).bit_length() - 1
            return (b, c)
    return None


def _single_flip_word(g: Graph, a: int) -> tuple[Word, str]:
    """Word flipping exactly {a}, using only a's component.

    Preference order: a pendant neighbor x gives the one-letter word (x),
    since inverting at x flips exactly its unique neighbor; otherwise a
    triangle or an induced-path gadget gives seven letters.  One of the
    three always applies once a has any neighbor.
    """
    nb = g.rows[a]
    if nb == 0:
        raise UnsatisfiableError(f"vertex {a} is isolated; its color is invariant")
    for x in iter_bits(nb):
        if g.rows[x].bit_count() == 1:
            return (x,), "single/pendant-neighbor"
    full = (1 << g.n) - 1
    tri = _triangle_at(g, a, full)
    if tri is not None:
        b, c = tri
        return gadget_triangle(a, b, c), "single/triangle"
    p3 = _p3_end_at(g, a, full)
    assert p3 is not None, "a non-pendant neighborhood yields a triangle or an induced path"
    b, c = p3
    return gadget_p3_end(a, b, c), "single/p3-end"


def flip_single(g: Graph, a: int) -> CertifiedWord:
    """Word flipping exactly {a} in a connected graph on at least 3 vertices.

    Strategy: a triangle through ``a`` gives seven letters; failing that, an
    induced path ending at ``a`` gives seven letters; the only remaining
    shape is a star centered at ``a``, handled by an edge gadget to one leaf
    followed by a path-end gadget between two leaves (13 letters, recorded
    as the certificate bound).
    """
    g._check_vertex(a)
    if g.n < 3:
        raise ValueError(f"need at least 3 vertices, got {g.n}")
    if not is_connected(g):
        raise ValueError("graph must be connected")
    full = (1 << g.n) - 1
    tri = _triangle_at(g, a, full)
    if tri is not None:
        b, c = tri
        return CertifiedWord(gadget_triangle(a, b, c), frozenset({a}), 7, "single/triangle")
    p3 = _p3_end_at(g, a, full)
    if p3 is not None:
        b, c = p3
        return CertifiedWord(gadget_p3_end(a, b, c), frozenset({a}), 7, "single/p3-end")
    # no triangle and no induced-path end means every neighbor of a is
    # pendant, i.e. the graph is a star centered at a
    x, y = sorted(iter_bits(g.rows[a]))[:2]
    word = gadget_edge(a, x) + gadget_p3_end(x, y, a)
    return CertifiedWord(word, frozenset({a}), 13, "single/star-center")


# -- induced odd trees and subgraphs --------------------------------------


def _check_induced_tree(g: Graph, t: RootedTree) -> None:
    vs = sorted(t.vertices)
    tree_edges = set(t.edges)
    for i, u in enumerate(vs):
        for v in vs[i + 1 :]:
            has = g.has_edge(u, v)
            if has != ((u, v) in tree_edges):
                raise ValueError(f"tree is not induced in the host graph at pair ({u}, {v})")


def reverse_odd_tree(g: Graph, t: RootedTree, r: int, anchor: Anchor = "end") -> CertifiedWord:
    """Flip all vertices of an induced odd tree, anchored at ``r``.

    The word has length exactly 4k-4 for a k-vertex tree and ends
    (``anchor="end"``) or starts (``anchor="start"``) with ``r``.  It is
    assembled from the tree's path partition: an 8-letter path-ends gadget
    per triple, except that the triple meeting the root edge merges with
    the edge gadget into a single 12-letter block.
    """
    if r not in t.vertices:
        raise ValueError(f"anchor vertex {r} is not in the tree")
    if anchor not in ("end", "start"):
        raise ValueError(f"anchor must be 'end' or 'start', got {anchor!r}")
    k = len(t.vertices)
    if k < 4:
        raise ValueError(f"need at least 4 tree vertices, got {k}")
    _check_induced_tree(g, t)

    part = p3_partition(RootedTree(t.vertices, t.edges, r))
    v = part.k2[1]
    adj = t.adjacency()

    if len(adj[r]) > 1:
        # r centers some triple; merge the root edge with one of them
        x, _, y = next(tr for tr in part.p3s if tr[1] == r)
        rest = [tr for tr in part.p3s if tr != (x, r, y)]
        block_end = (v, r, v, r, v) + (x, y, x, y, x, y, r)
        block_start = (r, x, y, x, y, x, y) + (v, r, v, r, v)
    else:
        x, _, y = next(tr for tr in part.p3s if tr[1] == v)
        rest = [tr for tr in part.p3s if tr != (x, v, y)]
        block_end = (v, x, y, x, y, x, y) + (r, v, r, v, r)
        block_start = (r, v, r, v, r) + (x, y, x, y, x, y, v)

    middle: list[int] = []
    for end_a, center, end_b in rest:
        middle.extend(gadget_p3_ends(end_a, end_b, center))

    if anchor == "end":
        word = tuple(middle) + block_end
    else:
        word = block_start + tuple(middle)
    assert len(word) == 4 * k - 4
    return CertifiedWord(word, frozenset(t.vertices), 4 * k - 4, f"odd-tree/{anchor}")


def reverse_even_subgraph(
    g: Graph, s: Iterable[int], v: int, anchor: Anchor = "end"
) -> CertifiedWord:
    """Flip a connected induced subgraph of even order >= 4, anchored at ``v``.

    Decomposes the subgraph into a perfect forest and emits an edge gadget
    per two-vertex tree and an anchored odd-tree reversal per larger tree;
    the tree containing ``v`` goes last (or first) so the whole word ends
    (or starts) with ``v``.  Total length is at most 4|s|-4.
    """
    s = frozenset(s)
    if v not in s:
        raise ValueError(f"anchor vertex {v} is not in the subgraph")
    if len(s) < 4 or len(s) % 2 == 1:
        raise ValueError(f"need an even vertex count >= 4, got {len(s)}")
    if not induced_connected(g, s):
        raise ValueError("induced subgraph must be connected")

    sub, ids = g.induced(s)
    forest = perfect_forest(sub)
    trees = [
        tuple(sorted((ids[a], ids[b]) for a, b in tree)) for tree in forest.trees
    ]
    anchor_tree = next(tr for tr in trees if any(v in e for e in tr))
    others = [tr for tr in trees if tr is not anchor_tree]
    ordered = others + [anchor_tree] if anchor == "end" else [anchor_tree] + others

    parts: list[int] = []
    for tree in ordered:
        tree_vertices = frozenset(x for e in tree for x in e)
        if len(tree) == 1:
            (a, b) = tree[0]
            if tree is anchor_tree:
                u = a if b == v else b
                letters = gadget_edge(v, u) if anchor == "start" else gadget_edge(u, v)
            else:
                letters = gadget_edge(a, b)
        else:
            root = v if tree is anchor_tree else min(tree_vertices)
            rt = RootedTree(tree_vertices, tree, root)
            letters = reverse_odd_tree(g, rt, root, anchor if tree is anchor_tree else "end").word
        parts.extend(letters)

    word = tuple(parts)
    return CertifiedWord(word, s, 4 * len(s) - 4, f"even-subgraph/{anchor}")


def reverse_odd_subgraph(g: Graph, s: Iterable[int]) -> CertifiedWord:
    """Flip a connected induced subgraph of odd order >= 5 within 4|s|-3 letters.

    Peels off the smallest vertex ``a`` whose removal keeps the subgraph
    connected, flips it with a triangle or induced-path gadget, and flips
    the even remainder with an anchored reversal; the shared anchor letter
    cancels, saving two letters.
    """
    s = frozenset(s)
    if len(s) < 5 or len(s) % 2 == 0:
        raise ValueError(f"need an odd vertex count >= 5, got {len(s)}")
    if not induced_connected(g, s):
        raise ValueError("induced subgraph must be connected")

    a = next(v for v in sorted(s) if induced_connected(g, s - {v}))
    smask = 0
    for v in s:
        smask |= 1 << v

    tri = _triangle_at(g, a, smask)
    if tri is not None:
        b, c = tri
        w1 = gadget_triangle(a, b, c)
        w2 = reverse_even_subgraph(g, s - {a}, c, "start").word
        assert w1[-1] == c == w2[0], "splice needs the shared anchor letter"
        word = w1[:-1] + w2[1:]
        tag = "odd-subgraph/triangle"
    else:
        p3 = _p3_end_at(g, a, smask)
        assert p3 is not None, "a non-cut vertex off every triangle ends an induced path"
        b, c = p3
        w1 = gadget_p3_end(a, b, c)
        w2 = reverse_even_subgraph(g, s - {a}, c, "end").word
        assert w2[-1] == c == w1[0], "splice needs the shared anchor letter"
        word = w2[:-1] + w1[1:]
        tag = "odd-subgraph/p3"
    return CertifiedWord(word, s, 4 * len(s) - 3, tag)


# -- whole-graph color reversal -------------------------------------------


def _reverse_component_word(g: Graph, comp: frozenset[int]) -> Word:
    m = len(comp)
    if m == 2:
        u, v = sorted(comp)
        return (u, v)
    if m == 3:
        p, q, r = sorted(comp)
        inner = [(x, y) for x, y in ((p, q), (p, r), (q, r)) if g.has_edge(x, y)]
        if len(inner) == 3:
            return (p, q, p, q, p, q, r, p, r)
        center = next(v for v in (p, q, r) if sum(1 for e in inner if v in e) == 2)
        a, c = sorted(comp - {center})
        b = center
        return (a, b, a, b, a, c, a, c, b)
    if m % 2 == 0:
        return reverse_even_subgraph(g, comp, min(comp), "end").word
    return reverse_odd_subgraph(g, comp).word


def color_reversal_word(g: Graph) -> CertifiedWord:
    """Word flipping every vertex of ``g`` and restoring ``g``.

    Per connected component: the two- and three-vertex base words, an even
    subgraph reversal, or an odd subgraph reversal.  The certified bound is
    4n-4 for a connected even-order graph, 4n-3 for odd order, and 4n-3t
    for t >= 2 components.  Isolated vertices make the task unsatisfiable.
    """
    for v in range(g.n):
        if g.rows[v] == 0:
            raise UnsatisfiableError(f"vertex {v} is isolated; its color is invariant")
    comps = components(g)
    parts: list[int] = []
    for comp in comps:
        parts.extend(_reverse_component_word(g, comp))
    if len(comps) <= 1:
        bound = 0 if g.n == 0 else (4 * g.n - 4 if g.n % 2 == 0 else 4 * g.n - 3)
    else:
        bound = 4 * g.n - 3 * len(comps)
    return CertifiedWord(tuple(parts), frozenset(range(g.n)), bound, "full-reversal")


# -- recoloring -------------------------------------------------------------


def _flip_set_word(g: Graph, s: frozenset[int]) -> Word:
    """Word flipping exactly ``s`` in ``g``, choosing cheap gadgets per shape.

    Components of the induced subgraph on ``s`` are flipped with the edge
    gadget (2 vertices), gadget compositions that stay valid inside the
    ambient graph (3 vertices), or even/odd subgraph reversals.  Vertices
    isolated in the induced subgraph are flipped singly, except that two
    such vertices sharing a common neighbor pair up into one 8-letter
    path-ends gadget whenever that is cheaper than two single flips.
    """
    parts: list[int] = []
    comps = components_within(g, s)
    isolates: list[int] = []
    for comp in comps:
        m = len(comp)
        if m == 1:
            isolates.append(min(comp))
            continue
        if all(g.rows[v] & ~_mask(comp) == 0 for v in comp):
            # the piece is a whole component of g, so the standalone
            # reversal words apply and are never longer
            parts.extend(_reverse_component_word(g, comp))
        elif m == 2:
            u, v = sorted(comp)
            parts.extend(gadget_edge(u, v))
        elif m == 3:
            p, q, r = sorted(comp)
            inner = [(x, y) for x, y in ((p, q), (p, r), (q, r)) if g.has_edge(x, y)]
            if len(inner) == 3:
                parts.extend(gadget_edge(p, q))
                parts.extend(gadget_triangle(r, p, q))
            else:
                center = next(
                    v for v in (p, q, r) if sum(1 for e in inner if v in e) == 2
                )
                a, b = sorted(comp - {center})
                parts.extend(gadget_p3_ends(a, b, center))
                word, _ = _single_flip_word(g, center)
                parts.extend(word)
        elif m % 2 == 0:
            parts.extend(reverse_even_subgraph(g, comp, min(comp), "end").word)
        else:
            parts.extend(reverse_odd_subgraph(g, comp).word)

    costly: list[tuple[int, Word]] = []
    for u in sorted(isolates):
        word, _ = _single_flip_word(g, u)
        if len(word) < 4:
            parts.extend(word)
        else:
            costly.append((u, word))
    # pair the expensive singles through a common neighbor: 8 letters beat 14
    remaining = costly
    while remaining:
        u, u_word = remaining[0]
        rest = remaining[1:]
        mate = None
        for idx, (v, _) in enumerate(rest):
            common = g.rows[u] & g.rows[v]
            if common:
                c = (common & -common).bit_length() - 1
                mate = (idx, v, c)
                break
        if mate is None:
            parts.extend(u_word)
            remaining = rest
        else:
            idx, v, c = mate
            parts.extend(gadget_p3_ends(u, v, c))
            remaining = rest[:idx] + rest[idx + 1 :]
    return tuple(parts)


def _transform_component(g: Graph, comp: frozenset[int], diff: frozenset[int]) -> tuple[Word, str]:
    fix = _flip_set_word(g, diff)
    if diff == comp:
        return fix, "fix-V1"
    alt = _flip_set_word(g, comp - diff) + _reverse_component_word(g, comp)
    if len(fix) <= len(alt):
        return fix, "fix-V1"
    return alt, "flip-V0-then-all"


def transform_word(g: Graph, from_colors: Sequence[int], to_colors: Sequence[int]) -> CertifiedWord:
    """Word turning the coloring ``from_colors`` into ``to_colors`` on ``g``.

    Per component, two strategies are realized and the shorter word wins:
    flip the disagreement set directly, or flip the agreement set and then
    reverse the whole component.  The certified bound is
    floor((11n-3)/2) for connected ``g`` and floor((11n-3t)/2) for t
    components; exceeding it raises :class:`BoundExceededError` with a
    witness rather than returning a broken certificate.
    """
    BicoloredGraph(g, tuple(from_colors))
    BicoloredGraph(g, tuple(to_colors))
    diff_all = frozenset(
        v for v in range(g.n) if from_colors[v] != to_colors[v]
    )
    for v in diff_all:
        if g.rows[v] == 0:
            raise UnsatisfiableError(f"vertex {v} is isolated but must change color")

    comps = components(g)
    parts: list[int] = []
    tags: set[str] = set()
    for comp in comps:
        diff = diff_all & comp
        if not diff:
            continue
        word, tag = _transform_component(g, comp, diff)
        parts.extend(word)
        tags.add(tag)

    t = max(len(comps), 1)
    bound = (11 * g.n - 3 * t) // 2 if g.n else 0
    strategy = tags.pop() if len(tags) == 1 else ("mixed" if tags else "fix-V1")
    word = tuple(parts)
    if len(word) > bound:
        raise BoundExceededError(
            f"transform word of length {len(word)} exceeds bound {bound}",
            witness={
                "n": g.n,
                "edges": g.edges(),
                "from": tuple(from_colors),
                "to": tuple(to_colors),
                "word": word,
            },
        )
    return CertifiedWord(word, diff_all, bound, f"transform/{strategy}")


# -- stars and complete graphs ----------------------------------------------


def _star_letters(n: int) -> list[int]:
    word = [1, 0, 1, 0, 1]
    for i in range(2, n):
        word += [i, 0, i]
    word.append(0)
    return word


def star_word(n: int) -> CertifiedWord:
    """Color-reversal word of length exactly 3n for the star on n vertices.

    Center is vertex 0; the word spends five letters on the first leaf,
    three on every further leaf, and one closing letter on the center.
    """
    if n < 2:
        raise ValueError(f"need at least 2 vertices, got {n}")
    word = tuple(_star_letters(n))
    assert len(word) == 3 * n
    return CertifiedWord(word, frozenset(range(n)), 3 * n, "star")


def complete_word(n: int) -> CertifiedWord:
    """Color-reversal word of length exactly 3n for the complete graph on n vertices.

    One inversion at vertex 0 turns the complete graph into a star centered
    there; the star word then reverses all colors, and a final inversion at
    0 would restore the complete graph but cancels against the star word's
    closing letter, so the emitted word drops both and keeps 3n letters.
    """
    if n < 2:
        raise ValueError(f"need at least 2 vertices, got {n}")
    word = tuple([0] + _star_letters(n)[:-1])
    assert len(word) == 3 * n
    return CertifiedWord(word, frozenset(range(n)), 3 * n, "complete")


# -- verification ------------------------------------------------------------


def verify_certificate(
    g: Graph,
    cw: CertifiedWord,
    *,
    extra_colorings: int = 16,
    seed: int = 0x5EED,
) -> None:
    """Replay ``cw.word`` and check it flips exactly ``cw.target_flip``.

    Checks the all-plus coloring and ``extra_colorings`` seeded random
    colorings; the flipped set is coloring-independent, so these replays
    guard implementation bugs rather than sampling error.  Raises
    :class:`VerificationError` on any mismatch.
    """
    if len(cw.word) > cw.bound:
        raise VerificationError(
            f"word length {len(cw.word)} exceeds certified bound {cw.bound}"
        )
    for v in cw.target_flip:
        if not (0 <= v < g.n):
            raise VerificationError(f"target vertex {v} outside 0..{g.n - 1}")
    rng = random.Random(seed)
    colorings = [all_plus(g.n)]
    for _ in range(extra_colorings):
        colorings.append(tuple(rng.choice((-1, 1)) for _ in range(g.n)))
    for coloring in colorings:
        before = BicoloredGraph(g, coloring)
        after = apply_word(before, cw.word)
        expected = flip(before, cw.target_flip)
        if after.graph != g:
            raise VerificationError(
                f"{cw.construction}: graph not restored under coloring {coloring}"
            )
        if after != expected:
            raise VerificationError(
                f"{cw.construction}: flipped set differs from target under coloring {coloring}"
            )


def certificate_holds(g: Graph, cw: CertifiedWord, **kwargs) -> bool:
    """Boolean form of :func:`verify_certificate`."""
    try:
        verify_certificate(g, cw, **kwargs)
    except VerificationError:
        return False
    return True
