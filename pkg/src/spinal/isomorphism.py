"""Compatibility of boundary points, the explicit isomorphism phi, and
isomorphism deciders for finite rooted balls.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .algebra import ParameterError, SpinalGroup
from .boundary import ball
from .graph import GraphError, LabeledMultigraph, RootedGraph
from .words import (BoundaryPoint, Word, canonicalize, discrepancy, letter_at, prepend,
                    shift)

ISO_GUARD = 2000


@dataclass(frozen=True)
class BlockDecomposition:
    """xi = w_0 0 w_1 0 ... with zero-free blocks w_k.

    If ``tail`` is set, the blocks are ``pre`` followed by the single
    infinite zero-free block ``tail``; otherwise they are ``pre`` followed
    by ``per`` repeated forever.
    """

    pre: tuple[Word, ...]
    per: tuple[Word, ...]
    tail: Optional[BoundaryPoint] = None

    def block(self, k: int) -> Word | BoundaryPoint:
        if k < len(self.pre):
            return self.pre[k]
        if self.tail is not None:
            if k == len(self.pre):
                return self.tail
            raise IndexError(k)
        return self.per[(k - len(self.pre)) % len(self.per)]

    @property
    def finite(self) -> bool:
        """True when xi has infinitely many zeros."""
        return self.tail is None


def _split_zero_terminated(letters) -> tuple[Word, ...]:
    blocks, cur = [], []
    for x in letters:
        if x == 0:
            blocks.append(tuple(cur))
            cur = []
        else:
            cur.append(x)
    assert not cur
    return tuple(blocks)


def zero_blocks(xi: BoundaryPoint) -> BlockDecomposition:
    u, v = xi.u, xi.v
    if 0 not in v:
        if 0 not in u:
            return BlockDecomposition((), (), xi)
        last = len(u) - 1 - u[::-1].index(0)
        return BlockDecomposition(_split_zero_terminated(u[:last + 1]), (),
                                  canonicalize(u[last + 1:], v))
    # cut right after the first zero of the periodic part
    p = len(u) + v.index(0)
    head = xi.unrolled(p + 1)[:p + 1]
    rot = v.index(0) + 1
    period = v[rot:] + v[:rot]
    return BlockDecomposition(_split_zero_terminated(head), _split_zero_terminated(period))


def y_class(w, d: int) -> int:
    """Length of the maximal (d-1)-suffix of a zero-free word."""
    w = tuple(w)
    if 0 in w:
        raise ParameterError(f"{w} contains the letter 0")
    k = 0
    while k < len(w) and w[len(w) - 1 - k] == d - 1:
        k += 1
    return k


# Per-letter structure symbols: zero, letter inside the (d-1)-suffix of its
# block, other letter of a finite block, letter of the infinite block.
_ZERO, _SUFFIX, _BODY, _INF = 0, 1, 2, 3


def _encode_block(w: Word, d: int) -> tuple[int, ...]:
    k = y_class(w, d)
    return (_BODY,) * (len(w) - k) + (_SUFFIX,) * k + (_ZERO,)


def structure_word(xi: BoundaryPoint, d: int) -> BoundaryPoint:
    """Letterwise encoding of xi; two points are compatible iff encodings agree."""
    dec = zero_blocks(xi)
    head = tuple(itertools.chain.from_iterable(_encode_block(w, d) for w in dec.pre))
    if dec.tail is not None:
        return canonicalize(head, (_INF,))
    per = tuple(itertools.chain.from_iterable(_encode_block(w, d) for w in dec.per))
    return canonicalize(head, per)


@dataclass(frozen=True)
class CompatibilityVerdict:
    compatible: bool
    witness_index: Optional[int] = None     # block k of the first structural difference
    witness_position: Optional[int] = None  # letter index of that difference

    def __bool__(self) -> bool:
        return self.compatible

    def __str__(self) -> str:
        if self.compatible:
            return "compatible"
        return f"incompatible k={self.witness_index}"


def compatible(xi: BoundaryPoint, eta: BoundaryPoint, d: int) -> CompatibilityVerdict:
    ex, ee = structure_word(xi, d), structure_word(eta, d)
    if ex == ee:
        return CompatibilityVerdict(True)
    # canonical forms differ, so the words differ within this horizon
    horizon = max(len(ex.u), len(ee.u)) + len(ex.v) * len(ee.v)
    for n in range(horizon + 1):
        if letter_at(ex, n) != letter_at(ee, n):
            zeros_before = sum(1 for i in range(n) if letter_at(ex, i) == _ZERO)
            return CompatibilityVerdict(False, zeros_before, n)
    raise AssertionError("distinct canonical words agree on the horizon")


def phi(xi: BoundaryPoint, eta: BoundaryPoint, xi_prime: BoundaryPoint) -> BoundaryPoint:
    """The vertex map Gamma_xi -> Gamma_eta sending xi to eta."""
    if xi_prime == xi:
        return eta
    R = discrepancy(xi, xi_prime)
    if R is None:
        raise ParameterError(f"{xi_prime} is not cofinal with {xi}")
    a, b = letter_at(xi, R - 1), letter_at(eta, R - 1)
    x = letter_at(xi_prime, R - 1)
    swapped = b if x == a else a if x == b else x
    return prepend(xi_prime.prefix(R - 1) + (swapped,), shift(eta, R))


def _undirected_counter(g: LabeledMultigraph, relabel=None) -> Counter:
    vs = g.vertices
    f = relabel or (lambda p: p)
    out = Counter()
    for a, b, _ in g.edges:
        pa, pb = f(vs[a]), f(vs[b])
        out[frozenset((pa, pb))] += 1
    return out


def verify_phi_ball(group: SpinalGroup, xi: BoundaryPoint, eta: BoundaryPoint, r: int) -> bool:
    """phi maps ball(xi, r) onto ball(eta, r) preserving undirected adjacency with multiplicity."""
    if not compatible(xi, eta, group.d):
        raise ParameterError(f"{xi} and {eta} are not compatible")
    b1, b2 = ball(group, xi, r), ball(group, eta, r)
    image = {p: phi(xi, eta, p) for p in b1.graph.vertices}
    if len(set(image.values())) != len(image) or set(image.values()) != set(b2.graph.vertices):
        return False
    if image[b1.root_payload] != b2.root_payload:
        return False
    return _undirected_counter(b1.graph, image.get) == _undirected_counter(b2.graph)


# -- labeled rooted isomorphism ---------------------------------------------

def _label_maps(g: LabeledMultigraph):
    out = [dict() for _ in g.vertices]
    inn = [dict() for _ in g.vertices]
    for a, b, s in g.edges:
        if s in out[a]:
            raise GraphError(f"vertex {g.vertices[a]} has two out-edges labeled {s}")
        out[a][s] = b
        if s in inn[b]:
            raise GraphError(f"vertex {g.vertices[b]} has two in-edges labeled {s}")
        inn[b][s] = a
    return out, inn


def iso_labeled_rooted(g1: RootedGraph, g2: RootedGraph) -> Optional[dict[int, int]]:
    """The label-preserving root-preserving isomorphism, if any.

    Labels determine the map, so it is found by a parallel search from the
    roots; both graphs must be connected.
    """
    out1, in1 = _label_maps(g1.graph)
    out2, in2 = _label_maps(g2.graph)
    if len(g1.graph) != len(g2.graph) or len(g1.graph.edges) != len(g2.graph.edges):
        return None
    fwd = {g1.root: g2.root}
    bwd = {g2.root: g1.root}
    stack = [g1.root]
    while stack:
        u = stack.pop()
        v = fwd[u]
        for m1, m2 in ((out1, out2), (in1, in2)):
            if m1[u].keys() != m2[v].keys():
                return None
            for s, u2 in m1[u].items():
                v2 = m2[v][s]
                if u2 in fwd:
                    if fwd[u2] != v2:
                        return None
                    continue
                if v2 in bwd:
                    return None
                fwd[u2], bwd[v2] = v2, u2
                stack.append(u2)
    if len(fwd) != len(g1.graph):
        return None
    return fwd


# -- unlabeled rooted isomorphism (independent oracle) ----------------------

class _Multigraph:
    def __init__(self, g: LabeledMultigraph, root: int):
        n = len(g.vertices)
        self.n = n
        self.loops = [0] * n
        mult: list[Counter] = [Counter() for _ in range(n)]
        for a, b, _ in g.edges:
            if a == b:
                self.loops[a] += 1
            else:
                mult[a][b] += 1
                mult[b][a] += 1
        self.adj = [dict(c) for c in mult]
        dist = {root: 0}
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for w in self.adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        self.dist = [dist.get(v, -1) for v in range(n)]
        self.root = root


def _refine(graphs: list[_Multigraph], colors: list[list[int]]) -> list[list[int]]:
    """Colour refinement run jointly on several graphs so colours are comparable."""
    count = len(set(itertools.chain.from_iterable(colors)))
    while True:
        sigs = []
        for g, col in zip(graphs, colors):
            sigs.append([(col[v], tuple(sorted((col[w], k) for w, k in g.adj[v].items())))
                         for v in range(g.n)])
        table = {s: i for i, s in enumerate(sorted(set(itertools.chain.from_iterable(sigs))))}
        colors = [[table[s] for s in sig] for sig in sigs]
        # refinement only splits classes, so an unchanged count means stable
        if len(table) == count:
            return colors
        count = len(table)


def iso_unlabeled_rooted(g1: RootedGraph, g2: RootedGraph) -> Optional[dict[int, int]]:
    """A root-preserving isomorphism of the undirected, unlabeled multigraphs, if any.

    Edge multiplicities and loop counts are preserved.  Colour refinement
    seeded with (loop count, distance to root), then backtracking.
    """
    if max(len(g1), len(g2)) > ISO_GUARD:
        raise ParameterError(f"graphs exceed {ISO_GUARD} vertices")
    if len(g1) != len(g2) or len(g1.graph.edges) != len(g2.graph.edges):
        return None
    h1, h2 = _Multigraph(g1.graph, g1.root), _Multigraph(g2.graph, g2.root)
    seed = sorted({(h.loops[v], h.dist[v], v == h.root) for h in (h1, h2) for v in range(h.n)})
    table = {s: i for i, s in enumerate(seed)}
    colors = [[table[(h.loops[v], h.dist[v], v == h.root)] for v in range(h.n)] for h in (h1, h2)]
    return _search(h1, h2, colors)


def _search(h1: _Multigraph, h2: _Multigraph, colors) -> Optional[dict[int, int]]:
    c1, c2 = _refine([h1, h2], colors)
    if Counter(c1) != Counter(c2):
        return None
    # extend a partial map along BFS order from the root; any isomorphism
    # sends a vertex next to the image of its BFS parent
    order = sorted(range(h1.n), key=lambda v: h1.dist[v])
    if h1.dist[order[0]] != 0 or min(h1.dist) < 0:
        return None
    placed = set()
    parent = {}
    for u in order:
        for x in h1.adj[u]:
            if x in placed:
                parent[u] = x
                break
        placed.add(u)
    fwd: dict[int, int] = {}
    used: set[int] = set()
    iters: list = [None] * h1.n
    i = 0
    while 0 <= i < h1.n:
        u = order[i]
        if iters[i] is None:
            iters[i] = iter([h2.root] if i == 0 else list(h2.adj[fwd[parent[u]]]))
        else:
            used.discard(fwd.pop(u))
        for v in iters[i]:
            if v not in used and c2[v] == c1[u] and _consistent(h1, h2, fwd, used, u, v):
                fwd[u] = v
                used.add(v)
                i += 1
                break
        else:
            iters[i] = None
            i -= 1
    if i < 0:
        return None
    return fwd if _is_iso(h1, h2, fwd) else None


def _consistent(h1, h2, fwd, used, u, v) -> bool:
    if h1.loops[u] != h2.loops[v]:
        return False
    mapped = 0
    for x, k in h1.adj[u].items():
        if x in fwd:
            if h2.adj[v].get(fwd[x], 0) != k:
                return False
            mapped += 1
    return mapped == sum(1 for y in h2.adj[v] if y in used)


def _is_iso(h1: _Multigraph, h2: _Multigraph, mapping: dict[int, int]) -> bool:
    if mapping.get(h1.root) != h2.root:
        return False
    for v in range(h1.n):
        w = mapping[v]
        if h1.loops[v] != h2.loops[w]:
            return False
        if {mapping[x]: k for x, k in h1.adj[v].items()} != h2.adj[w]:
            return False
    return True


# -- unrooted corollary -----------------------------------------------------

@dataclass(frozen=True)
class WitnessResult:
    """Outcome of unrooted_witness.

    ``point`` is a compatible eta' in Cof(eta) if one was found.  When it
    is None, ``impossible`` says whether no witness can exist at all (the
    structure words of xi and eta are not cofinal) or the scan just ran
    out of horizon.
    """

    point: Optional[BoundaryPoint]
    impossible: bool = False

    def __str__(self) -> str:
        if self.point is not None:
            return f"witness {self.point}"
        return "none (certified)" if self.impossible else "none within horizon"


def unrooted_witness(group: SpinalGroup, xi: BoundaryPoint, eta: BoundaryPoint,
                     k_max: int) -> WitnessResult:
    """First eta' = w shift(eta, k), k ascending and w lexicographic, compatible with xi."""
    d = group.d
    if d ** k_max > 10**6:
        raise ParameterError("d^k_max exceeds 10^6")
    for k in range(k_max + 1):
        tail = shift(eta, k)
        for w in itertools.product(range(d), repeat=k):
            candidate = prepend(w, tail)
            if compatible(xi, candidate, d):
                return WitnessResult(candidate)
    ex, ee = structure_word(xi, d), structure_word(eta, d)
    impossible = discrepancy(ex, ee) is None
    return WitnessResult(None, impossible)
