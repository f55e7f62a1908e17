"""Finite pieces of the orbital Schreier graphs Gamma_xi of boundary points.

Balls are always built by breadth-first search over the orbit; the
Delta/Lambda block structure is computed separately and checked against
the balls.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from typing import Optional

from .action import RotA, SpinalB, act, fixed_by_B, spine
from .algebra import GUARD, Epimorphism, ParameterError, SpinalGroup, eval_epi
from .graph import LabeledMultigraph, RootedGraph
from .words import BoundaryPoint, is_cofinal_with_constant, prepend, shift


class EndsClass(enum.IntEnum):
    ONE = 1
    TWO = 2


def _bfs(root, neighbors_of, radius: int, d: int, m: int) -> RootedGraph:
    """Generic labeled BFS ball; neighbors_of(v) yields (label, target)."""
    dist = {root: 0}
    order = [root]
    out = {}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        nbrs = list(neighbors_of(v))
        out[v] = nbrs
        if dist[v] == radius:
            continue
        for _, t in nbrs:
            if t not in dist:
                dist[t] = dist[v] + 1
                order.append(t)
                if len(order) > GUARD:
                    raise ParameterError(f"ball exceeds {GUARD} vertices")
                queue.append(t)
    index = {v: i for i, v in enumerate(order)}
    edges = tuple((index[v], index[t], s) for v in order for s, t in out[v] if t in index)
    return RootedGraph(LabeledMultigraph(d, m, tuple(order), edges), 0)


def ball(group: SpinalGroup, xi: BoundaryPoint, r: int) -> RootedGraph:
    """Vertices of Gamma_xi within distance r of xi, with every generator edge between them."""
    if r < 0:
        raise ParameterError("radius must be >= 0")
    gens = group.generators

    def neighbors_of(v):
        return [(s, act(s, group, v)) for s in gens]

    return _bfs(xi, neighbors_of, r, group.d, group.m)


def _induced_on(group: SpinalGroup, vertices: list, root) -> RootedGraph:
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for v in vertices:
        for s in group.generators:
            t = act(s, group, v)
            if t in index:
                edges.append((index[v], index[t], s))
    g = LabeledMultigraph(group.d, group.m, tuple(vertices), tuple(edges))
    return RootedGraph(g, index[root])


def delta(group: SpinalGroup, xi: BoundaryPoint, n: int) -> RootedGraph:
    """The copy X^n shift(xi, n) of Gamma_n inside Gamma_xi, rooted at xi."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    if group.d ** n > GUARD:
        raise ParameterError(f"d^n exceeds {GUARD}")
    d, top = group.d, group.d - 1
    tail = shift(xi, n)
    vertices = [prepend(w, tail) for w in itertools.product(range(d), repeat=n)]
    rooted = _induced_on(group, vertices, xi)
    g = rooted.graph
    drop = [g.index_of(prepend((top,) * (n - 1) + (0,), tail))]
    if not fixed_by_B(tail, group):
        drop.append(g.index_of(prepend((top,) * n, tail)))
    return RootedGraph(g.without_loops_at(drop), rooted.root)


def lambda_vertices(group: SpinalGroup, xi: BoundaryPoint, n: int) -> list[BoundaryPoint]:
    tail = shift(xi, n + 2)
    head = (group.d - 1,) * n + (0,)
    return [prepend(head + (i,), tail) for i in range(group.d)]


def lambda_sub(group: SpinalGroup, xi: BoundaryPoint, n: int) -> LabeledMultigraph:
    """The d-vertex block (d-1)^n 0 X shift(xi, n+2) with its B-edges, loops included."""
    if n < 0:
        raise ParameterError("n must be >= 0")
    vertices = lambda_vertices(group, xi, n)
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for v in vertices:
        for s in group.generators:
            if isinstance(s, SpinalB):
                edges.append((index[v], index[act(s, group, v)], s))
    return LabeledMultigraph(group.d, group.m, tuple(vertices), tuple(edges))


def multi_source_ball(group: SpinalGroup, sources, radius: int) -> set:
    """Union of the balls of the given radius around each source."""
    dist = {v: 0 for v in sources}
    queue = deque(dist)
    while queue:
        v = queue.popleft()
        if dist[v] == radius:
            continue
        for s in group.generators:
            t = act(s, group, v)
            if t not in dist:
                dist[t] = dist[v] + 1
                queue.append(t)
    return set(dist)


def verify_ball_identities(group: SpinalGroup, xi: BoundaryPoint, n: int) -> bool:
    """Balls around Lambda_xi^n: radius 2^(n+1)-1 covers exactly Delta_xi^(n+2);
    radius 2^k-1 covers exactly X^k (d-1)^(n-k) 0 X shift(xi, n+2) for k <= n."""
    if n < 0:
        raise ParameterError("n must be >= 0")
    if group.d ** (n + 2) > GUARD:
        raise ParameterError(f"d^(n+2) exceeds {GUARD}")
    d, top = group.d, group.d - 1
    lam = lambda_vertices(group, xi, n)
    tail = shift(xi, n + 2)
    expected = {prepend(w, tail) for w in itertools.product(range(d), repeat=n + 2)}
    if multi_source_ball(group, lam, 2 ** (n + 1) - 1) != expected:
        return False
    for k in range(n + 1):
        expected = {prepend(w + (top,) * (n - k) + (0, i), tail)
                    for w in itertools.product(range(d), repeat=k) for i in range(d)}
        if multi_source_ball(group, lam, 2 ** k - 1) != expected:
            return False
    return True


def ends_class(group: SpinalGroup, xi: BoundaryPoint) -> EndsClass:
    """Two ends iff the periodic tail lies in {0, d-1} and xi is not cofinal with (d-1)^oo."""
    top = group.d - 1
    if is_cofinal_with_constant(xi, top):
        return EndsClass.ONE
    if set(xi.v) <= {0, top}:
        return EndsClass.TWO
    return EndsClass.ONE


def annulus_components(group: SpinalGroup, xi: BoundaryPoint, r: int, R: int) -> int:
    """Components of ball(R) minus ball(r) that reach the sphere of radius R."""
    if not 0 <= r < R:
        raise ParameterError("need 0 <= r < R")
    return _annulus_in(ball(group, xi, R), r, R)


def _annulus_in(rooted: RootedGraph, r: int, R: int) -> int:
    g, dist = rooted.graph, rooted.distances
    outer = {v for v, k in dist.items() if r < k <= R}
    seen: set[int] = set()
    count = 0
    for v in outer:
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in g.neighbors[x]:
                if y in outer and y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        if any(dist[x] == R for x in comp):
            count += 1
    return count


def stabilized_annulus(group: SpinalGroup, xi: BoundaryPoint, r: int,
                       gap: int = 8, doublings: int = 2) -> Optional[int]:
    """The annulus count at large R, or None if it is still moving.

    Finite branches hanging off ball(r) have diameter of order
    2^(|u|+|v|) for xi = u(v), so R starts at hi = max(r + 2 gap,
    2^(|u|+|v|+2)) and the count must be constant on [max(r+gap, hi/2), hi].
    If it is not, hi is doubled (at most ``doublings`` times).
    """
    hi = max(r + 2 * gap, 2 ** (len(xi.u) + len(xi.v) + 2))
    for _ in range(doublings + 1):
        rooted = ball(group, xi, hi)
        counts = {_annulus_in(rooted, r, R) for R in range(max(r + gap, hi // 2), hi + 1)}
        if len(counts) == 1:
            return counts.pop()
        hi *= 2
    return None


def sch_continuous_at(group: SpinalGroup, xi: BoundaryPoint) -> bool:
    return not is_cofinal_with_constant(xi, group.d - 1)


def check_limit_hypothesis(group: SpinalGroup, pi: Epimorphism) -> None:
    if group.d == 2 and group.m == 1:
        raise ParameterError("limit graphs need d >= 3 or m >= 2 (the dihedral group is excluded)")
    if pi not in group.omega.period:
        raise ParameterError(f"epimorphism {pi} does not recur in omega")


def limit_ball(group: SpinalGroup, pi: Epimorphism, r: int) -> RootedGraph:
    """Ball of radius r around (spine, 0) in the d-fold cover glued along Lambda_pi.

    Vertices are pairs (point cofinal with the spine, i in X).
    """
    check_limit_hypothesis(group, pi)
    d = group.d
    sp = spine(d)
    gens = group.generators

    def neighbors_of(v):
        point, i = v
        if point != sp:
            return [(s, (act(s, group, point), i)) for s in gens]
        out = []
        for s in gens:
            if isinstance(s, RotA):
                out.append((s, (act(s, group, point), i)))
            else:
                out.append((s, (sp, (i + eval_epi(pi, s.b)) % d)))
        return out

    return _bfs((sp, 0), neighbors_of, r, group.d, group.m)


def reroot(rooted: RootedGraph, payload) -> RootedGraph:
    return RootedGraph(rooted.graph, rooted.graph.index_of(payload))
