"""Labeled multigraphs, the Star construction and the level graphs Gamma_n."""

from __future__ import annotations

import itertools
import json
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional, Union

from .action import GeneratorLabel, RotA, SpinalB, act, parse_label
from .algebra import GUARD, Epimorphism, ParameterError, Params, SpinalGroup, eval_epi
from .words import BoundaryPoint, format_point, format_word, parse_point, parse_word

Edge = tuple[int, int, GeneratorLabel]


class GraphError(ParameterError):
    pass


@dataclass(frozen=True)
class LabeledMultigraph:
    """Directed multigraph; vertices carry payloads, edges carry generator labels.

    Loops and parallel edges are allowed.  Payloads must be unique.
    """

    d: int
    m: int
    vertices: tuple
    edges: tuple[Edge, ...]

    def __post_init__(self):
        n = len(self.vertices)
        for src, dst, _ in self.edges:
            if not (0 <= src < n and 0 <= dst < n):
                raise GraphError(f"edge ({src}, {dst}) out of range")

    @cached_property
    def index(self) -> dict:
        idx = {p: i for i, p in enumerate(self.vertices)}
        if len(idx) != len(self.vertices):
            raise GraphError("duplicate vertex payloads")
        return idx

    def index_of(self, payload) -> int:
        return self.index[payload]

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def out_edges(self) -> list[list[tuple[int, GeneratorLabel]]]:
        out = [[] for _ in self.vertices]
        for src, dst, s in self.edges:
            out[src].append((dst, s))
        return out

    @cached_property
    def in_edges(self) -> list[list[tuple[int, GeneratorLabel]]]:
        inn = [[] for _ in self.vertices]
        for src, dst, s in self.edges:
            inn[dst].append((src, s))
        return inn

    @cached_property
    def neighbors(self) -> list[set[int]]:
        """Undirected simple support, loops dropped."""
        nb = [set() for _ in self.vertices]
        for src, dst, _ in self.edges:
            if src != dst:
                nb[src].add(dst)
                nb[dst].add(src)
        return nb

    def loops_at(self, v: int) -> list[GeneratorLabel]:
        return [s for dst, s in self.out_edges[v] if dst == v]

    def edge_counter(self) -> Counter:
        """Multiset of (src payload, dst payload, label)."""
        vs = self.vertices
        return Counter((vs[a], vs[b], s) for a, b, s in self.edges)

    def without_loops_at(self, vs: Iterable[int]) -> "LabeledMultigraph":
        drop = set(vs)
        edges = tuple(e for e in self.edges if not (e[0] == e[1] and e[0] in drop))
        return LabeledMultigraph(self.d, self.m, self.vertices, edges)

    def induced(self, keep: Iterable[int]) -> tuple["LabeledMultigraph", dict[int, int]]:
        keep = sorted(set(keep))
        new = {old: i for i, old in enumerate(keep)}
        edges = tuple((new[a], new[b], s) for a, b, s in self.edges if a in new and b in new)
        return LabeledMultigraph(self.d, self.m, tuple(self.vertices[i] for i in keep), edges), new

    def relabel(self, f: Callable) -> "LabeledMultigraph":
        return LabeledMultigraph(self.d, self.m, tuple(f(p) for p in self.vertices), self.edges)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        return len(bfs_distances(self, 0)) == len(self.vertices)


@dataclass(frozen=True)
class RootedGraph:
    graph: LabeledMultigraph
    root: int

    def __post_init__(self):
        if not 0 <= self.root < len(self.graph.vertices):
            raise GraphError(f"root {self.root} out of range")

    @property
    def root_payload(self):
        return self.graph.vertices[self.root]

    @cached_property
    def distances(self) -> dict[int, int]:
        return bfs_distances(self.graph, self.root)

    def restrict(self, radius: int) -> "RootedGraph":
        """Induced subgraph on the vertices within `radius` of the root."""
        keep = [v for v, r in self.distances.items() if r <= radius]
        sub, new = self.graph.induced(keep)
        return RootedGraph(sub, new[self.root])

    def __len__(self) -> int:
        return len(self.graph)


def bfs_distances(g: LabeledMultigraph, source: Union[int, Iterable[int]],
                  limit: Optional[int] = None) -> dict[int, int]:
    sources = [source] if isinstance(source, int) else list(source)
    dist = {s: 0 for s in sources}
    queue = deque(sources)
    while queue:
        v = queue.popleft()
        if limit is not None and dist[v] >= limit:
            continue
        for w in g.neighbors[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


# -- building blocks --------------------------------------------------------

def block_xi(params: Params) -> LabeledMultigraph:
    edges = tuple((0, 0, SpinalB(b)) for b in params.nonzero_elements())
    return LabeledMultigraph(params.d, params.m, ((),), edges)


def block_theta(params: Params) -> LabeledMultigraph:
    d = params.d
    edges = tuple((i, (i + j) % d, RotA(j)) for i in range(d) for j in range(1, d))
    return LabeledMultigraph(d, params.m, tuple((i,) for i in range(d)), edges)


def block_lambda(params: Params, pi: Epimorphism) -> LabeledMultigraph:
    d = params.d
    if pi.d != d or pi.m != params.m:
        raise ParameterError(f"epimorphism {pi} does not match {params}")
    edges = tuple((i, (i + eval_epi(pi, b)) % d, SpinalB(b))
                  for i in range(d) for b in params.nonzero_elements())
    return LabeledMultigraph(d, params.m, tuple((i,) for i in range(d)), edges)


def block(kind: str, params: Params, pi: Optional[Epimorphism] = None) -> LabeledMultigraph:
    key = kind.lower()
    if key == "xi":
        return block_xi(params)
    if key == "theta":
        return block_theta(params)
    if key == "lambda":
        if pi is None:
            raise ParameterError("Lambda needs an epimorphism")
        return block_lambda(params, pi)
    raise ParameterError(f"unknown block {kind!r}")


def star(lam: LabeledMultigraph, gamma: LabeledMultigraph, v) -> LabeledMultigraph:
    """d loop-stripped copies of gamma, copy i glued to lam's vertex i at v.

    ``v`` is a vertex index or payload of gamma.  Copy i relabels w as w + (i,).
    """
    d = len(lam.vertices)
    if d != lam.d:
        raise GraphError(f"Lambda must have exactly d={lam.d} vertices, has {d}")
    vi = v if isinstance(v, int) else gamma.index_of(tuple(v))
    n = len(gamma.vertices)
    stripped = [e for e in gamma.edges if not (e[0] == e[1] == vi)]
    vertices = tuple(tuple(w) + (i,) for i in range(d) for w in gamma.vertices)
    edges = [(i * n + a, i * n + b, s) for i in range(d) for a, b, s in stripped]
    edges += [(a * n + vi, b * n + vi, s) for a, b, s in lam.edges]
    return LabeledMultigraph(lam.d, gamma.m, vertices, tuple(edges))


# -- level graphs -----------------------------------------------------------

def _level_guard(group: SpinalGroup, n: int) -> None:
    if n < 1:
        raise ParameterError("level must be >= 1")
    if group.d ** n > GUARD:
        raise ParameterError(f"d^n = {group.d}^{n} exceeds {GUARD}")


def gamma_direct(group: SpinalGroup, n: int) -> LabeledMultigraph:
    """Schreier graph of the action on X^n, one edge per vertex and generator."""
    _level_guard(group, n)
    vertices = tuple(itertools.product(range(group.d), repeat=n))
    index = {w: i for i, w in enumerate(vertices)}
    edges = tuple((i, index[act(s, group, w)], s)
                  for i, w in enumerate(vertices) for s in group.generators)
    return LabeledMultigraph(group.d, group.m, vertices, edges)


def gamma_one(group: SpinalGroup) -> LabeledMultigraph:
    """Theta with one loop per nonzero b at every vertex.

    Star(Theta, Xi, root) taken literally would strip Xi's loops; every
    vertex of level 1 is fixed by B, so the loops are put back here.
    """
    theta = block_theta(group.params)
    loops = tuple((i, i, SpinalB(b)) for i in range(group.d)
                  for b in group.params.nonzero_elements())
    return LabeledMultigraph(group.d, group.m, theta.vertices, theta.edges + loops)


def gamma_recursive(group: SpinalGroup, n: int) -> LabeledMultigraph:
    _level_guard(group, n)
    g = gamma_one(group)
    top = group.d - 1
    for k in range(2, n + 1):
        lam = block_lambda(group.params, group.omega[k - 2])
        g = star(lam, g, (top,) * (k - 2) + (0,))
    return g


def gamma_prime(group: SpinalGroup, n: int, fixed_tail: bool) -> LabeledMultigraph:
    """Gamma_n without loops at (d-1)^(n-1) 0, and at (d-1)^n unless fixed_tail."""
    g = gamma_direct(group, n)
    top = group.d - 1
    drop = [g.index_of((top,) * (n - 1) + (0,))]
    if not fixed_tail:
        drop.append(g.index_of((top,) * n))
    return g.without_loops_at(drop)


def diameter(g: LabeledMultigraph) -> int:
    best = 0
    for v in range(len(g.vertices)):
        dist = bfs_distances(g, v)
        if len(dist) != len(g.vertices):
            raise GraphError("graph is disconnected")
        best = max(best, max(dist.values()))
    return best


def equal_labeled(g1: LabeledMultigraph, g2: LabeledMultigraph) -> bool:
    """Same payload set and identical multisets of labeled directed edges."""
    if len(g1.vertices) != len(g2.vertices) or set(g1.vertices) != set(g2.vertices):
        return False
    return g1.edge_counter() == g2.edge_counter()


# -- serialization ----------------------------------------------------------

def format_payload(p, d: int) -> str:
    if isinstance(p, BoundaryPoint):
        return format_point(p, d)
    if isinstance(p, tuple) and len(p) == 2 and isinstance(p[0], BoundaryPoint):
        return f"{format_point(p[0], d)}:{p[1]}"
    if isinstance(p, tuple):
        return format_word(p, d)
    return str(p)


def parse_payload(text: str, d: int):
    if ":" in text:
        point, i = text.rsplit(":", 1)
        return (parse_point(point, d), int(i))
    if "(" in text:
        return parse_point(text, d)
    return parse_word(text, d)


def _unpack(g):
    if isinstance(g, RootedGraph):
        return g.graph, g.root
    return g, None


def to_json_data(g: Union[LabeledMultigraph, RootedGraph]) -> dict:
    graph, root = _unpack(g)
    return {
        "d": graph.d,
        "m": graph.m,
        "vertices": [{"id": i, "word": format_payload(p, graph.d)}
                     for i, p in enumerate(graph.vertices)],
        "edges": [{"src": a, "dst": b, "label": str(s)} for a, b, s in graph.edges],
        "root": root,
    }


def to_dot(g: Union[LabeledMultigraph, RootedGraph], name: str = "G") -> str:
    graph, root = _unpack(g)
    lines = [f'digraph "{name}" {{']
    for i, p in enumerate(graph.vertices):
        attrs = f'label="{format_payload(p, graph.d)}"'
        if i == root:
            attrs += ", shape=doublecircle"
        lines.append(f"  n{i} [{attrs}];")
    for a, b, s in graph.edges:
        lines.append(f'  n{a} -> n{b} [label="{s}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(g: Union[LabeledMultigraph, RootedGraph], fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(to_json_data(g), indent=1) + "\n").encode()
    if fmt == "dot":
        return to_dot(g).encode()
    raise ParameterError(f"unknown export format {fmt!r}")


def import_json(data: Union[bytes, str, dict]) -> Union[LabeledMultigraph, RootedGraph]:
    if not isinstance(data, dict):
        data = json.loads(data)
    d, m = int(data["d"]), int(data["m"])
    verts = sorted(data["vertices"], key=lambda v: v["id"])
    if [v["id"] for v in verts] != list(range(len(verts))):
        raise GraphError("vertex ids must be 0..n-1")
    vertices = tuple(parse_payload(v["word"], d) for v in verts)
    edges = tuple((int(e["src"]), int(e["dst"]), parse_label(e["label"])) for e in data["edges"])
    graph = LabeledMultigraph(d, m, vertices, edges)
    if data.get("root") is None:
        return graph
    return RootedGraph(graph, int(data["root"]))
