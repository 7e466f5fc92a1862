"""Finite directed graphs and their shadowed (orientation-doubled) versions."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, NamedTuple, Tuple

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class GraphopError(ValueError):
    """Base class for user-facing validation errors (bad files, bad words, mixed graphs)."""


class GraphFormatError(GraphopError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Edge(NamedTuple):
    name: str
    source: str
    target: str


class SignedEdge(NamedTuple):
    """A letter of the shadowed graph: ``orientation == -1`` is the shadow ``e^-1``."""

    edge: str
    orientation: int = 1

    def twin(self) -> "SignedEdge":
        return SignedEdge(self.edge, -self.orientation)

    def __str__(self) -> str:
        return self.edge if self.orientation == 1 else f"{self.edge}^-1"


@dataclass(frozen=True)
class DirectedGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if not self.vertices:
            raise GraphFormatError("graph has no vertices")
        seen = set()
        for name in self.vertices + tuple(e.name for e in self.edges):
            if not IDENT.match(name):
                raise GraphFormatError(f"invalid identifier {name!r}")
            if name in seen:
                raise GraphFormatError(f"duplicate id {name!r}")
            seen.add(name)
        vs = set(self.vertices)
        for e in self.edges:
            for end in (e.source, e.target):
                if end not in vs:
                    raise GraphFormatError(f"unknown endpoint {end!r} of edge {e.name!r}")


@dataclass(frozen=True)
class ShadowedGraph:
    """``G`` together with the reversed twin of every edge.

    Vertex and edge declaration order is the canonical order used for balls,
    matrices and serialization.
    """

    base: DirectedGraph
    _vertex_index: Dict[str, int] = field(init=False, repr=False, compare=False)
    _edges: Dict[str, Edge] = field(init=False, repr=False, compare=False)
    _edge_index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_vertex_index", {v: i for i, v in enumerate(self.base.vertices)})
        object.__setattr__(self, "_edges", {e.name: e for e in self.base.edges})
        object.__setattr__(self, "_edge_index", {e.name: i for i, e in enumerate(self.base.edges)})

    def __hash__(self):
        return hash(self.base)

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.base.vertices

    def signed_edges(self) -> Iterator[SignedEdge]:
        """All letters in canonical order: by edge declaration index, ``+1`` before ``-1``."""
        for e in self.base.edges:
            yield SignedEdge(e.name, 1)
            yield SignedEdge(e.name, -1)

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_index

    def has_edge(self, e: str) -> bool:
        return e in self._edges

    def endpoints(self, s: SignedEdge) -> Tuple[str, str]:
        e = self._edges[s.edge]
        return (e.source, e.target) if s.orientation == 1 else (e.target, e.source)

    def initial(self, s: SignedEdge) -> str:
        return self.endpoints(s)[0]

    def terminal(self, s: SignedEdge) -> str:
        return self.endpoints(s)[1]

    def vertex_index(self, v: str) -> int:
        return self._vertex_index[v]

    def letter_key(self, s: SignedEdge) -> Tuple[int, int]:
        return (self._edge_index[s.edge], 0 if s.orientation == 1 else 1)


def shadow(g: DirectedGraph) -> ShadowedGraph:
    return ShadowedGraph(g)


def build_one_vertex_graph(n: int, vertex: str = "v_O") -> DirectedGraph:
    """The graph ``O_n``: one vertex carrying ``n`` loops ``e1 .. en``."""
    if n < 1:
        raise GraphopError(f"one-vertex graph needs at least one loop, got N={n}")
    return DirectedGraph((vertex,), tuple(Edge(f"e{i}", vertex, vertex) for i in range(1, n + 1)))


def parse_graph(text: str) -> DirectedGraph:
    """Parse the line-oriented ``.gg`` format.

    ``vertex <id>`` and ``edge <id> <from> -> <to>`` lines, ``#`` comments.
    Edges may reference vertices declared later in the file.
    """
    vertices: list[tuple[str, int]] = []
    edges: list[tuple[Edge, int]] = []
    ids: dict[str, int] = {}

    def declare(name: str, lineno: int):
        if not IDENT.match(name):
            raise GraphFormatError(f"invalid identifier {name!r}", lineno)
        if name in ids:
            raise GraphFormatError(f"duplicate id {name!r} (first declared on line {ids[name]})", lineno)
        ids[name] = lineno

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            declare(parts[1], lineno)
            vertices.append((parts[1], lineno))
        elif parts[0] == "edge" and len(parts) == 5 and parts[3] == "->":
            declare(parts[1], lineno)
            edges.append((Edge(parts[1], parts[2], parts[4]), lineno))
        else:
            raise GraphFormatError(f"malformed line: {raw.strip()!r}", lineno)

    if not vertices:
        raise GraphFormatError("empty vertex set")
    vs = {v for v, _ in vertices}
    for e, lineno in edges:
        for end in (e.source, e.target):
            if end not in vs:
                raise GraphFormatError(f"unknown endpoint {end!r} of edge {e.name!r}", lineno)
    return DirectedGraph(tuple(v for v, _ in vertices), tuple(e for e, _ in edges))


def format_graph(g: DirectedGraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.name} {e.source} -> {e.target}" for e in g.edges]
    return "\n".join(lines) + "\n"
