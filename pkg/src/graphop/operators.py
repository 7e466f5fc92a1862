"""Finitely supported graph operators ``T = sum t_w L_w`` and their exact algebra."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .graph import GraphopError, ShadowedGraph
from .words import (
    Word,
    WordError,
    format_word,
    inverse,
    parse_word,
    product,
    range_,
    vertex,
    word_key,
)

EPS_ZERO = 1e-12
EPS_EQ = 1e-9


class MixedGraphError(GraphopError):
    pass


class OperatorFormatError(GraphopError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _check_coefficient(c: complex) -> complex:
    c = complex(c)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise GraphopError(f"coefficient must be finite, got {c!r}")
    return c


class GraphOperator:
    """An immutable finite linear combination of generators, bound to one graph.

    Terms with ``|t_w| <= eps_zero`` are dropped on construction and keys are
    kept in canonical ball order.
    """

    __slots__ = ("graph", "eps_zero", "_terms")

    def __init__(self, graph: ShadowedGraph, terms: Mapping[Word, complex] | Iterable[Tuple[Word, complex]] = (),
                 eps_zero: float = EPS_ZERO):
        acc: Dict[Word, complex] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            if w.is_empty:
                continue
            _check_membership(graph, w)
            acc[w] = acc.get(w, 0j) + _check_coefficient(c)
        ordered = sorted((w for w, c in acc.items() if abs(c) > eps_zero), key=lambda w: word_key(graph, w))
        self.graph = graph
        self.eps_zero = eps_zero
        self._terms = {w: acc[w] for w in ordered}

    @property
    def terms(self) -> Mapping[Word, complex]:
        return dict(self._terms)

    def __getitem__(self, w: Word) -> complex:
        return self._terms.get(w, 0j)

    def __iter__(self) -> Iterator[Tuple[Word, complex]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def support(self) -> Tuple[Word, ...]:
        return tuple(self._terms)

    def __repr__(self) -> str:
        body = " + ".join(f"({c:g})L[{format_word(w)}]" for w, c in self._terms.items()) or "0"
        return f"GraphOperator({body})"

    def __eq__(self, other):
        if not isinstance(other, GraphOperator):
            return NotImplemented
        return self.graph == other.graph and self._terms == other._terms

    __hash__ = None

    def __add__(self, other: "GraphOperator") -> "GraphOperator":
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other: "GraphOperator") -> "GraphOperator":
        return linear_combine([(1, self), (-1, other)])

    def __neg__(self) -> "GraphOperator":
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, GraphOperator):
            return op_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, a: complex) -> "GraphOperator":
        a = _check_coefficient(a)
        return GraphOperator(self.graph, {w: a * c for w, c in self._terms.items()}, self.eps_zero)

    def adjoint(self) -> "GraphOperator":
        return op_adjoint(self)

    def max_length(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def close_to(self, other: "GraphOperator", tol: float = EPS_EQ) -> bool:
        return max_difference(self, other) <= tol


def _check_membership(g: ShadowedGraph, w: Word) -> None:
    if w.is_vertex:
        if not g.has_vertex(w.start):
            raise WordError(f"vertex {w.start!r} is not in the graph")
        return
    prev = None
    for s in w.letters:
        if not g.has_edge(s.edge):
            raise WordError(f"edge {s.edge!r} is not in the graph")
        a, b = g.endpoints(s)
        if prev is not None and prev != a:
            raise WordError(f"word {format_word(w)!r} is not admissible")
        prev = b
    if g.initial(w.letters[0]) != w.start or g.terminal(w.letters[-1]) != w.end:
        raise WordError(f"word {format_word(w)!r} has inconsistent endpoints")


def _same_graph(ops: Sequence[GraphOperator]) -> ShadowedGraph:
    g = ops[0].graph
    for op in ops[1:]:
        if op.graph != g:
            raise MixedGraphError("operators are bound to different graphs")
    return g


def max_difference(a: GraphOperator, b: GraphOperator) -> float:
    _same_graph([a, b])
    keys = set(a._terms) | set(b._terms)
    return max((abs(a[w] - b[w]) for w in keys), default=0.0)


def linear_combine(pairs: Sequence[Tuple[complex, GraphOperator]]) -> GraphOperator:
    if not pairs:
        raise GraphopError("linear_combine needs at least one operator")
    g = _same_graph([op for _, op in pairs])
    acc: Dict[Word, complex] = {}
    for a, op in pairs:
        a = _check_coefficient(a)
        for w, c in op:
            acc[w] = acc.get(w, 0j) + a * c
    return GraphOperator(g, acc, pairs[0][1].eps_zero)


def op_multiply(t: GraphOperator, s: GraphOperator) -> GraphOperator:
    """Convolution: ``L_{w1} L_{w2} = L_{w1 w2}``, with empty products dropped."""
    g = _same_graph([t, s])
    acc: Dict[Word, complex] = {}
    for w1, c1 in t:
        for w2, c2 in s:
            w = product(w1, w2)
            if not w.is_empty:
                acc[w] = acc.get(w, 0j) + c1 * c2
    return GraphOperator(g, acc, t.eps_zero)


def op_adjoint(t: GraphOperator) -> GraphOperator:
    return GraphOperator(t.graph, {inverse(w): c.conjugate() for w, c in t}, t.eps_zero)


def identity_operator(g: ShadowedGraph, eps_zero: float = EPS_ZERO) -> GraphOperator:
    return GraphOperator(g, {vertex(v): 1.0 for v in g.vertices}, eps_zero)


def zero_operator(g: ShadowedGraph, eps_zero: float = EPS_ZERO) -> GraphOperator:
    return GraphOperator(g, {}, eps_zero)


def generator(g: ShadowedGraph, w: Word, coefficient: complex = 1.0) -> GraphOperator:
    return GraphOperator(g, {w: coefficient})


def diagonal_part(t: GraphOperator) -> GraphOperator:
    """Conditional expectation onto the vertex (diagonal) subalgebra."""
    return GraphOperator(t.graph, {w: c for w, c in t if w.is_vertex}, t.eps_zero)


def self_commutator(t: GraphOperator) -> GraphOperator:
    """``S(T) = T*T - TT*``."""
    ta = op_adjoint(t)
    return op_multiply(ta, t) - op_multiply(t, ta)


@dataclass(frozen=True)
class SupportProfile:
    supp: Tuple[Word, ...]
    supp_v: Tuple[Word, ...]
    supp_v_c: Tuple[Word, ...]
    pi_star_left: FrozenSet[Word]   # (Supp)^-1 (Supp) minus the empty element
    pi_star_right: FrozenSet[Word]  # (Supp) (Supp)^-1 minus the empty element
    r_left: FrozenSet[str]
    r_right: FrozenSet[str]


def support_profile(t: GraphOperator) -> SupportProfile:
    supp = t.support()
    left = set()
    right = set()
    for w1 in supp:
        for w2 in supp:
            a = product(inverse(w1), w2)
            if not a.is_empty:
                left.add(a)
            b = product(w1, inverse(w2))
            if not b.is_empty:
                right.add(b)
    return SupportProfile(
        supp=supp,
        supp_v=tuple(w for w in supp if w.is_vertex),
        supp_v_c=tuple(w for w in supp if w.is_path),
        pi_star_left=frozenset(left),
        pi_star_right=frozenset(right),
        r_left=frozenset(range_(w) for w in left),
        r_right=frozenset(range_(w) for w in right),
    )


def sorted_words(g: ShadowedGraph, words: Iterable[Word]) -> List[Word]:
    return sorted(words, key=lambda w: word_key(g, w))


def sorted_vertices(g: ShadowedGraph, vs: Iterable[str]) -> List[str]:
    return sorted(vs, key=g.vertex_index)


def fmt_real(x: float) -> str:
    x = float(x) + 0.0  # folds -0.0 into 0.0
    return format(x, ".17g")


def format_operator(t: GraphOperator) -> str:
    """Serialize in ``.gop`` syntax, one ``term`` line per support word in canonical order."""
    return "".join(f"term {fmt_real(c.real)} {fmt_real(c.imag)} {format_word(w)}\n" for w, c in t)


def parse_operator(g: ShadowedGraph, text: str, eps_zero: float = EPS_ZERO) -> GraphOperator:
    terms: List[Tuple[Word, complex]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 3)
        if len(parts) != 4 or parts[0] != "term":
            raise OperatorFormatError(f"malformed line: {raw.strip()!r}", lineno)
        try:
            c = complex(float(parts[1]), float(parts[2]))
        except ValueError:
            raise OperatorFormatError(f"bad coefficient in {raw.strip()!r}", lineno) from None
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise OperatorFormatError("coefficient must be finite", lineno)
        try:
            w = parse_word(g, parts[3])
        except WordError as exc:
            raise OperatorFormatError(str(exc), lineno) from None
        terms.append((w, c))
    return GraphOperator(g, terms, eps_zero)

