"""Elements of the graph groupoid: vertices, reduced signed-edge paths, and the empty element."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .graph import IDENT, GraphopError, ShadowedGraph, SignedEdge


class WordError(GraphopError):
    pass


@dataclass(frozen=True)
class Word:
    """A groupoid element.

    A vertex has ``letters == ()`` and ``start == end``; a path has at least
    one letter. The empty element has no endpoints. Paths are always reduced
    and admissible when built through :func:`make_path` or :func:`product`.
    """

    start: Optional[str]
    end: Optional[str]
    letters: Tuple[SignedEdge, ...] = ()

    @property
    def is_empty(self) -> bool:
        return self.start is None

    @property
    def is_vertex(self) -> bool:
        return self.start is not None and not self.letters

    @property
    def is_path(self) -> bool:
        return bool(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)


EMPTY = Word(None, None)


def vertex(v: str) -> Word:
    return Word(v, v)


def source(w: Word) -> str:
    if w.is_empty:
        raise WordError("the empty element has no source")
    return w.start


def range_(w: Word) -> str:
    if w.is_empty:
        raise WordError("the empty element has no range")
    return w.end


def inverse(w: Word) -> Word:
    if not w.letters:
        return w
    return Word(w.end, w.start, tuple(s.twin() for s in reversed(w.letters)))


def _reduce_onto(stack: List[SignedEdge], letters: Iterable[SignedEdge]) -> None:
    # single left-to-right pass; only (s, twin(s)) pairs cancel, never (e, e)
    for s in letters:
        if stack and stack[-1] == s.twin():
            stack.pop()
        else:
            stack.append(s)


def product(w1: Word, w2: Word) -> Word:
    if w1.is_empty or w2.is_empty or w1.end != w2.start:
        return EMPTY
    if not w2.letters:
        return w1
    if not w1.letters:
        return w2
    stack = list(w1.letters)
    _reduce_onto(stack, w2.letters)
    if not stack:
        return vertex(w1.start)
    return Word(w1.start, w2.end, tuple(stack))


def make_path(g: ShadowedGraph, letters: Sequence[SignedEdge]) -> Word:
    """Build the reduced word of an admissible letter sequence, or EMPTY if inadmissible."""
    if not letters:
        raise WordError("a path needs at least one letter")
    for s in letters:
        if not g.has_edge(s.edge):
            raise WordError(f"unknown edge {s.edge!r}")
    for a, b in zip(letters, letters[1:]):
        if g.terminal(a) != g.initial(b):
            return EMPTY
    stack: List[SignedEdge] = []
    _reduce_onto(stack, letters)
    start, end = g.initial(letters[0]), g.terminal(letters[-1])
    if not stack:
        return vertex(start)
    return Word(start, end, tuple(stack))


def word_key(g: ShadowedGraph, w: Word) -> tuple:
    """Sort key of the canonical (ball) order."""
    if w.is_empty:
        raise WordError("the empty element has no position in the ball order")
    if w.is_vertex:
        return (0, g.vertex_index(w.start))
    return (len(w.letters), tuple(g.letter_key(s) for s in w.letters))


@dataclass(frozen=True)
class Ball:
    graph: ShadowedGraph
    radius: int
    words: Tuple[Word, ...]

    def index(self) -> dict:
        return {w: i for i, w in enumerate(self.words)}

    def __len__(self) -> int:
        return len(self.words)


def enumerate_ball(g: ShadowedGraph, n: int) -> Ball:
    """All non-empty reduced words of length <= n in canonical order."""
    if n < 0:
        raise WordError(f"ball radius must be nonnegative, got {n}")
    words: List[Word] = [vertex(v) for v in g.vertices]
    letters = list(g.signed_edges())
    layer = [Word(*g.endpoints(s), (s,)) for s in letters] if n >= 1 else []
    while layer:
        words.extend(layer)
        if len(layer[0].letters) >= n:
            break
        nxt = []
        # extending a lexicographically sorted layer letter-by-letter keeps it sorted
        for w in layer:
            last = w.letters[-1]
            for s in letters:
                a, b = g.endpoints(s)
                if a == w.end and s != last.twin():
                    nxt.append(Word(w.start, b, w.letters + (s,)))
        layer = nxt
    return Ball(g, n, tuple(words))


def format_word(w: Word) -> str:
    if w.is_empty:
        return "0"
    if w.is_vertex:
        return f"@{w.start}"
    return " ".join(str(s) for s in w.letters)


def parse_letter(token: str) -> SignedEdge:
    name, sep, power = token.partition("^")
    if sep and power != "-1":
        raise WordError(f"bad letter {token!r}: only '^-1' is allowed as an exponent")
    if not IDENT.match(name):
        raise WordError(f"bad letter {token!r}")
    return SignedEdge(name, -1 if sep else 1)


def parse_word(g: ShadowedGraph, text: str) -> Word:
    """Parse ``@v`` or whitespace-separated letters ``e`` / ``e^-1``; the result is reduced."""
    text = text.strip()
    if text.startswith("@"):
        name = text[1:]
        if not g.has_vertex(name):
            raise WordError(f"unknown vertex {name!r}")
        return vertex(name)
    tokens = text.split()
    if not tokens:
        raise WordError("empty word text")
    w = make_path(g, [parse_letter(t) for t in tokens])
    if w.is_empty:
        raise WordError(f"inadmissible word {text!r}")
    return w
