"""Finite matrix truncations on ball bases and self-commutator spectra."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .graph import GraphopError
from .operators import GraphOperator, fmt_real, self_commutator
from .words import Ball, Word, WordError, enumerate_ball, format_word, product

ASYMMETRY_TOL = 1e-10


class NumericError(RuntimeError):
    """Eigensolver or consistency failure; never turned into a verdict."""


@dataclass(frozen=True)
class TruncatedMatrix:
    labels: Tuple[str, ...]
    entries: np.ndarray
    ball: Optional[Ball] = None

    def to_csv(self) -> str:
        return matrix_csv(self.labels, self.entries)


@dataclass(frozen=True)
class SpectralLevel:
    n: int
    dim: int
    lambda_min: float


@dataclass(frozen=True)
class SpectralTrace:
    levels: Tuple[SpectralLevel, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "dim", "lambda_min"])
        for lv in self.levels:
            w.writerow([lv.n, lv.dim, fmt_real(lv.lambda_min)])
        return buf.getvalue()


def _labels(ball: Ball) -> Tuple[str, ...]:
    return tuple(format_word(w) for w in ball.words)


def _fill(ball: Ball, terms: Sequence[Tuple[Word, complex]]) -> np.ndarray:
    # <L_u xi_x, xi_y> = [r(u) = s(x)] [u x = y]; products leaving the ball are truncated
    index = ball.index()
    m = np.zeros((len(ball), len(ball)), dtype=complex)
    for col, x in enumerate(ball.words):
        for u, c in terms:
            if u.end != x.start:
                continue
            row = index.get(product(u, x))
            if row is not None:
                m[row, col] += c
    return m


def generator_matrix(w: Word, ball: Ball) -> TruncatedMatrix:
    if w.is_empty:
        raise WordError("the empty element has no generator")
    return TruncatedMatrix(_labels(ball), _fill(ball, [(w, 1.0)]), ball)


def operator_matrix(t: GraphOperator, ball: Ball) -> TruncatedMatrix:
    if t.graph != ball.graph:
        raise GraphopError("operator and ball belong to different graphs")
    return TruncatedMatrix(_labels(ball), _fill(ball, list(t)), ball)


def min_eigenvalue(h: np.ndarray) -> float:
    if h.size == 0:
        return 0.0
    try:
        return float(np.linalg.eigvalsh(h)[0])
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver failed: {exc}") from exc


def commutator_gram(t: GraphOperator, n: int, commutator: GraphOperator | None = None):
    """Gram matrix of ``S(T)`` on ``Ball(n)`` and its smallest eigenvalue.

    Entries come from the symbolic self-commutator, so each one is exact up to
    the coefficient arithmetic.
    """
    if n < 0:
        raise GraphopError(f"radius must be nonnegative, got {n}")
    s = self_commutator(t) if commutator is None else commutator
    ball = enumerate_ball(t.graph, n)
    g = _fill(ball, list(s))
    asym = float(np.max(np.abs(g - g.conj().T))) if g.size else 0.0
    if asym > ASYMMETRY_TOL:
        raise NumericError(f"self-commutator Gram matrix is not Hermitian (asymmetry {asym:.3g})")
    g = (g + g.conj().T) / 2
    return g, min_eigenvalue(g)


def spectral_trace(t: GraphOperator, n_max: int) -> SpectralTrace:
    if n_max < 0:
        raise GraphopError(f"n_max must be nonnegative, got {n_max}")
    s = self_commutator(t)
    levels = []
    for n in range(n_max + 1):
        g, lam = commutator_gram(t, n, commutator=s)
        levels.append(SpectralLevel(n, g.shape[0], lam))
    return SpectralTrace(tuple(levels))


LINEAR_KINDS = ("vertex", "edge", "sym")


def linear_graph_compression(kind: str, j: int, size: int) -> TruncatedMatrix:
    """``size x size`` truncation on l^2 of the vertices of the linear graph 1 -> 2 -> 3 -> ...

    Indices are 1-based. ``vertex``: |j><j|; ``edge``: |j><j| + |j><j+1|;
    ``sym``: the edge operator plus its adjoint, 2|j><j| + |j><j+1| + |j+1><j|.
    """
    if kind not in LINEAR_KINDS:
        raise GraphopError(f"unknown kind {kind!r}; expected one of {', '.join(LINEAR_KINDS)}")
    if size < 1:
        raise GraphopError(f"size must be positive, got {size}")
    if kind == "vertex":
        if not 1 <= j <= size:
            raise GraphopError(f"vertex index j={j} out of range 1..{size}")
    elif not 1 <= j < size:
        raise GraphopError(f"edge index j={j} out of range 1..{size - 1}")
    m = np.zeros((size, size), dtype=complex)
    a = j - 1
    if kind == "vertex":
        m[a, a] = 1
    elif kind == "edge":
        m[a, a] = 1
        m[a, a + 1] = 1
    else:
        m[a, a] = 2
        m[a, a + 1] = 1
        m[a + 1, a] = 1
    return TruncatedMatrix(tuple(str(i) for i in range(1, size + 1)), m)


def fmt_complex(c: complex) -> str:
    re_, im = fmt_real(c.real), fmt_real(c.imag)
    if not im.startswith("-"):
        im = "+" + im
    return f"{re_}{im}i"


def parse_complex(text: str) -> complex:
    return complex(text.replace("i", "j"))


def matrix_csv(labels: Sequence[str], m: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(labels))
    for label, row in zip(labels, m):
        w.writerow([label] + [fmt_complex(c) for c in row])
    return buf.getvalue()


def read_matrix_csv(text: str) -> Tuple[List[str], np.ndarray]:
    rows = list(csv.reader(io.StringIO(text)))
    labels = rows[0][1:]
    m = np.array([[parse_complex(c) for c in r[1:]] for r in rows[1:]], dtype=complex)
    return labels, m
