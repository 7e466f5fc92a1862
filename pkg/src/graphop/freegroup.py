"""Finitely supported elements of L(F_N) as graph operators on the one-vertex graph O_N."""
from __future__ import annotations

import math
import string
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .classify import (
    DEFAULT_N_MAX,
    DEFAULT_TOL,
    Verdict,
    check_hyponormal_oracle,
    check_normal,
    check_self_adjoint,
    check_unitary,
    cjson,
    find_discrepancies,
)
from .graph import GraphopError, ShadowedGraph, SignedEdge, build_one_vertex_graph, shadow
from .operators import EPS_EQ, EPS_ZERO, GraphOperator, OperatorFormatError, fmt_real
from .representation import spectral_trace
from .words import Word, inverse, make_path, product, vertex

IDENTITY_TOKEN = "e"
# "e" is reserved for the identity, so the letter names skip it
LETTERS = [c for c in string.ascii_lowercase if c != IDENTITY_TOKEN]


def default_generator_names(n: int) -> Tuple[str, ...]:
    if n <= len(LETTERS):
        return tuple(LETTERS[:n])
    return tuple(f"u{i}" for i in range(1, n + 1))


@dataclass(frozen=True)
class FreeGroupContext:
    n: int
    graph: ShadowedGraph
    names: Tuple[str, ...]
    _edge_of: Dict[str, str] = field(repr=False, compare=False)
    _name_of: Dict[str, str] = field(repr=False, compare=False)

    @classmethod
    def create(cls, n: int, names: Tuple[str, ...] | None = None) -> "FreeGroupContext":
        g = shadow(build_one_vertex_graph(n))
        names = default_generator_names(n) if names is None else tuple(names)
        if len(names) != n or len(set(names)) != n or IDENTITY_TOKEN in names:
            raise GraphopError(f"need {n} distinct generator names other than {IDENTITY_TOKEN!r}")
        edges = [e.name for e in g.base.edges]
        return cls(n, g, names, dict(zip(names, edges)), dict(zip(edges, names)))

    @property
    def identity(self) -> Word:
        return vertex(self.graph.vertices[0])

    def format(self, w: Word) -> str:
        if w.is_vertex:
            return IDENTITY_TOKEN
        return " ".join(self._name_of[s.edge] + ("" if s.orientation == 1 else "^-1") for s in w.letters)


def parse_group_word(text: str, ctx: FreeGroupContext) -> Word:
    """``"a b^-1"`` -> the reduced word e1 e2^-1 over O_N; ``"e"`` is the identity."""
    letters: List[SignedEdge] = []
    tokens = text.split()
    if not tokens:
        raise GraphopError("empty group word")
    for tok in tokens:
        if tok == IDENTITY_TOKEN:
            continue
        name, sep, power = tok.partition("^")
        if name not in ctx._edge_of:
            raise GraphopError(f"unknown generator {name!r}")
        if sep and power != "-1":
            raise GraphopError(f"bad exponent in {tok!r}; only ^-1 is allowed")
        letters.append(SignedEdge(ctx._edge_of[name], -1 if sep else 1))
    if not letters:
        return ctx.identity
    return make_path(ctx.graph, letters)


def format_free_operator(t: GraphOperator, ctx: FreeGroupContext) -> str:
    return "".join(f"term {fmt_real(c.real)} {fmt_real(c.imag)} {ctx.format(w)}\n" for w, c in t)


def parse_free_operator(text: str, ctx: FreeGroupContext, eps_zero: float = EPS_ZERO) -> GraphOperator:
    terms = []
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
            w = parse_group_word(parts[3], ctx)
        except GraphopError as exc:
            raise OperatorFormatError(str(exc), lineno) from None
        terms.append((w, c))
    return GraphOperator(ctx.graph, terms, eps_zero)


def commutator_pair_sum(t: GraphOperator) -> complex:
    """sum over ordered support pairs of conj(t1) t2 - t1 conj(t2).

    Identically zero: the two halves are |sum t|^2 each.
    """
    coeffs = [c for _, c in t]
    return sum(c1.conjugate() * c2 - c1 * c2.conjugate() for c1 in coeffs for c2 in coeffs)


@dataclass
class FreeGroupReport:
    context: FreeGroupContext
    operator: GraphOperator
    criteria: Dict[str, dict]
    verdicts: List[Verdict]
    discrepancies: List[dict]
    spectral_trace: object = None

    def result(self, prop: str, mode: str):
        for v in self.verdicts:
            if v.property == prop and v.mode == mode:
                return v.result
        return None


def _check_context(t: GraphOperator, ctx: FreeGroupContext) -> None:
    g = t.graph
    if len(g.vertices) != 1:
        raise GraphopError("free-group criteria need a one-vertex graph O_N")
    if g != ctx.graph:
        raise GraphopError("operator is not bound to this O_N context")


def freegroup_classify(t: GraphOperator, ctx: FreeGroupContext, n_max: int = DEFAULT_N_MAX,
                       tol: float = DEFAULT_TOL, eps: float = EPS_EQ) -> FreeGroupReport:
    _check_context(t, ctx)
    fmt = ctx.format
    supp = t.support()
    e = ctx.identity
    criteria: Dict[str, dict] = {}
    paper: List[Verdict] = []

    # self-adjointness: Supp = {e} u Y u Y^-1, real identity coefficient, conjugate pairs
    paths = [w for w in supp if w.is_path]
    unpaired = [w for w in paths if t[inverse(w)] == 0]
    mismatched = [w for w in paths if t[inverse(w)] != 0 and abs(t[w] - t[inverse(w)].conjugate()) > eps]
    real_identity = abs(t[e].imag) * 2 <= eps
    criteria["selfAdjoint"] = {
        "pairedPaths": len(paths) - len(unpaired),
        "unpaired": [fmt(w) for w in unpaired],
        "mismatched": [fmt(w) for w in mismatched],
        "identityCoefficientReal": real_identity,
    }
    if unpaired:
        paper.append(Verdict("self-adjoint", "paper", "no", {"reason": "support is not {e} u Y u Y^-1",
                                                              "word": fmt(unpaired[0])}))
    elif mismatched:
        paper.append(Verdict("self-adjoint", "paper", "no", {"reason": "t_y differs from conj(t_y^-1)",
                                                              "word": fmt(mismatched[0])}))
    elif not real_identity:
        paper.append(Verdict("self-adjoint", "paper", "no", {"reason": "identity coefficient is not real",
                                                              "coefficient": cjson(t[e])}))
    else:
        paper.append(Verdict("self-adjoint", "paper", "yes"))

    # hyponormality: sum (conj t1 t2 - t1 conj t2) >= 0 ; normality: the same sum == 0
    s = commutator_pair_sum(t)
    criteria["hyponormal"] = {"sum": cjson(s)}
    if abs(s.imag) > eps:
        paper.append(Verdict("hyponormal", "paper", "inapplicable", {"reason": "sum is not real", "sum": cjson(s)}))
    elif s.real >= -eps:
        paper.append(Verdict("hyponormal", "paper", "yes", {"sum": cjson(s)}))
    else:
        paper.append(Verdict("hyponormal", "paper", "no", {"reason": "sum is negative", "sum": cjson(s)}))
    criteria["normal"] = {"sum": cjson(s)}
    if abs(s) <= eps:
        paper.append(Verdict("normal", "paper", "yes", {"sum": cjson(s)}))
    else:
        paper.append(Verdict("normal", "paper", "no", {"reason": "sum is nonzero", "sum": cjson(s)}))

    # unitarity: Supp^-1 Supp = {e} and sum conj(t1) t2 = 1
    pi = sorted({product(inverse(w1), w2) for w1 in supp for w2 in supp},
                key=lambda w: (len(w), fmt(w)))
    total = sum(c1.conjugate() * c2 for _, c1 in t for _, c2 in t)
    criteria["unitary"] = {"supportQuotient": [fmt(w) for w in pi], "sum": cjson(total)}
    if pi != [e]:
        paper.append(Verdict("unitary", "paper", "no", {"reason": "Supp^-1 Supp is not {e}",
                                                         "supportQuotient": [fmt(w) for w in pi]}))
    elif abs(total - 1) > eps:
        paper.append(Verdict("unitary", "paper", "no", {"reason": "coefficient pair sum differs from 1",
                                                         "sum": cjson(total)}))
    else:
        paper.append(Verdict("unitary", "paper", "yes", {"sum": cjson(total)}))

    trace = spectral_trace(t, n_max)
    oracle = [
        check_self_adjoint(t, "oracle", eps, fmt),
        check_unitary(t, "oracle", eps, fmt),
        check_normal(t, "oracle", eps, fmt),
        check_hyponormal_oracle(t, n_max, tol, eps, fmt, trace),
    ]
    verdicts = paper + oracle
    return FreeGroupReport(ctx, t, criteria, verdicts, find_discrepancies(verdicts), trace)
