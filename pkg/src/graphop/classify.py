"""Self-adjoint / unitary / normal / hyponormal classification of graph operators.

Every property is decided twice: by the combinatorial criteria on supports and
coefficients ("paper" mode) and by exact convolution ("oracle" mode). Oracle
verdicts are authoritative; disagreements are reported, never reconciled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .operators import (
    EPS_EQ,
    GraphOperator,
    SupportProfile,
    identity_operator,
    op_adjoint,
    op_multiply,
    self_commutator,
    sorted_vertices,
    sorted_words,
    support_profile,
)
from .representation import spectral_trace
from .words import Word, format_word, inverse, product, range_, vertex

PROPERTIES = ("self-adjoint", "unitary", "normal", "hyponormal")
MODES = ("paper", "oracle", "numeric")
RESULTS = ("yes", "no", "undetermined", "inapplicable")
DECISIVE = ("yes", "no")

DEFAULT_N_MAX = 4
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Verdict:
    property: str
    mode: str
    result: str
    witness: Optional[dict] = None

    def __post_init__(self):
        if self.property not in PROPERTIES or self.mode not in MODES or self.result not in RESULTS:
            raise ValueError(f"invalid verdict {self.property}/{self.mode}/{self.result}")
        if self.result == "no" and not self.witness:
            raise ValueError("a 'no' verdict needs a witness")
        if self.mode == "numeric" and self.result == "yes":
            raise ValueError("numeric mode cannot confirm a property")

    def to_dict(self) -> dict:
        d = {"property": self.property, "mode": self.mode, "result": self.result}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def cjson(c: complex) -> dict:
    return {"re": float(c.real) + 0.0, "im": float(c.imag) + 0.0}


def _terms_json(t: GraphOperator, words: Iterable[Word] | None = None, fmt=format_word) -> list:
    ws = t.support() if words is None else words
    return [{"word": fmt(w), "coefficient": cjson(t[w])} for w in ws]


# ---------------------------------------------------------------- self-adjointness


def check_self_adjoint(t: GraphOperator, mode: str = "oracle", eps: float = EPS_EQ, fmt=format_word) -> Verdict:
    if mode == "oracle":
        ta = op_adjoint(t)
        worst, worst_w = 0.0, None
        for w in sorted_words(t.graph, set(t.support()) | set(ta.support())):
            d = abs(ta[w] - t[w])
            if d > worst:
                worst, worst_w = d, w
        if worst <= eps:
            return Verdict("self-adjoint", "oracle", "yes")
        return Verdict("self-adjoint", "oracle", "no", {
            "reason": "T* differs from T",
            "word": fmt(worst_w),
            "coefficient": cjson(t[worst_w]),
            "adjointCoefficient": cjson(ta[worst_w]),
        })
    if mode != "paper":
        raise ValueError(f"unsupported mode {mode!r} for self-adjointness")
    pairing = []
    for w, c in t:
        if w.is_vertex:
            if abs(c - c.conjugate()) > eps:
                return Verdict("self-adjoint", "paper", "no", {
                    "reason": "vertex coefficient is not real", "word": fmt(w), "coefficient": cjson(c)})
            continue
        if abs(c) <= eps:
            continue
        partner = inverse(w)
        if t[partner] == 0:
            return Verdict("self-adjoint", "paper", "no", {
                "reason": "path has no inverse partner in the support", "word": fmt(w), "partner": fmt(partner)})
        if abs(c - t[partner].conjugate()) > eps:
            return Verdict("self-adjoint", "paper", "no", {
                "reason": "paired coefficients are not conjugate", "word": fmt(w), "partner": fmt(partner),
                "coefficient": cjson(c), "partnerCoefficient": cjson(t[partner])})
        if (fmt(partner), fmt(w)) not in pairing:
            pairing.append((fmt(w), fmt(partner)))
    return Verdict("self-adjoint", "paper", "yes", {"pairing": [list(p) for p in pairing]} if pairing else None)


# ---------------------------------------------------------------- unitarity


def is_alternatively_disconnected(xs: Iterable[Word]) -> bool:
    return alternative_disconnection_witness(xs) is None


def alternative_disconnection_witness(xs: Iterable[Word]) -> Optional[tuple]:
    """None if the set is alternatively disconnected, else the reason.

    Only distinct *path* elements are tested against each other; vertices only
    count towards the size condition.
    """
    xs = list(dict.fromkeys(xs))
    if any(w.is_empty for w in xs):
        raise ValueError("the empty element cannot belong to a support set")
    if len(xs) < 2:
        return ("size", len(xs))
    paths = [w for w in xs if w.is_path]
    for i, w1 in enumerate(paths):
        for w2 in paths[i + 1:]:
            for a, b in ((w1, w2), (w2, w1)):
                if not product(inverse(a), b).is_empty:
                    return ("inverse-left", a, b)
                if not product(a, inverse(b)).is_empty:
                    return ("inverse-right", a, b)
    return None


def check_unitary(t: GraphOperator, mode: str = "oracle", eps: float = EPS_EQ, fmt=format_word) -> Verdict:
    g = t.graph
    if mode == "oracle":
        one = identity_operator(g)
        bad = {}
        for side, prod in (("starLeft", op_multiply(op_adjoint(t), t)), ("starRight", op_multiply(t, op_adjoint(t)))):
            diff = prod - one
            off = [w for w, c in diff if abs(c) > eps]
            if off:
                bad[side] = _terms_json(prod, off, fmt)
        if not bad:
            return Verdict("unitary", "oracle", "yes")
        return Verdict("unitary", "oracle", "no", {"reason": "T*T or TT* differs from the identity", **bad})
    if mode != "paper":
        raise ValueError(f"unsupported mode {mode!r} for unitarity")

    supp = t.support()
    if len(g.vertices) == 1:
        v0 = g.vertices[0]
        pi = {product(inverse(w1), w2) for w1 in supp for w2 in supp} - {vertex(v0)}
        if not supp or pi:
            return Verdict("unitary", "paper", "no", {
                "reason": "Supp^-1 Supp is not the vertex set",
                "pi": [fmt(w) for w in sorted_words(g, pi | ({vertex(v0)} if supp else set()))]})
        total = sum(c1.conjugate() * c2 for _, c1 in t for _, c2 in t)
        if abs(total - 1) > eps:
            return Verdict("unitary", "paper", "no", {
                "reason": "coefficient pair sum differs from 1", "sum": cjson(total)})
        return Verdict("unitary", "paper", "yes", {"sum": cjson(total)})

    bad = alternative_disconnection_witness(supp)
    if bad is not None:
        if bad[0] == "size":
            return Verdict("unitary", "paper", "no", {
                "reason": "support has fewer than two elements", "size": bad[1]})
        kind, a, b = bad
        shown = f"{fmt(a)}^-1 * {fmt(b)}" if kind == "inverse-left" else f"{fmt(a)} * ({fmt(b)})^-1"
        return Verdict("unitary", "paper", "no", {
            "reason": "support is not alternatively disconnected", "pair": [fmt(a), fmt(b)], "product": shown})
    # With alternative disconnection only the diagonal products w^-1 w survive in T*T.
    pi = {range_(w) for w in supp}
    if pi != set(g.vertices):
        return Verdict("unitary", "paper", "no", {
            "reason": "Supp^-1 Supp differs from V",
            "pi": ["@" + v for v in sorted_vertices(g, pi)],
            "vertices": ["@" + v for v in g.vertices]})
    sums = {v: 0.0 for v in g.vertices}
    for w, c in t:
        sums[range_(w)] += abs(c) ** 2
    off = [v for v in g.vertices if abs(sums[v] - 1) > eps]
    if off:
        return Verdict("unitary", "paper", "no", {
            "reason": "per-vertex sum of |t_w|^2 differs from 1",
            "vertex": "@" + off[0], "sums": {"@" + v: sums[v] for v in g.vertices}})
    return Verdict("unitary", "paper", "yes")


# ---------------------------------------------------------------- normality / hyponormality


def vertex_sums(t: GraphOperator) -> Tuple[Dict[str, complex], Dict[str, complex]]:
    """Per range-vertex sums of the T*T and TT* coefficient products over admissible pairs."""
    left = {v: 0j for v in t.graph.vertices}
    right = {v: 0j for v in t.graph.vertices}
    for w1, c1 in t:
        for w2, c2 in t:
            a = product(inverse(w1), w2)
            if not a.is_empty:
                left[a.end] += c1.conjugate() * c2
            b = product(w1, inverse(w2))
            if not b.is_empty:
                right[b.end] += c1 * c2.conjugate()
    return left, right


def _sums_json(left, right, g) -> dict:
    return {"@" + v: {"starLeft": cjson(left[v]), "starRight": cjson(right[v])} for v in g.vertices}


def _range_and_sum_test(t: GraphOperator, prop: str, eps: float) -> Verdict:
    g = t.graph
    prof = support_profile(t)
    if prop == "normal":
        if prof.r_left != prof.r_right:
            diff = sorted_vertices(g, prof.r_left ^ prof.r_right)
            return Verdict(prop, "paper", "no", {
                "reason": "range sets of T*T and TT* differ", "vertex": "@" + diff[0],
                "rStarLeft": ["@" + v for v in sorted_vertices(g, prof.r_left)],
                "rStarRight": ["@" + v for v in sorted_vertices(g, prof.r_right)]})
    elif not prof.r_left >= prof.r_right:
        missing = sorted_vertices(g, prof.r_right - prof.r_left)
        return Verdict(prop, "paper", "no", {
            "reason": "range set of T*T does not contain that of TT*", "vertex": "@" + missing[0],
            "rStarLeft": ["@" + v for v in sorted_vertices(g, prof.r_left)],
            "rStarRight": ["@" + v for v in sorted_vertices(g, prof.r_right)]})
    left, right = vertex_sums(t)
    nonreal = [v for v in g.vertices if abs(left[v].imag) > eps or abs(right[v].imag) > eps]
    note = "per-vertex condition evaluated as the displayed '>=', not as equality" if prop == "normal" else None
    if nonreal:
        w = {"reason": "per-vertex sums are not real; ordering undefined", "vertex": "@" + nonreal[0],
             "sums": _sums_json(left, right, g)}
        return Verdict(prop, "paper", "inapplicable", w)
    failing = [v for v in g.vertices if left[v].real < right[v].real - eps]
    if failing:
        return Verdict(prop, "paper", "no", {
            "reason": "per-vertex sum inequality fails", "vertex": "@" + failing[0],
            "sums": _sums_json(left, right, g)})
    w = {"sums": _sums_json(left, right, g)}
    if note:
        w["note"] = note
    return Verdict(prop, "paper", "yes", w)


def check_normal(t: GraphOperator, mode: str = "oracle", eps: float = EPS_EQ, fmt=format_word) -> Verdict:
    if mode == "paper":
        return _range_and_sum_test(t, "normal", eps)
    if mode != "oracle":
        raise ValueError(f"unsupported mode {mode!r} for normality")
    s = self_commutator(t)
    off = [w for w, c in s if abs(c) > eps]
    if not off:
        return Verdict("normal", "oracle", "yes")
    ta = op_adjoint(t)
    return Verdict("normal", "oracle", "no", {
        "reason": "self-commutator T*T - TT* is nonzero",
        "commutator": _terms_json(s, off, fmt),
        "starLeftSupport": [fmt(w) for w in op_multiply(ta, t).support()],
        "starRightSupport": [fmt(w) for w in op_multiply(t, ta).support()],
    })


def check_hyponormal_criterion(t: GraphOperator, eps: float = EPS_EQ) -> Verdict:
    return _range_and_sum_test(t, "hyponormal", eps)


def _trace_json(trace) -> list:
    return [{"n": lv.n, "dim": lv.dim, "lambdaMin": lv.lambda_min} for lv in trace.levels]


def check_hyponormal_numeric(t: GraphOperator, n_max: int = DEFAULT_N_MAX, tol: float = DEFAULT_TOL,
                             trace=None) -> Verdict:
    """Semi-decision: a negative eigenvalue of a Gram truncation refutes positivity of S(T)."""
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    trace = spectral_trace(t, n_max) if trace is None else trace
    for lv in trace.levels:
        if lv.lambda_min < -tol:
            return Verdict("hyponormal", "numeric", "no", {
                "reason": "self-commutator truncation has a negative eigenvalue",
                "n": lv.n, "dim": lv.dim, "lambdaMin": lv.lambda_min, "trace": _trace_json(trace)})
    return Verdict("hyponormal", "numeric", "undetermined", {
        "reason": f"consistent with positivity up to n={n_max}", "trace": _trace_json(trace)})


def check_hyponormal_oracle(t: GraphOperator, n_max: int = DEFAULT_N_MAX, tol: float = DEFAULT_TOL,
                            eps: float = EPS_EQ, fmt=format_word, trace=None) -> Verdict:
    """Exact where possible, otherwise falls back to the Gram truncation probe.

    <S xi_x, xi_x> is the coefficient of the vertex s(x) in S, and the pair
    {xi_r(u), xi_u} spans an exact 2x2 principal block [[s_r(u), conj s_u], [s_u, s_s(u)]].
    """
    s = self_commutator(t)
    off = [w for w, c in s if abs(c) > eps]
    if not off:
        return Verdict("hyponormal", "oracle", "yes", {"reason": "self-commutator vanishes"})
    diag = {v: s[vertex(v)].real for v in t.graph.vertices}
    for v in t.graph.vertices:
        if diag[v] < -tol:
            return Verdict("hyponormal", "oracle", "no", {
                "reason": "negative diagonal entry <S xi, xi>", "vertex": fmt(vertex(v)), "value": diag[v]})
    if all(w.is_vertex for w in off):
        return Verdict("hyponormal", "oracle", "yes", {"reason": "self-commutator is diagonal and nonnegative"})
    for u in off:
        if u.is_vertex:
            continue
        a, b, c = diag[u.end], diag[u.start], s[u]
        lam = (a + b) / 2 - math.sqrt(((a - b) / 2) ** 2 + abs(c) ** 2)
        if lam < -tol:
            return Verdict("hyponormal", "oracle", "no", {
                "reason": "2x2 principal block of S has a negative eigenvalue",
                "basis": [fmt(vertex(u.end)), fmt(u)], "block": [[a, cjson(c.conjugate())], [cjson(c), b]],
                "lambdaMin": lam})
    numeric = check_hyponormal_numeric(t, n_max, tol, trace)
    return Verdict("hyponormal", "oracle", numeric.result, numeric.witness)


# ---------------------------------------------------------------- reports


@dataclass(frozen=True)
class ClassifyConfig:
    modes: Tuple[str, ...] = ("paper", "oracle", "numeric")
    n_max: int = DEFAULT_N_MAX
    tol: float = DEFAULT_TOL
    eps_eq: float = EPS_EQ


@dataclass
class ClassificationReport:
    operator: GraphOperator
    profile: SupportProfile
    verdicts: List[Verdict]
    discrepancies: List[dict] = field(default_factory=list)
    spectral_trace: object = None

    def verdict(self, prop: str, mode: str) -> Optional[Verdict]:
        for v in self.verdicts:
            if v.property == prop and v.mode == mode:
                return v
        return None

    def result(self, prop: str, mode: str) -> Optional[str]:
        v = self.verdict(prop, mode)
        return v.result if v else None


def find_discrepancies(verdicts: List[Verdict]) -> List[dict]:
    out = []
    by = {(v.property, v.mode): v for v in verdicts}
    for prop in PROPERTIES:
        p, o = by.get((prop, "paper")), by.get((prop, "oracle"))
        if p and o and p.result in DECISIVE and o.result in DECISIVE and p.result != o.result:
            d = {"property": prop, "paper": p.result, "oracle": o.result}
            w = o.witness if o.result == "no" else p.witness
            if w is not None:
                d["witness"] = w
            out.append(d)
    return out


def classify(t: GraphOperator, config: ClassifyConfig = ClassifyConfig(), fmt=format_word) -> ClassificationReport:
    eps = config.eps_eq
    trace = spectral_trace(t, config.n_max)
    verdicts: List[Verdict] = []
    if "paper" in config.modes:
        verdicts += [
            check_self_adjoint(t, "paper", eps, fmt),
            check_unitary(t, "paper", eps, fmt),
            check_normal(t, "paper", eps, fmt),
            check_hyponormal_criterion(t, eps),
        ]
    verdicts += [
        check_self_adjoint(t, "oracle", eps, fmt),
        check_unitary(t, "oracle", eps, fmt),
        check_normal(t, "oracle", eps, fmt),
        check_hyponormal_oracle(t, config.n_max, config.tol, eps, fmt, trace),
    ]
    if "numeric" in config.modes:
        verdicts.append(check_hyponormal_numeric(t, config.n_max, config.tol, trace))
    sa_p = next((v for v in verdicts if v.property == "self-adjoint" and v.mode == "paper"), None)
    if sa_p is not None:
        sa_o = next(v for v in verdicts if v.property == "self-adjoint" and v.mode == "oracle")
        assert sa_p.result == sa_o.result, "self-adjointness criteria disagree"
    return ClassificationReport(t, support_profile(t), verdicts, find_discrepancies(verdicts), trace)
