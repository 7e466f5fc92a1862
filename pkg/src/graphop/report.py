"""JSON and text rendering of classification reports (schema ``graphop-report/1``)."""
from __future__ import annotations

import json

from .classify import PROPERTIES, ClassificationReport
from .freegroup import FreeGroupReport
from .operators import sorted_vertices, sorted_words, support_profile
from .words import format_word

SCHEMA_VERSION = "graphop-report/1"

_CAMEL = {"self-adjoint": "selfAdjoint", "unitary": "unitary", "normal": "normal", "hyponormal": "hyponormal"}

_RESULT = {"enum": ["yes", "no", "undetermined", "inapplicable"]}
_STRINGS = {"type": "array", "items": {"type": "string"}}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "graph", "operator", "supportProfile", "verdicts", "discrepancies", "summary"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "graph": {
            "type": "object",
            "required": ["vertices", "edges"],
            "properties": {
                "vertices": _STRINGS,
                "edges": {"type": "array", "items": {
                    "type": "object", "required": ["name", "from", "to"],
                    "properties": {"name": {"type": "string"}, "from": {"type": "string"}, "to": {"type": "string"}},
                }},
            },
        },
        "operator": {
            "type": "object",
            "required": ["terms"],
            "properties": {"terms": {"type": "array", "items": {
                "type": "object", "required": ["word", "re", "im"],
                "properties": {"word": {"type": "string"}, "re": {"type": "number"}, "im": {"type": "number"}},
            }}},
        },
        "supportProfile": {
            "type": "object",
            "required": ["supp", "suppV", "suppVc", "piStarLeft", "piStarRight", "rStarLeft", "rStarRight"],
            "additionalProperties": _STRINGS,
        },
        "verdicts": {"type": "array", "items": {
            "type": "object", "required": ["property", "mode", "result"],
            "properties": {
                "property": {"enum": list(PROPERTIES)},
                "mode": {"enum": ["paper", "oracle", "numeric"]},
                "result": _RESULT,
                "witness": {"type": "object"},
            },
            "additionalProperties": False,
        }},
        "discrepancies": {"type": "array", "items": {
            "type": "object", "required": ["property", "paper", "oracle"],
            "properties": {"property": {"enum": list(PROPERTIES)}, "paper": _RESULT, "oracle": _RESULT},
        }},
        "summary": {"type": "object", "additionalProperties": {
            "type": "object", "additionalProperties": _RESULT}},
        "spectralTrace": {"type": "array", "items": {
            "type": "object", "required": ["n", "dim", "lambdaMin"],
            "properties": {"n": {"type": "integer"}, "dim": {"type": "integer"}, "lambdaMin": {"type": "number"}},
        }},
        "freeGroup": {"type": "object", "required": ["N", "generators", "criteria"]},
    },
}


def _graph_json(g) -> dict:
    return {
        "vertices": list(g.base.vertices),
        "edges": [{"name": e.name, "from": e.source, "to": e.target} for e in g.base.edges],
    }


def _summary(verdicts) -> dict:
    out = {}
    for prop in PROPERTIES:
        out[_CAMEL[prop]] = {v.mode: v.result for v in verdicts if v.property == prop}
    return out


def _base(t, verdicts, discrepancies, trace, fmt) -> dict:
    g = t.graph
    prof = support_profile(t)
    doc = {
        "schema": SCHEMA_VERSION,
        "graph": _graph_json(g),
        "operator": {"terms": [{"word": fmt(w), "re": c.real + 0.0, "im": c.imag + 0.0} for w, c in t]},
        "supportProfile": {
            "supp": [fmt(w) for w in prof.supp],
            "suppV": [fmt(w) for w in prof.supp_v],
            "suppVc": [fmt(w) for w in prof.supp_v_c],
            "piStarLeft": [fmt(w) for w in sorted_words(g, prof.pi_star_left)],
            "piStarRight": [fmt(w) for w in sorted_words(g, prof.pi_star_right)],
            "rStarLeft": ["@" + v for v in sorted_vertices(g, prof.r_left)],
            "rStarRight": ["@" + v for v in sorted_vertices(g, prof.r_right)],
        },
        "verdicts": [v.to_dict() for v in verdicts],
        "summary": _summary(verdicts),
        "discrepancies": discrepancies,
    }
    if trace is not None:
        doc["spectralTrace"] = [{"n": lv.n, "dim": lv.dim, "lambdaMin": lv.lambda_min} for lv in trace.levels]
    return doc


def report_to_dict(report: ClassificationReport) -> dict:
    return _base(report.operator, report.verdicts, report.discrepancies, report.spectral_trace, format_word)


def free_report_to_dict(report: FreeGroupReport) -> dict:
    ctx = report.context
    doc = _base(report.operator, report.verdicts, report.discrepancies, report.spectral_trace, ctx.format)
    doc["freeGroup"] = {"N": ctx.n, "generators": list(ctx.names), "criteria": report.criteria}
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def render_text(doc: dict) -> str:
    lines = ["operator: " + (" + ".join(f"({t['re']:.17g}{t['im']:+.17g}i) L[{t['word']}]"
                                        for t in doc["operator"]["terms"]) or "0")]
    for prop, modes in doc["summary"].items():
        lines.append(f"{prop:13s}" + "  ".join(f"{m}={r}" for m, r in modes.items()))
    for d in doc["discrepancies"]:
        lines.append(f"DISCREPANCY {d['property']}: paper={d['paper']} oracle={d['oracle']}")
    for lv in doc.get("spectralTrace", []):
        lines.append(f"n={lv['n']} dim={lv['dim']} lambda_min={lv['lambdaMin']:.17g}")
    return "\n".join(lines) + "\n"
