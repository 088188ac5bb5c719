"""JSON spec files, report serialization, CSV and DOT export."""

from __future__ import annotations

import csv
import io as _io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .ifs import IFS, AffineMap, IFSError
from .numberfield import QQ, FieldElement, NumberField
from .netstructure import VectorGraph

__all__ = [
    "SpecError",
    "SpecFile",
    "parse_rational",
    "parse_spec",
    "load_spec",
    "fmt_float",
    "json_float",
    "dumps",
    "graph_to_json",
    "to_dot",
    "SWEEP_HEADER",
    "write_sweep_csv",
]

PARAM = "param"
COMPLEMENT = "one_minus_sum"

DEFAULT_OPTIONS = {
    "max_vectors": 10000,
    "max_cycle_len": 8,
    "tolerance": 1e-12,
    "n_max": 6,
    "m_max": 3,
}


class SpecError(ValueError):
    """The spec file is malformed or describes an invalid IFS."""


def parse_rational(value) -> Fraction:
    """``"3/5"``, ``"0.25"``, ints and Fractions; floats are rejected as inexact."""
    if isinstance(value, bool) or isinstance(value, float):
        raise SpecError(f"expected an exact rational (string or int), got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"not a rational number: {value!r}") from exc


def _coeffs(value) -> list[Fraction]:
    if isinstance(value, list):
        if not value:
            raise SpecError("empty coefficient list")
        return [parse_rational(v) for v in value]
    return [parse_rational(value)]


@dataclass
class SpecFile:
    """Parsed spec: maps and probabilities, possibly with one free parameter slot."""

    field: NumberField
    maps: tuple[AffineMap, ...]
    probs: tuple  # FieldElement, PARAM or COMPLEMENT per slot
    name: str = ""
    options: dict = field(default_factory=lambda: dict(DEFAULT_OPTIONS))
    param_value: Fraction | None = None

    @property
    def has_param(self) -> bool:
        return PARAM in self.probs

    def probabilities(self, param=None) -> tuple[FieldElement, ...]:
        K = self.field
        if param is None:
            param = self.param_value
        if self.has_param and param is None:
            raise SpecError("spec has a 'param' slot: supply a parameter value")
        vals = [K(param) if p == PARAM else p for p in self.probs]
        if COMPLEMENT in vals:
            k = vals.index(COMPLEMENT)
            rest = sum((v for v in vals if not isinstance(v, str)), K.zero)
            vals[k] = 1 - rest
        return tuple(vals)

    def ifs(self, param=None) -> IFS:
        try:
            return IFS(self.field, self.maps, self.probabilities(param), self.name)
        except IFSError as exc:
            raise SpecError(str(exc)) from exc


def parse_spec(data: dict) -> SpecFile:
    if not isinstance(data, dict):
        raise SpecError("spec must be a JSON object")
    fdata = data.get("field")
    if fdata is None:
        K = QQ
    else:
        try:
            K = NumberField(
                _coeffs(fdata["minpoly"]),
                tuple(parse_rational(x) for x in fdata["root_interval"]),
                name=fdata.get("name", "r"),
            )
        except KeyError as exc:
            raise SpecError(f"field is missing {exc.args[0]!r}") from exc
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
    try:
        raw_maps = data["maps"]
        raw_probs = data["probs"]
    except KeyError as exc:
        raise SpecError(f"spec is missing {exc.args[0]!r}") from exc
    maps = []
    for m in raw_maps:
        try:
            maps.append(AffineMap(K.element(_coeffs(m["r"])), K.element(_coeffs(m["d"]))))
        except (KeyError, TypeError) as exc:
            raise SpecError("each map needs 'r' and 'd' coefficient lists") from exc
    probs = []
    for p in raw_probs:
        if p in (PARAM, COMPLEMENT):
            probs.append(p)
        else:
            probs.append(K.element(_coeffs(p)))
    if probs.count(PARAM) > 1:
        raise SpecError("at most one 'param' slot is allowed")
    if probs.count(COMPLEMENT) > 1:
        raise SpecError(f"at most one {COMPLEMENT!r} slot is allowed")
    options = dict(DEFAULT_OPTIONS)
    extra = data.get("options", {})
    unknown = set(extra) - set(DEFAULT_OPTIONS)
    if unknown:
        raise SpecError(f"unknown options: {', '.join(sorted(unknown))}")
    options.update(extra)
    pv = data.get("param_value")
    spec = SpecFile(K, tuple(maps), tuple(probs), data.get("name", ""), options,
                    parse_rational(pv) if pv is not None else None)
    if not spec.has_param or spec.param_value is not None:
        spec.ifs()
    return spec


def load_spec(path) -> SpecFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read spec: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from exc
    return parse_spec(data)


# --- output formatting ------------------------------------------------------------


def fmt_float(x: float) -> str:
    """At most 15 significant digits, shortest form."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.15g}"


def json_float(x: float):
    if math.isinf(x) or math.isnan(x):
        return fmt_float(x)
    return float(fmt_float(x))


def _normalize(obj):
    if isinstance(obj, float):
        return json_float(obj)
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if isinstance(obj, FieldElement):
        return {"exact": obj.to_json(), "float": json_float(float(obj))}
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, floats at 15 significant digits."""
    return json.dumps(_normalize(obj), sort_keys=True, indent=2)


def graph_to_json(graph: VectorGraph) -> dict:
    labels = graph.reduced_labels
    return {
        "vectors": [
            {"id": v, "reduced_label": labels[v], **cv.to_json()} for v, cv in sorted(graph.vectors.items())
        ],
        "edges": [
            {"parent": v, "child": e.child, "offset": e.offset.to_json(), "matrix": e.matrix.to_json()}
            for v in sorted(graph.edges)
            for e in graph.edges[v]
        ],
    }


def to_dot(graph: VectorGraph) -> str:
    """Graphviz source; essential-class vectors are drawn filled and double-circled."""
    ess = graph.essential
    lines = ["digraph vectors {", "  rankdir=TB;"]
    for v, cv in sorted(graph.vectors.items()):
        label = f"{v}:({cv.length},{len(cv.neighbours)},{cv.sibling_index})"
        style = ', shape=doublecircle, style=filled, fillcolor="lightgrey"' if v in ess else ""
        lines.append(f'  {v} [label="{label}"{style}];')
    for v in sorted(graph.edges):
        for e in graph.edges[v]:
            r, c = e.matrix.shape
            lines.append(f'  {v} -> {e.child} [label="{r}x{c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


SWEEP_HEADER = ("param", "a_lo", "a_hi", "b_lo", "b_hi", "dim0", "dim1", "isolated0", "isolated1")


def write_sweep_csv(rows) -> str:
    """``rows`` are tuples ordered like :data:`SWEEP_HEADER` (floats and bools)."""
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for row in rows:
        w.writerow([
            ("true" if x else "false") if isinstance(x, bool) else fmt_float(float(x)) for x in row
        ])
    return buf.getvalue()
