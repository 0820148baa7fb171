"""Design-spec parsing, sample serialisation and curve tables."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .design import ConstraintLink, DesignSpec, Relation, SpecError
from .distributions import Distribution

__all__ = [
    "parse_design_spec",
    "serialize_design_spec",
    "load_design_spec",
    "write_samples",
    "read_samples",
    "interpolate_curve",
    "CurveTable",
    "curve_table",
    "write_curves",
]

_DIST_FIELDS = {
    "uniform": ("min", "max"),
    "normal": ("mean", "sd"),
    "truncnorm": ("mean", "sd", "min", "max"),
}
_DIST_ALIASES = {"uniform": "uniform", "normal": "normal", "gaussian": "normal",
                 "truncnorm": "truncnorm", "truncated-normal": "truncnorm",
                 "truncated_normal": "truncnorm"}


def _number(obj, key, path):
    if key not in obj:
        raise SpecError(f"{path}.{key}: missing")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecError(f"{path}.{key}: expected a number, got {value!r}")
    return float(value)


def _parse_variable(obj, j) -> Distribution:
    path = f"variables[{j}]"
    if not isinstance(obj, dict):
        raise SpecError(f"{path}: expected an object")
    name = obj.get("name", f"x{j + 1}")
    if not isinstance(name, str) or not name:
        raise SpecError(f"{path}.name: expected a non-empty string")
    kind = _DIST_ALIASES.get(str(obj.get("dist", "")).lower())
    if kind is None:
        raise SpecError(f"{path}.dist: unknown distribution kind {obj.get('dist')!r}; "
                        f"expected one of {sorted(_DIST_FIELDS)}")
    params = tuple(_number(obj, k, path) for k in _DIST_FIELDS[kind])
    try:
        return Distribution(kind, params, name)
    except ValueError as exc:
        raise SpecError(f"{path}: {exc}") from None


def _index(ref, names, path):
    if isinstance(ref, bool):
        raise SpecError(f"{path}: expected a variable name or 1-based index")
    if isinstance(ref, int):
        if not 1 <= ref <= len(names):
            raise SpecError(f"{path}: index {ref} out of range 1..{len(names)}")
        return ref - 1
    if isinstance(ref, str) and ref in names:
        return names.index(ref)
    raise SpecError(f"{path}: unknown variable {ref!r}")


def _parse_links(doc, names):
    links = []
    if "chain" in doc:
        rel = Relation.parse(doc["chain"])
        links.extend(ConstraintLink(j, j + 1, rel) for j in range(len(names) - 1))
    raw = doc.get("links", [])
    if not isinstance(raw, list):
        raise SpecError("links: expected a list")
    for k, obj in enumerate(raw):
        path = f"links[{k}]"
        if not isinstance(obj, dict):
            raise SpecError(f"{path}: expected an object")
        left = _index(obj.get("left"), names, f"{path}.left")
        right = _index(obj.get("right"), names, f"{path}.right")
        if right != left + 1:
            raise SpecError(f"{path}: links must join consecutive variables "
                            f"(got {left + 1} -> {right + 1})")
        try:
            links.append(ConstraintLink(left, right, Relation.parse(obj.get("relation", "<"))))
        except SpecError as exc:
            raise SpecError(f"{path}.relation: {exc}") from None
    return links


def parse_design_spec(text) -> DesignSpec:
    """Parse and validate a JSON design spec (``bytes`` or ``str``).

    Schema::

        {"title": "...", "metadata": {...},
         "variables": [{"name": "x1", "dist": "uniform", "min": 0, "max": 1}, ...],
         "links": [{"left": "x1", "right": "x2", "relation": "<"}],
         "chain": "<"}

    ``left``/``right`` take a variable name or a 1-based index.  ``chain``
    is shorthand for linking every consecutive pair with one relation.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SpecError(f"spec is not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SpecError("spec must be a JSON object")
    raw_vars = doc.get("variables")
    if not isinstance(raw_vars, list) or not raw_vars:
        raise SpecError("variables: expected a non-empty list")
    variables = [_parse_variable(obj, j) for j, obj in enumerate(raw_vars)]
    names = [d.name for d in variables]
    links = _parse_links(doc, names)
    metadata = dict(doc.get("metadata", {}))
    if "title" in doc:
        metadata.setdefault("title", doc["title"])
    return DesignSpec(tuple(variables), tuple(links), metadata)


def serialize_design_spec(spec: DesignSpec) -> str:
    doc = {
        "variables": [d.to_dict() for d in spec.variables],
        "links": [{"left": spec.names[l.left], "right": spec.names[l.right],
                   "relation": l.relation.value} for l in spec.links],
        "metadata": spec.metadata,
    }
    return json.dumps(doc, indent=2) + "\n"


def load_design_spec(path) -> DesignSpec:
    with open(path, "rb") as fh:
        return parse_design_spec(fh.read())


def write_samples(m, fmt: str = "csv") -> bytes:
    """Serialise a :class:`~clhs.sampling.SampleMatrix` as CSV or JSON.

    CSV values carry 17 significant digits, enough to round-trip doubles.
    """
    if fmt == "csv":
        lines = [",".join(m.variable_names)]
        lines.extend(",".join(f"{v:.17g}" for v in row) for row in m.values)
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "json":
        doc = {"names": list(m.variable_names),
               "rows": [[float(v) for v in row] for row in m.values],
               "seed": m.seed}
        return (json.dumps(doc) + "\n").encode("utf-8")
    raise ValueError(f"unknown sample format {fmt!r}; use 'csv' or 'json'")


def read_samples(data):
    """Inverse of :func:`write_samples`; the format is sniffed from the content."""
    from .sampling import SampleMatrix

    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if data.lstrip().startswith("{"):
        doc = json.loads(data)
        rows = np.array(doc["rows"], dtype=float).reshape(len(doc["rows"]), len(doc["names"]))
        return SampleMatrix(rows, doc["names"], doc.get("seed"))
    reader = csv.reader(io.StringIO(data))
    names = next(reader)
    rows = [[float(v) for v in row] for row in reader if row]
    values = np.array(rows, dtype=float).reshape(len(rows), len(names))
    return SampleMatrix(values, names)


def interpolate_curve(levels, values, query: float) -> float:
    """Piecewise-linear value of a sampled curve at ``query``; no extrapolation."""
    levels = np.asarray(levels, dtype=float)
    values = np.asarray(values, dtype=float)
    if levels.shape != values.shape or levels.ndim != 1 or levels.size == 0:
        raise ValueError("levels and values must be 1-D and of equal length")
    if np.any(np.diff(levels) <= 0):
        raise ValueError("levels must be strictly increasing")
    if not levels[0] <= query <= levels[-1]:
        raise ValueError(f"query {query} outside [{levels[0]}, {levels[-1]}]")
    k = int(np.searchsorted(levels, query, side="left"))
    if levels[k] == query:
        return float(values[k])
    x0, x1 = levels[k - 1], levels[k]
    y0, y1 = values[k - 1], values[k]
    return float(y0 + (y1 - y0) * (query - x0) / (x1 - x0))


@dataclass(frozen=True)
class CurveTable:
    levels: tuple
    rows: tuple

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if len(row) != len(self.levels):
                raise ValueError(f"row {i} has {len(row)} values for {len(self.levels)} levels")


def curve_table(m, levels, query=None) -> CurveTable:
    """One curve per experiment, the design columns being the curve values at ``levels``.

    With ``query`` the curves are resampled there by linear interpolation.
    """
    levels = [float(v) for v in levels]
    if len(levels) != m.p:
        raise ValueError(f"{len(levels)} levels for {m.p} design columns")
    if query is None:
        return CurveTable(tuple(levels), tuple(tuple(float(v) for v in row) for row in m.values))
    query = [float(q) for q in query]
    rows = tuple(tuple(interpolate_curve(levels, row, q) for q in query) for row in m.values)
    return CurveTable(tuple(query), rows)


def write_curves(table: CurveTable) -> bytes:
    lines = [",".join(f"{v:.17g}" for v in table.levels)]
    lines.extend(",".join(f"{v:.17g}" for v in row) for row in table.rows)
    return ("\n".join(lines) + "\n").encode("utf-8")
