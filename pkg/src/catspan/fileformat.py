"""The on-disk document format shared by categories, functors, and metrics.

All three kinds are JSON documents with a versioned ``"format": 1`` header
and a ``"kind"`` field. Structural problems are reported as ParseError with
the offending field path; law checking happens separately so callers can
distinguish "malformed file" from "well-formed but law-breaking input".
"""

from __future__ import annotations

import json
from pathlib import Path

from .fincat import FinCategory, Morphism, ValidationReport, validate_category
from .setfunc import CONTRAVARIANT, COVARIANT, SetValuedFunctor, validate_functor

FORMAT_VERSION = 1

VARIANCE_CODES = {"co": COVARIANT, "contra": CONTRAVARIANT}
VARIANCE_NAMES = {v: k for k, v in VARIANCE_CODES.items()}


class ParseError(ValueError):
    """A document that does not match the schema; the message names the
    offending field path."""

    def __init__(self, source: str, path: str, detail: str):
        super().__init__(f"{source}: {path}: {detail}")
        self.source = source
        self.path = path
        self.detail = detail


def read_document(path: str | Path) -> dict:
    source = str(path)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(source, "<file>", str(exc)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(source, "<file>", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError(source, "<file>", "top level must be an object")
    return doc


def _check_header(doc: dict, source: str, kind: str) -> None:
    if doc.get("format") != FORMAT_VERSION:
        raise ParseError(source, "format", f"expected format {FORMAT_VERSION}, got {doc.get('format')!r}")
    if doc.get("kind") != kind:
        raise ParseError(source, "kind", f"expected {kind!r}, got {doc.get('kind')!r}")


def _expect(doc: dict, source: str, field: str, typ, type_name: str):
    if field not in doc:
        raise ParseError(source, field, "missing field")
    value = doc[field]
    if not isinstance(value, typ):
        raise ParseError(source, field, f"expected {type_name}, got {type(value).__name__}")
    return value


def parse_category(doc: dict, source: str = "<inline>") -> FinCategory:
    """Structural parse of a category document into an unvalidated candidate."""
    _check_header(doc, source, "category")
    objects = _expect(doc, source, "objects", list, "list of labels")
    for i, obj in enumerate(objects):
        if not isinstance(obj, str):
            raise ParseError(source, f"objects[{i}]", "object label must be a string")
    raw_morphisms = _expect(doc, source, "morphisms", list, "list of morphism records")
    morphisms = []
    for i, record in enumerate(raw_morphisms):
        if not isinstance(record, dict):
            raise ParseError(source, f"morphisms[{i}]", "expected an object with id/src/tgt")
        for key in ("id", "src", "tgt"):
            if key not in record or not isinstance(record[key], str):
                raise ParseError(source, f"morphisms[{i}].{key}", "missing or non-string")
        if record["src"] not in objects:
            raise ParseError(source, f"morphisms[{i}].src", f"morphism {record['id']!r} references undeclared object {record['src']!r}")
        if record["tgt"] not in objects:
            raise ParseError(source, f"morphisms[{i}].tgt", f"morphism {record['id']!r} references undeclared object {record['tgt']!r}")
        morphisms.append(Morphism(record["id"], record["src"], record["tgt"]))
    labels = {m.label for m in morphisms}
    identities = _expect(doc, source, "identities", dict, "object-to-morphism map")
    for obj, label in identities.items():
        if obj not in objects:
            raise ParseError(source, f"identities.{obj}", "undeclared object")
        if label not in labels:
            raise ParseError(source, f"identities.{obj}", f"undeclared morphism {label!r}")
    table = {}
    raw_compose = _expect(doc, source, "compose", list, "list of [g, f, result] triples")
    for i, entry in enumerate(raw_compose):
        if not (isinstance(entry, list) and len(entry) == 3 and all(isinstance(x, str) for x in entry)):
            raise ParseError(source, f"compose[{i}]", "expected a [g, f, result] triple of morphism ids")
        g, f, r = entry
        for label in (g, f, r):
            if label not in labels:
                raise ParseError(source, f"compose[{i}]", f"undeclared morphism {label!r}")
        if (g, f) in table:
            raise ParseError(source, f"compose[{i}]", f"duplicate entry for pair ({g!r}, {f!r})")
        table[(g, f)] = r
    return FinCategory(tuple(objects), tuple(morphisms), dict(identities), table)


def load_category(path: str | Path) -> FinCategory:
    """Parse a category file; structural only, laws not yet checked."""
    return parse_category(read_document(path), str(path))


def load_valid_category(path: str | Path) -> tuple[FinCategory, ValidationReport]:
    candidate = load_category(path)
    return candidate, validate_category(candidate)


def parse_functor(doc: dict, source: str, category: FinCategory | None = None,
                  base_dir: Path | None = None) -> SetValuedFunctor:
    """Parse and fully validate a functor document.

    The ``category`` field is either an inline category document or a path
    relative to the functor file. Identity actions may be omitted.
    """
    _check_header(doc, source, "functor")
    if category is None:
        raw_cat = _expect(doc, source, "category", (str, dict), "path or inline category")
        if isinstance(raw_cat, str):
            cat_path = (base_dir or Path(".")) / raw_cat
            category = load_category(cat_path)
        else:
            category = parse_category(raw_cat, f"{source}:category")
        report = validate_category(category)
        if not report.ok:
            first = report.violations[0]
            raise ParseError(source, "category", f"base category violates law {first.law!r} at {first.witness}")
    variance_code = _expect(doc, source, "variance", str, "'co' or 'contra'")
    if variance_code not in VARIANCE_CODES:
        raise ParseError(source, "variance", f"expected 'co' or 'contra', got {variance_code!r}")
    raw_objects = _expect(doc, source, "objects", dict, "object-to-elements map")
    for obj, elems in raw_objects.items():
        if obj not in category.objects:
            raise ParseError(source, f"objects.{obj}", "undeclared object")
        if not (isinstance(elems, list) and all(isinstance(e, str) for e in elems)):
            raise ParseError(source, f"objects.{obj}", "expected a list of element labels")
    for obj in category.objects:
        if obj not in raw_objects:
            raise ParseError(source, f"objects.{obj}", "missing value set")
    raw_morphisms = _expect(doc, source, "morphisms", dict, "morphism-to-action map")
    known = {m.label for m in category.morphisms}
    for label, action in raw_morphisms.items():
        if label not in known:
            raise ParseError(source, f"morphisms.{label}", "undeclared morphism")
        if not (isinstance(action, dict) and all(isinstance(k, str) and isinstance(v, str) for k, v in action.items())):
            raise ParseError(source, f"morphisms.{label}", "expected an element-to-element map")
    # Law checking (typing, identities, composition) happens here; callers
    # catch FunctorLawError separately from ParseError.
    return validate_functor(category, VARIANCE_CODES[variance_code], raw_objects, raw_morphisms)


def load_functor(path: str | Path, category: FinCategory | None = None) -> SetValuedFunctor:
    p = Path(path)
    return parse_functor(read_document(p), str(p), category, p.parent)


def parse_metric(doc: dict, source: str) -> tuple[list[str], list[list[float]]]:
    """Structural parse of a metric document; axioms are checked separately."""
    _check_header(doc, source, "metric")
    points = _expect(doc, source, "points", list, "list of point labels")
    for i, p in enumerate(points):
        if not isinstance(p, str):
            raise ParseError(source, f"points[{i}]", "point label must be a string")
    rows = _expect(doc, source, "d", list, "square matrix of numbers")
    if len(rows) != len(points):
        raise ParseError(source, "d", f"expected {len(points)} rows, got {len(rows)}")
    for i, row in enumerate(rows):
        if not (isinstance(row, list) and len(row) == len(points)):
            raise ParseError(source, f"d[{i}]", f"expected a row of {len(points)} numbers")
        for j, x in enumerate(row):
            if not isinstance(x, (int, float)) or isinstance(x, bool):
                raise ParseError(source, f"d[{i}][{j}]", "expected a number")
    return list(points), [[float(x) for x in row] for row in rows]


def load_metric_document(path: str | Path) -> tuple[list[str], list[list[float]]]:
    return parse_metric(read_document(path), str(path))


def category_to_dict(category: FinCategory) -> dict:
    return {
        "format": FORMAT_VERSION,
        "kind": "category",
        "objects": list(category.objects),
        "morphisms": [{"id": m.label, "src": m.src, "tgt": m.tgt} for m in category.morphisms],
        "identities": dict(category.identity),
        "compose": sorted([g, f, r] for (g, f), r in category.table.items()),
    }


def functor_to_dict(functor: SetValuedFunctor, category_ref: str | dict | None = None) -> dict:
    return {
        "format": FORMAT_VERSION,
        "kind": "functor",
        "category": category_ref if category_ref is not None else category_to_dict(functor.base),
        "variance": VARIANCE_NAMES[functor.variance],
        "objects": {obj: list(functor.at(obj).elements) for obj in functor.base.objects},
        "morphisms": {m.label: dict(functor.act(m.label).mapping) for m in functor.base.morphisms},
    }


def metric_to_dict(points, matrix) -> dict:
    return {
        "format": FORMAT_VERSION,
        "kind": "metric",
        "points": list(points),
        "d": [[float(x) for x in row] for row in matrix],
    }
