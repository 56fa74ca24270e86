"""Access to the bundled fixture corpus.

The corpus is the desk-scale test bed everything is exercised against:
five small categories, two presheaves and two copresheaves per category,
and five metric spaces. Files live under ``catspan/fixtures`` and use the
documented JSON format, so they double as CLI input examples.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .fileformat import load_functor, load_metric_document, load_valid_category
from .fincat import FinCategory
from .setfunc import SetValuedFunctor
from .tightspan import FiniteMetricSpace, validate_metric

CATEGORIES = ("terminal", "discrete2", "arrow", "z2", "square")

PRESHEAVES = {
    "terminal": ("terminal_pair", "terminal_empty"),
    "discrete2": ("discrete2_ab", "discrete2_pair0"),
    "arrow": ("arrow_pq_r", "arrow_point"),
    "z2": ("z2_regular", "z2_two_fixed"),
    "square": ("square_hom_to_d", "square_point"),
}

COPRESHEAVES = {
    "terminal": ("terminal_single", "terminal_pair"),
    "discrete2": ("discrete2_ab", "discrete2_pair0"),
    "arrow": ("arrow_hom_from_a", "arrow_point"),
    "z2": ("z2_regular", "z2_single"),
    "square": ("square_hom_from_a", "square_point"),
}

METRICS = ("two_point", "triangle345", "equilateral3", "collinear3", "random5")


def fixture_path(filename: str) -> Path:
    path = Path(str(resources.files("catspan") / "fixtures" / filename))
    if not path.exists():
        raise FileNotFoundError(f"no bundled fixture {filename!r}")
    return path


def load_corpus_category(name: str) -> FinCategory:
    category, report = load_valid_category(fixture_path(f"{name}.category.json"))
    if not report.ok:
        raise RuntimeError(f"bundled category {name!r} fails validation: {report.violations}")
    return category


def load_corpus_presheaf(name: str, category: FinCategory | None = None) -> SetValuedFunctor:
    return load_functor(fixture_path(f"{name}.presheaf.json"), category)


def load_corpus_copresheaf(name: str, category: FinCategory | None = None) -> SetValuedFunctor:
    return load_functor(fixture_path(f"{name}.copresheaf.json"), category)


def load_corpus_metric(name: str, tol: float = 1e-9) -> FiniteMetricSpace:
    points, matrix = load_metric_document(fixture_path(f"{name}.metric.json"))
    return validate_metric(points, matrix, tol)


def corpus_categories() -> dict[str, FinCategory]:
    return {name: load_corpus_category(name) for name in CATEGORIES}


def corpus_presheaves(name: str, category: FinCategory | None = None) -> list[SetValuedFunctor]:
    category = category or load_corpus_category(name)
    return [load_corpus_presheaf(f, category) for f in PRESHEAVES[name]]


def corpus_copresheaves(name: str, category: FinCategory | None = None) -> list[SetValuedFunctor]:
    category = category or load_corpus_category(name)
    return [load_corpus_copresheaf(f, category) for f in COPRESHEAVES[name]]


def corpus_metrics() -> dict[str, FiniteMetricSpace]:
    return {name: load_corpus_metric(name) for name in METRICS}
