"""Access to the shipped JSON schemas and document validation."""

from __future__ import annotations

import functools
import json
from importlib import resources

import jsonschema


class SchemaError(ValueError):
    """A document does not match its schema."""


SCHEMA_NAMES = (
    "formula",
    "partial_type",
    "alphabet",
    "theory_config",
    "certificate",
    "rank_report",
    "harness_report",
)


@functools.lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    if name not in SCHEMA_NAMES:
        raise KeyError(f"unknown schema {name!r}")
    text = resources.files("ddrank.schemas").joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)


@functools.lru_cache(maxsize=None)
def _validator(name: str):
    # schemas are self-contained (shared shapes live in local $defs)
    return jsonschema.Draft202012Validator(load_schema(name))


def validate(doc, schema_name: str) -> None:
    """Raise :class:`SchemaError` when ``doc`` violates the named schema."""
    errors = sorted(_validator(schema_name).iter_errors(doc), key=str)
    if errors:
        first = errors[0]
        path = "/".join(str(p) for p in first.absolute_path) or "<root>"
        raise SchemaError(f"{schema_name}: {first.message} (at {path})")
