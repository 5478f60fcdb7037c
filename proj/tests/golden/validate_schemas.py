#!/usr/bin/env python3
"""Validate golden outputs and preset files against the JSON schemas."""

import argparse
import copy
import json
import sys
from pathlib import Path

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

PRESET_KINDS = {"e": "curve", "f": "family", "c": "profile"}


def load_registry(schema_dir):
    schemas = {}
    for path in sorted(schema_dir.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        schemas[doc["$id"]] = doc
    registry = Registry().with_resources(
        (sid, Resource.from_contents(doc)) for sid, doc in schemas.items())
    return schemas, registry


def validator_for(kind, schemas, registry):
    schema = schemas[f"{kind}.schema.json"]
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema, registry=registry)


def schema_kind(path, doc):
    if isinstance(doc, dict) and "kind" in doc:
        return doc["kind"]
    stem = path.stem.removeprefix("preset_")
    return PRESET_KINDS.get(stem[:1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--schemas", required=True, type=Path)
    ap.add_argument("--expected", required=True, type=Path)
    ap.add_argument("--presets", type=Path)
    args = ap.parse_args()

    schemas, registry = load_registry(args.schemas)
    files = sorted(args.expected.glob("*.json"))
    if args.presets:
        files += sorted(args.presets.glob("*.json"))

    failures = 0
    checked = 0
    for path in files:
        doc = json.loads(path.read_text())
        kind = schema_kind(path, doc)
        if kind is None:
            print(f"FAIL {path.name}: no schema for this file")
            failures += 1
            continue
        errors = list(validator_for(kind, schemas, registry).iter_errors(doc))
        for err in errors[:5]:
            print(f"FAIL {path.name} ({kind}): {err.json_path}: {err.message}")
        failures += bool(errors)
        checked += 1

        # Every document must be rejected once its kind-specific payload is broken.
        broken = copy.deepcopy(doc)
        if isinstance(broken, dict) and broken:
            broken["unexpected_field"] = {"x": 1}
            first = sorted(k for k in broken if k != "unexpected_field")[0]
            broken[first] = [None]
            if validator_for(kind, schemas, registry).is_valid(broken):
                print(f"FAIL {path.name} ({kind}): mutated document accepted")
                failures += 1

    print(f"{checked - failures}/{checked} documents valid")
    return 1 if failures or checked == 0 else 0


if __name__ == "__main__":
    sys.exit(main())
