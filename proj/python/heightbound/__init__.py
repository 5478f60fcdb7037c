"""Python bindings for the heightbound library.

Every function returns the same JSON structures as the command line tool,
decoded into dictionaries and lists. Rationals are passed as strings such as
"3/4" and exact values come back as strings.
"""

import json

from . import _heightbound as _core
from ._heightbound import (
    DEFAULT_PRECISION,
    SCHEMA_VERSION,
    DomainError,
    Error,
    IndeterminateError,
    ParseError,
    ResourceGuardError,
    exponent_theorems,
    normalize_rational,
    preset_names,
)

__all__ = [
    "DEFAULT_PRECISION",
    "SCHEMA_VERSION",
    "DomainError",
    "Error",
    "IndeterminateError",
    "ParseError",
    "ResourceGuardError",
    "canonical_height",
    "census",
    "curve",
    "evaluate",
    "exponent_theorems",
    "exponents",
    "family_audit",
    "normalize_rational",
    "preset",
    "preset_names",
    "search",
    "weierstrass_height",
]


def preset(name):
    return json.loads(_core.preset_json(name))


def curve(a, b, gx, gy):
    return json.loads(_core.curve_json(str(a), str(b), str(gx), str(gy)))


def canonical_height(a, b, x, y, tol="1/10000000000"):
    return json.loads(_core.canonical_height_json(str(a), str(b), str(x), str(y), str(tol)))


def weierstrass_height(a, b, precision=DEFAULT_PRECISION):
    return json.loads(_core.weierstrass_height_json(str(a), str(b), precision))


def evaluate(expr, direction="upper", precision=DEFAULT_PRECISION):
    return json.loads(_core.eval_json(expr, direction, precision))


def family_audit(family, n, precision=DEFAULT_PRECISION):
    return json.loads(_core.family_audit_json(family, n, precision))


def search(family, n, bound, tol="1/10000000000", preset=None, shards=1):
    return json.loads(_core.search_json(family, n, str(bound), str(tol), preset, shards))


def census(ring, N, r, max_degree, torsion=1, shards=1):
    return json.loads(_core.census_json(ring, N, r, max_degree, torsion, shards))


def exponents(theorem, N=None, r=None, t=None, dim=None):
    return json.loads(_core.exponents_json(theorem, N, r, t, dim))
