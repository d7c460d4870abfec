"""JSON multivector files.

Format (UTF-8 JSON object):

    {"dim": n, "grade": k, "dual": false,
     "terms": [{"indices": [i1, ..., ik], "coeff": "p/q"}, ...]}

Indices are 1-based and strictly increasing; a coefficient is a JSON integer
or a string holding an optionally signed integer or "p/q".  Duplicate index
sets, floats, zero denominators, and out-of-range indices are input errors
that name the offending term.  Emission normalizes: terms sorted by index
tuple, coefficients in lowest terms, integers emitted as JSON numbers.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .multivector import Coeff, InputError, Multivector, mask_of

_COEFF_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_coeff(raw: Any, where: str) -> Coeff:
    if isinstance(raw, bool):
        raise InputError(f"{where}: coeff must be an integer or 'p/q' string")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str):
        if not _COEFF_RE.match(raw):
            raise InputError(f"{where}: malformed coefficient {raw!r}")
        try:
            return Fraction(raw)
        except ZeroDivisionError:
            raise InputError(f"{where}: zero denominator in {raw!r}") from None
    raise InputError(f"{where}: coeff must be an integer or 'p/q' string, got {raw!r}")


def parse_multivector(obj: Any) -> Multivector:
    """Build a multivector from a decoded JSON object, validating everything."""
    if not isinstance(obj, dict):
        raise InputError(f"expected a JSON object, got {type(obj).__name__}")
    for field in ("dim", "grade"):
        if field not in obj:
            raise InputError(f"missing field {field!r}")
        if isinstance(obj[field], bool) or not isinstance(obj[field], int):
            raise InputError(f"field {field!r} must be an integer")
    dim, grade = obj["dim"], obj["grade"]
    dual = obj.get("dual", False)
    if not isinstance(dual, bool):
        raise InputError("field 'dual' must be a boolean")
    raw_terms = obj.get("terms", [])
    if not isinstance(raw_terms, list):
        raise InputError("field 'terms' must be an array")
    terms: dict[int, Coeff] = {}
    for pos, item in enumerate(raw_terms):
        where = f"term {pos}"
        if not isinstance(item, dict) or "indices" not in item or "coeff" not in item:
            raise InputError(f"{where}: expected {{'indices': [...], 'coeff': ...}}")
        idx = item["indices"]
        if not isinstance(idx, list) or not all(
            isinstance(i, int) and not isinstance(i, bool) for i in idx
        ):
            raise InputError(f"{where}: indices must be a list of integers")
        where = f"term {pos} (indices {idx})"
        if len(idx) != grade:
            raise InputError(f"{where}: expected {grade} indices")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise InputError(f"{where}: indices must be strictly increasing")
        if idx and (idx[0] < 1 or idx[-1] > dim):
            raise InputError(f"{where}: indices must lie in [1, {dim}]")
        mask = mask_of(idx)
        if mask in terms:
            raise InputError(f"{where}: duplicate index set")
        terms[mask] = _parse_coeff(item["coeff"], where)
    return Multivector(dim, grade, terms, dual)


def emit_multivector(m: Multivector) -> dict:
    """JSON-ready dict for a multivector, in normalized form."""
    terms = []
    for idx, c in m.items():
        if isinstance(c, Fraction):
            coeff = int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        else:
            coeff = c
        terms.append({"indices": list(idx), "coeff": coeff})
    return {"dim": m.dim, "grade": m.grade, "dual": m.dual, "terms": terms}


def loads(text: str) -> Multivector:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON: {e}") from None
    return parse_multivector(obj)


def dumps(m: Multivector) -> str:
    return json.dumps(emit_multivector(m), indent=2)


def load(path: str) -> Multivector:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(m: Multivector, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(m) + "\n")


def load_family(path: str) -> list[Multivector]:
    """Parse a JSON array of multivector objects."""
    with open(path, encoding="utf-8") as fh:
        try:
            arr = json.load(fh)
        except json.JSONDecodeError as e:
            raise InputError(f"malformed JSON: {e}") from None
    if not isinstance(arr, list):
        raise InputError("family file must hold a JSON array of multivectors")
    out = []
    for i, obj in enumerate(arr):
        try:
            out.append(parse_multivector(obj))
        except InputError as e:
            raise InputError(f"family entry {i}: {e}") from None
    return out
