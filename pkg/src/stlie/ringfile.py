"""Loading ring descriptions from TOML files and preset strings.

A ring file either names a preset:

    preset = "matrix"
    p = 2
    k = 2

or spells the algebra out:

    field = "gf(2)"
    basis = ["1", "x"]
    unit = "1"
    mul = [
        [0, 0, [[0, 1]]],
        [0, 1, [[1, 1]]],
        [1, 0, [[1, 1]]],
        [1, 1, []],
    ]

Each mul entry is [i, j, pairs] giving r_i * r_j as a list of
[basis_index, coefficient] pairs; omitted products are zero.  Rational
coefficients may be written as integers or "a/b" strings.  Preset strings
for the command line use colon-separated forms such as gf:2, poly:2:x^2,
dual:3, matrix:2:2, group:3:s3, group:2:c4.
"""
from __future__ import annotations

import re
from fractions import Fraction

try:
    import tomllib  # python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from .fields import Field
from .rings import (
    AlgebraSpec,
    cyclic_group_table,
    preset_dual_numbers,
    preset_gf,
    preset_group_algebra,
    preset_matrix,
    preset_poly_quotient,
    symmetric_group_table,
    validate_algebra,
)


class RingFormatError(ValueError):
    """Raised for malformed ring files or preset strings."""


def _parse_field(text) -> Field:
    if not isinstance(text, str):
        raise RingFormatError("field must be a string like 'gf(5)' or 'rational'")
    s = text.strip().lower()
    if s in ("rational", "q", "qq"):
        return Field(0)
    m = re.fullmatch(r"gf\((\d+)\)", s)
    if not m:
        raise RingFormatError(f"unrecognised field {text!r}")
    try:
        return Field(int(m.group(1)))
    except ValueError as exc:
        raise RingFormatError(str(exc)) from None


def _parse_coeff(value, field: Field):
    if isinstance(value, bool):
        raise RingFormatError("coefficients must be numbers")
    if isinstance(value, int):
        return field.scalar(value)
    if isinstance(value, str) and field.is_rational:
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise RingFormatError(f"bad rational coefficient {value!r}") from None
    raise RingFormatError(f"bad coefficient {value!r} for field {field}")


def _from_explicit(doc: dict) -> AlgebraSpec:
    for key in ("field", "basis", "unit", "mul"):
        if key not in doc:
            raise RingFormatError(f"ring file is missing the {key!r} key")
    field = _parse_field(doc["field"])
    basis = doc["basis"]
    if (not isinstance(basis, list) or not basis
            or any(not isinstance(b, str) for b in basis)):
        raise RingFormatError("basis must be a non-empty list of names")
    if len(set(basis)) != len(basis):
        raise RingFormatError("basis names must be distinct")
    d = len(basis)
    if doc["unit"] not in basis:
        raise RingFormatError(f"unit {doc['unit']!r} is not a basis name")
    unit_index = basis.index(doc["unit"])
    mul = field.zeros((d, d, d))
    seen = set()
    if not isinstance(doc["mul"], list):
        raise RingFormatError("mul must be a list of [i, j, pairs] entries")
    for entry in doc["mul"]:
        if (not isinstance(entry, list) or len(entry) != 3
                or not isinstance(entry[0], int) or not isinstance(entry[1], int)
                or not isinstance(entry[2], list)):
            raise RingFormatError(f"bad mul entry {entry!r}")
        i, j, pairs = entry
        if not (0 <= i < d and 0 <= j < d):
            raise RingFormatError(f"mul entry {entry!r} indexes outside the basis")
        if (i, j) in seen:
            raise RingFormatError(f"duplicate mul entry for ({i}, {j})")
        seen.add((i, j))
        for pair in pairs:
            if not isinstance(pair, list) or len(pair) != 2 or not isinstance(pair[0], int):
                raise RingFormatError(f"bad coefficient pair {pair!r}")
            k, c = pair
            if not 0 <= k < d:
                raise RingFormatError(f"coefficient pair {pair!r} indexes outside the basis")
            mul[i, j, k] = field.reduce(mul[i, j, k] + _parse_coeff(c, field))
    name = doc.get("name", "ring")
    spec = AlgebraSpec(field, d, tuple(basis), unit_index, mul, name=str(name))
    bad = validate_algebra(spec)
    if bad:
        v = bad[0]
        raise RingFormatError(f"ring fails validation ({v.kind} at {v.where}): {v.message}")
    return spec


_GROUP_NAMES = {"s2": 2, "s3": 3, "s4": 4}


def _group_table(tag: str):
    tag = tag.lower()
    if tag in _GROUP_NAMES:
        return symmetric_group_table(_GROUP_NAMES[tag]), tag
    m = re.fullmatch(r"c(\d+)", tag)
    if m and int(m.group(1)) >= 1:
        return cyclic_group_table(int(m.group(1))), tag
    raise RingFormatError(f"unknown group {tag!r}; use s2/s3/s4 or cN")


def _from_preset_doc(doc: dict) -> AlgebraSpec:
    kind = doc["preset"]
    try:
        if kind == "gf":
            return preset_gf(int(doc["p"]))
        if kind in ("poly", "poly_quotient"):
            return preset_poly_quotient(int(doc["p"]), str(doc["f"]))
        if kind in ("dual", "dual_numbers"):
            return preset_dual_numbers(int(doc["p"]))
        if kind == "matrix":
            return preset_matrix(int(doc["p"]), int(doc["k"]))
        if kind in ("group", "group_algebra"):
            if "table" in doc:
                return preset_group_algebra(int(doc["p"]), doc["table"])
            table, tag = _group_table(str(doc["g"]))
            return preset_group_algebra(int(doc["p"]), table, name=tag)
    except KeyError as exc:
        raise RingFormatError(f"preset {kind!r} is missing parameter {exc.args[0]!r}") from None
    except ValueError as exc:
        raise RingFormatError(str(exc)) from None
    raise RingFormatError(f"unknown preset {kind!r}")


def load_ring_text(text: str) -> AlgebraSpec:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise RingFormatError(f"not valid TOML: {exc}") from None
    if "preset" in doc:
        return _from_preset_doc(doc)
    return _from_explicit(doc)


def load_ring(path) -> AlgebraSpec:
    with open(path, "rb") as fh:
        text = fh.read().decode("utf-8")
    return load_ring_text(text)


def ring_from_preset_string(text: str) -> AlgebraSpec:
    """Parse CLI shorthand like gf:2, poly:2:x^2, matrix:2:2, group:3:s3."""
    parts = text.split(":")
    kind = parts[0].lower()
    try:
        if kind == "gf" and len(parts) == 2:
            return preset_gf(int(parts[1]))
        if kind in ("poly", "poly_quotient") and len(parts) == 3:
            return preset_poly_quotient(int(parts[1]), parts[2])
        if kind in ("dual", "dual_numbers") and len(parts) == 2:
            return preset_dual_numbers(int(parts[1]))
        if kind == "matrix" and len(parts) == 3:
            return preset_matrix(int(parts[1]), int(parts[2]))
        if kind in ("group", "group_algebra") and len(parts) == 3:
            table, tag = _group_table(parts[2])
            return preset_group_algebra(int(parts[1]), table, name=tag)
    except ValueError as exc:
        raise RingFormatError(str(exc)) from None
    raise RingFormatError(
        f"unrecognised preset {text!r}; expected gf:P, poly:P:F, dual:P, "
        f"matrix:P:K or group:P:NAME")
