"""JSON file formats for algebras and modules.

All numeric values are exact strings (ints are accepted, floats rejected);
indices are 0-based.  Loading a dumped object reproduces it exactly, so
reports and fixtures round-trip byte-for-byte.

Algebra files:
    { "field": "Q" | "Fp:<p>", "dim": n, "unit": [..],
      "structure": [[i, j, l, "val"], ...], "q": [..] }

Module files reuse the envelope ("field", "dim" = algebra dimension) with:
    "star": [[i, j, l, "val"], ...]   structure constants of the product
    "v_dim": m                        carrier dimension
    "action": [[x, v, l, "val"], ...] x_i·e_v = sum val·e_l
    "W": [[..], ...]                  basis rows of the distinguished subspace
    "qmat": [[..], ...]               matrix of the W-idempotent on V
    "c": ["c1", ..., "c8"]
"""

from __future__ import annotations

import json

from .invariant import FiniteAlgebra
from .modules import ModuleData, StarAlgebra
from .scalars import FieldError, field_from_name, field_name


class InputError(ValueError):
    """Malformed input file; the message names the offending field."""


def _parse_value(field, value, where: str):
    if isinstance(value, float):
        raise InputError(f"{where}: float literal {value!r} rejected; use exact strings")
    try:
        return field.parse(value)
    except (FieldError, ValueError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def _render_value(field, value) -> str:
    return field.render(value)


def _need(data: dict, key: str, kind, where: str):
    if key not in data:
        raise InputError(f"{where}: missing key {key!r}")
    value = data[key]
    if kind is not None and not isinstance(value, kind):
        raise InputError(f"{where}: key {key!r} has wrong type {type(value).__name__}")
    return value


def _parse_vector(field, raw, length, where: str):
    if not isinstance(raw, list) or len(raw) != length:
        raise InputError(f"{where}: expected a list of length {length}")
    return tuple(_parse_value(field, v, f"{where}[{i}]") for i, v in enumerate(raw))


def _parse_triples(field, raw, shape, where: str):
    """Sparse 4-tuples [i, j, l, value] with per-position bounds."""
    out = []
    if not isinstance(raw, list):
        raise InputError(f"{where}: expected a list of [i, j, l, value] entries")
    for n, entry in enumerate(raw):
        tag = f"{where}[{n}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise InputError(f"{tag}: expected [i, j, l, value]")
        i, j, l, value = entry
        for name, idx, bound in (("i", i, shape[0]), ("j", j, shape[1]), ("l", l, shape[2])):
            if not isinstance(idx, int) or isinstance(idx, bool) or not 0 <= idx < bound:
                raise InputError(f"{tag}: index {name}={idx!r} out of range [0, {bound})")
        out.append((i, j, l, _parse_value(field, value, f"{tag}.value")))
    return out


def _load(source) -> dict:
    if isinstance(source, dict):
        return source
    with open(source, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{source}: invalid JSON: {exc}") from exc


def load_algebra(source):
    """Read an algebra file; returns (FiniteAlgebra, q coordinates)."""
    data = _load(source)
    field = field_from_name(_need(data, "field", str, "algebra"))
    dim = _need(data, "dim", int, "algebra")
    if dim <= 0:
        raise InputError("algebra: dim must be positive")
    unit = _parse_vector(field, _need(data, "unit", list, "algebra"), dim, "unit")
    entries = _parse_triples(
        field, _need(data, "structure", list, "algebra"), (dim, dim, dim), "structure"
    )
    q = _parse_vector(field, _need(data, "q", list, "algebra"), dim, "q")
    try:
        algebra = FiniteAlgebra(field, dim, unit, entries)
    except Exception as exc:
        raise InputError(f"algebra: {exc}") from exc
    return algebra, q


def dump_algebra(algebra: FiniteAlgebra, q) -> dict:
    f = algebra.field
    return {
        "field": field_name(f),
        "dim": algebra.dim,
        "unit": [_render_value(f, v) for v in algebra.unit],
        "structure": [
            [i, j, l, _render_value(f, value)]
            for i, j, l, value in algebra.structure_entries()
        ],
        "q": [_render_value(f, v) for v in q],
    }


def load_module(source) -> ModuleData:
    data = _load(source)
    field = field_from_name(_need(data, "field", str, "module"))
    dim = _need(data, "dim", int, "module")
    v_dim = _need(data, "v_dim", int, "module")
    if dim <= 0 or v_dim < 0:
        raise InputError("module: dim must be positive and v_dim non-negative")
    star_entries = _parse_triples(
        field, _need(data, "star", list, "module"), (dim, dim, dim), "star"
    )
    star = StarAlgebra(field, dim, star_entries)
    action_triples = _parse_triples(
        field, _need(data, "action", list, "module"), (dim, v_dim, v_dim), "action"
    )
    action = [
        [[field.zero for _ in range(v_dim)] for _ in range(v_dim)] for _ in range(dim)
    ]
    for x, v, l, value in action_triples:
        action[x][l][v] = field.add(action[x][l][v], value)
    w_raw = _need(data, "W", list, "module")
    w_basis = [
        _parse_vector(field, row, v_dim, f"W[{i}]") for i, row in enumerate(w_raw)
    ]
    qmat_raw = _need(data, "qmat", list, "module")
    if len(qmat_raw) != v_dim:
        raise InputError(f"qmat: expected {v_dim} rows")
    qmat = [
        _parse_vector(field, row, v_dim, f"qmat[{i}]") for i, row in enumerate(qmat_raw)
    ]
    c_raw = _need(data, "c", list, "module")
    if len(c_raw) != 8:
        raise InputError("c: expected exactly 8 entries")
    c = [_parse_value(field, v, f"c[{i}]") for i, v in enumerate(c_raw)]
    try:
        return ModuleData(star, v_dim, w_basis, qmat, action, c)
    except Exception as exc:
        raise InputError(f"module: {exc}") from exc


def dump_module(m: ModuleData) -> dict:
    f = m.field
    action = []
    for x, mat in enumerate(m.action):
        for l, row in enumerate(mat):
            for v, value in enumerate(row):
                if not f.is_zero(value):
                    action.append([x, v, l, _render_value(f, value)])
    return {
        "field": field_name(f),
        "dim": m.star.dim,
        "star": [
            [i, j, l, _render_value(f, value)]
            for i, j, l, value in m.star.structure_entries()
        ],
        "v_dim": m.v_dim,
        "action": action,
        "W": [[_render_value(f, v) for v in row] for row in m.w_basis],
        "qmat": [[_render_value(f, v) for v in row] for row in m.qmat],
        "c": [_render_value(f, v) for v in m.c],
    }


def write_json(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
