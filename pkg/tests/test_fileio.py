"""File formats: exact-string values, round-trips, diagnostics."""

import json
from fractions import Fraction

import pytest

from qinvar.fileio import (
    InputError,
    dump_algebra,
    dump_module,
    load_algebra,
    load_module,
    write_json,
)
from qinvar.invariant import invariant_subalgebra, matrix_algebra
from qinvar.modules import check_module_axioms, regular_module
from qinvar.scalars import GF, QQ

from conftest import lower_triangular_2x2


def test_algebra_round_trip_q(m2_qq, tmp_path):
    algebra, q = m2_qq
    payload = dump_algebra(algebra, q)
    path = tmp_path / "alg.json"
    write_json(path, payload)
    loaded, q2 = load_algebra(str(path))
    assert q2 == q
    assert dump_algebra(loaded, q2) == payload


def test_algebra_round_trip_gf():
    algebra = lower_triangular_2x2(GF(3))
    payload = dump_algebra(algebra, (1, 0, 0))
    loaded, q = load_algebra(payload)
    assert q == (1, 0, 0)
    assert dump_algebra(loaded, q) == payload
    assert payload["q"] == ["1 mod 3", "0 mod 3", "0 mod 3"]


def test_rational_values_serialize_as_strings(m2_qq):
    algebra, q = m2_qq
    payload = dump_algebra(algebra, q)
    assert payload["unit"] == ["1", "0", "0", "1"]
    assert all(isinstance(e[3], str) for e in payload["structure"])


def test_float_rejected():
    payload = {
        "field": "Q",
        "dim": 1,
        "unit": [1.0],
        "structure": [[0, 0, 0, "1"]],
        "q": ["1"],
    }
    with pytest.raises(InputError, match="float"):
        load_algebra(payload)


def test_missing_key_diagnostic():
    with pytest.raises(InputError, match="missing key 'unit'"):
        load_algebra({"field": "Q", "dim": 1, "structure": [], "q": ["0"]})


def test_bad_index_diagnostic():
    payload = {
        "field": "Q",
        "dim": 1,
        "unit": ["1"],
        "structure": [[0, 0, 3, "1"]],
        "q": ["0"],
    }
    with pytest.raises(InputError, match=r"structure\[0\].*out of range"):
        load_algebra(payload)


def test_non_associative_structure_rejected():
    payload = {
        "field": "Q",
        "dim": 2,
        "unit": ["1", "0"],
        "structure": [[0, 0, 0, "1"], [1, 1, 0, "1"]],
        "q": ["1", "0"],
    }
    with pytest.raises(InputError):
        load_algebra(payload)


def test_module_round_trip(inv_m2_qq, tmp_path):
    m = regular_module(inv_m2_qq)
    payload = dump_module(m)
    path = tmp_path / "mod.json"
    write_json(path, payload)
    loaded = load_module(str(path))
    assert dump_module(loaded) == payload
    assert check_module_axioms(loaded).ok
    assert loaded.c == m.c and loaded.qmat == m.qmat and loaded.action == m.action


def test_module_validation():
    base = {
        "field": "Fp:2",
        "dim": 1,
        "star": [],
        "v_dim": 2,
        "action": [[0, 0, 1, "1"]],
        "W": [["0", "1"]],
        "qmat": [["1", "0"], ["0", "0"]],
        "c": ["1", "0", "0", "0", "0", "0", "0", "0"],
    }
    assert check_module_axioms(load_module(base)).ok
    bad = dict(base, c=["1"])
    with pytest.raises(InputError, match="c: expected exactly 8"):
        load_module(bad)
    bad = dict(base, qmat=[["1", "0"]])
    with pytest.raises(InputError, match="qmat"):
        load_module(bad)
    bad = dict(base, action=[[0, 5, 1, "1"]])
    with pytest.raises(InputError, match="out of range"):
        load_module(bad)


def test_write_json_is_deterministic(tmp_path, m2_qq):
    algebra, q = m2_qq
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    write_json(p1, dump_algebra(algebra, q))
    write_json(p2, dump_algebra(algebra, q))
    assert p1.read_bytes() == p2.read_bytes()


def test_invalid_json_diagnostic(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(InputError, match="invalid JSON"):
        load_algebra(str(path))
