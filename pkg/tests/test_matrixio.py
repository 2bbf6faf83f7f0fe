from __future__ import annotations

import json

import numpy as np
import pytest

from ybe4.errors import ParseError
from ybe4.matrixio import (
    matrix_payload,
    payload_matrix,
    read_matrix_file,
    rows_to_matrix,
    write_matrix_file,
)


def test_round_trip_is_bit_identical(tmp_path):
    rng = np.random.default_rng(7)
    M = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    first = tmp_path / "m.json"
    second = tmp_path / "m2.json"
    write_matrix_file(str(first), M, {"name": "random"})
    back, metadata = read_matrix_file(str(first))
    assert np.array_equal(back, M)
    assert metadata == {"name": "random"}
    write_matrix_file(str(second), back, metadata)
    assert first.read_bytes() == second.read_bytes()


def test_payload_shape():
    payload = matrix_payload(np.eye(2), {"family": "F5"})
    assert payload["version"] == "1"
    assert payload["dim"] == 2
    assert payload["rows"][0][0] == [1.0, 0.0]
    assert payload["metadata"] == {"family": "F5"}
    M, metadata = payload_matrix(payload)
    assert np.array_equal(M, np.eye(2))
    assert metadata == {"family": "F5"}


def test_metadata_optional():
    payload = matrix_payload(np.eye(2))
    assert "metadata" not in payload
    _, metadata = payload_matrix(payload)
    assert metadata == {}


def test_rejects_bad_version():
    payload = matrix_payload(np.eye(2))
    payload["version"] = "2"
    with pytest.raises(ParseError):
        payload_matrix(payload)


def test_rejects_dim_mismatch():
    payload = matrix_payload(np.eye(2))
    payload["dim"] = 3
    with pytest.raises(ParseError):
        payload_matrix(payload)


def test_rejects_ragged_rows():
    with pytest.raises(ParseError):
        rows_to_matrix([[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0]]])


def test_rejects_non_pair_entries():
    with pytest.raises(ParseError):
        rows_to_matrix([[[1.0, 0.0, 0.0]]])
    with pytest.raises(ParseError):
        rows_to_matrix([[["1", "0"]]])


def test_rejects_non_finite():
    with pytest.raises(ParseError):
        rows_to_matrix([[[float("nan"), 0.0]]])


def test_rejects_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ not json")
    with pytest.raises(ParseError):
        read_matrix_file(str(path))
    with pytest.raises(ParseError):
        read_matrix_file(str(tmp_path / "absent.json"))


def test_rejects_non_object(tmp_path):
    path = tmp_path / "list.json"
    path.write_text(json.dumps([1, 2, 3]))
    with pytest.raises(ParseError):
        read_matrix_file(str(path))


def test_rejects_nonsquare():
    with pytest.raises(ValueError):
        matrix_payload(np.ones((2, 3)))
