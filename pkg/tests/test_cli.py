from __future__ import annotations

import json

import numpy as np
import pytest

from ybe4.cli import main
from ybe4.core import swap_matrix
from ybe4.matrixio import read_matrix_file, write_matrix_file

HADA = np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1, -1, 0],
        [-1, 0, 0, 1],
    ],
    dtype=complex,
) / np.sqrt(2)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out else None
    return code, report, captured.err


def rows_to_array(rows):
    return np.array([[complex(*entry) for entry in row] for row in rows])


@pytest.fixture
def fixtures(tmp_path):
    paths = {}
    mats = {
        "identity": np.eye(4, dtype=complex),
        "swap": swap_matrix(2).astype(complex),
        "hada_swap": HADA @ swap_matrix(2),
    }
    rng = np.random.default_rng(3)
    mats["random"] = (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))) / 2
    mats["small"] = np.eye(2, dtype=complex)
    for name, M in mats.items():
        path = tmp_path / f"{name}.json"
        write_matrix_file(str(path), M, {"name": name})
        paths[name] = str(path)
    return paths


def test_verify_identity_both_forms(capsys, fixtures):
    code, report, err = run(capsys, "verify", fixtures["identity"], "--form", "both")
    assert code == 0
    assert report["verdict"] == "pass"
    assert len(report["checks"]) == 6
    assert all(c["residual"] == 0.0 for c in report["checks"])
    assert "verify: pass" in err


def test_verify_braided_solution(capsys, fixtures):
    code, report, _ = run(capsys, "verify", fixtures["hada_swap"])
    assert code == 0
    names = [c["name"] for c in report["checks"]]
    assert names == ["braided embedding", "braided contraction", "braided route agreement"]


def test_verify_random_fails(capsys, fixtures):
    code, report, _ = run(capsys, "verify", fixtures["random"])
    assert code == 1
    assert report["verdict"] == "fail"
    assert report["checks"][0]["residual"] > 1.0


def test_verify_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ nope")
    code, report, _ = run(capsys, "verify", str(bad))
    assert code == 2
    assert report["error"]["type"] == "ParseError"


def test_verify_dimension_error(capsys, fixtures):
    code, report, _ = run(capsys, "verify", fixtures["small"])
    assert code == 3
    assert report["error"]["type"] == "DimensionError"


def test_verify_res_tol_flag(capsys, fixtures):
    # loosening the bound far enough turns the random matrix into a "pass"
    code, report, _ = run(
        capsys, "verify", fixtures["random"], "--res-tol", "1e6"
    )
    assert code == 0 and report["verdict"] == "pass"


def test_generate_explicit_diagonal_params(capsys, tmp_path):
    out = tmp_path / "out"
    code, report, _ = run(
        capsys,
        "generate",
        "--family", "1",
        "--params", "p=1,q=1,r=1,Q=I",
        "--out-dir", str(out),
    )
    assert code == 0
    M, metadata = read_matrix_file(report["members"][0]["path"])
    assert np.array_equal(M, swap_matrix(2).astype(complex))
    assert metadata["family"] == "F1"


def test_generate_scalar_family_members(capsys):
    code, report, _ = run(capsys, "generate", "--family", "5", "--count", "3", "--seed", "2")
    assert code == 0
    assert len(report["members"]) == 3
    for member in report["members"]:
        M = rows_to_array(member["matrix"]["rows"])
        k = M[0, 0]
        assert abs(abs(k) - 1.0) < 1e-12
        assert np.abs(M - k * np.eye(4)).max() < 1e-12


def test_generate_members_verify(capsys, tmp_path, fixtures):
    out = tmp_path / "gen4"
    code, report, _ = run(
        capsys, "generate", "--family", "4", "--seed", "7", "--count", "10",
        "--out-dir", str(out),
    )
    assert code == 0
    assert len(report["members"]) == 10
    for member in report["members"]:
        vcode, vreport, _ = run(capsys, "verify", member["path"])
        assert vcode == 0 and vreport["verdict"] == "pass"


def test_generate_constraint_violation(capsys):
    # the free-Gram family has no valid member over Q = I
    code, report, _ = run(capsys, "generate", "--family", "2", "--params", "Q=I")
    assert code == 4
    assert report["error"]["type"] == "ConstraintViolation"


def test_generate_rejects_bad_family(capsys):
    code, report, _ = run(capsys, "generate", "--family", "7")
    assert code == 4


def test_generate_rejects_unknown_param(capsys):
    code, report, _ = run(capsys, "generate", "--family", "5", "--params", "p=1")
    assert code == 4
    code, report, _ = run(capsys, "generate", "--family", "1", "--params", "p=oops")
    assert code == 2


def test_classify_fixed_points(capsys, fixtures):
    for name, family, entangling in (
        ("identity", "F5", False),
        ("swap", "F1", False),
        ("hada_swap", "F4", True),
    ):
        code, report, _ = run(capsys, "classify", fixtures[name])
        assert code == 0
        assert report["family"] == family
        assert report["entangling"] is entangling
        assert report["certificate_residual"] <= 1e-6
    # the entangling witness comes with its achieved output determinant
    code, report, _ = run(capsys, "classify", fixtures["hada_swap"])
    assert report["witness"]["output_pair_determinant"] >= 0.4


def test_classify_not_a_solution(capsys, fixtures):
    code, report, _ = run(capsys, "classify", fixtures["random"])
    assert code == 5
    assert report["error"]["type"] in ("NotASolution", "NotUnitary")


def test_filter_single_sample(capsys):
    code, report, _ = run(capsys, "filter", "--samples", "1", "--seed", "0")
    assert code == 0
    assert len(report["candidates"]) == 11
    for name in ("R01", "R02", "R03"):
        row = report["candidates"][name]
        assert row["attempts"] == 1 and row["pass_rate"] == 1.0


def test_filter_determinism(capsys):
    _, first, _ = run(capsys, "filter", "--samples", "25", "--seed", "4")
    _, second, _ = run(capsys, "filter", "--samples", "25", "--seed", "4")
    assert first == second


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("YBE4_SEED", "4")
    _, via_env, _ = run(capsys, "filter", "--samples", "25")
    _, via_flag, _ = run(capsys, "filter", "--samples", "25", "--seed", "4")
    assert via_env == via_flag
    monkeypatch.setenv("YBE4_SEED", "not-a-number")
    code, report, _ = run(capsys, "generate", "--family", "5")
    assert code == 2


def test_bracket_trivial_seed(capsys):
    code, report, _ = run(capsys, "bracket", "--r", "1", "--g", "0", "--p", "0")
    assert code == 0
    R = rows_to_array(report["solution"]["rows"])
    want = np.array(
        [
            [0, 0, 0, -1j],
            [0, 1j, 0, 0],
            [0, 0, 1j, 0],
            [-1j, 0, 0, 0],
        ]
    )
    assert np.array_equal(R, want)


def test_bracket_emit_family(capsys):
    code, report, _ = run(
        capsys, "bracket", "--r", "0.5", "--g", "0.3", "--p", "1.1", "--emit-family"
    )
    assert code == 0
    assert report["verdict"] == "pass"
    family = report["family"]
    assert family["tag"] == "F3"
    assert abs(complex(*family["p0"])) == pytest.approx(0.5, abs=1e-9)
    assert max(family["constraint_defects"]) <= 1e-9


def test_bracket_degenerate_radius(capsys):
    code, report, _ = run(capsys, "bracket", "--r", "0", "--emit-family")
    assert code == 6
    assert report["error"]["type"] == "DegenerateParameter"
    # without the reduction r = 0 is a fine seed
    code, report, _ = run(capsys, "bracket", "--r", "0")
    assert code == 0


def test_bracket_out_of_range(capsys):
    code, report, _ = run(capsys, "bracket", "--r", "1.5")
    assert code == 4


def test_bracket_out_dir(capsys, tmp_path):
    out = tmp_path / "bk"
    code, report, _ = run(capsys, "bracket", "--r", "0.7", "--out-dir", str(out))
    assert code == 0
    R, _ = read_matrix_file(report["paths"]["solution"])
    assert R.shape == (4, 4)
    N, _ = read_matrix_file(report["paths"]["seed"])
    assert N.shape == (2, 2)


def test_usage_error_exits_two(capsys):
    assert main(["no-such-command"]) == 2
    assert main([]) == 2
    capsys.readouterr()
