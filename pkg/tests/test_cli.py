import json
import subprocess
import sys

import pytest

from mcgcohom import catalog
from mcgcohom.cli import Command, JobSpec, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_h1_main_example(capsys, data_dir):
    code, out, _ = run(capsys, "h1", str(data_dir / "two_curve_g4_r0.json"))
    assert code == 0
    rep = json.loads(out)
    assert rep["dimension"] == 1
    assert rep["surface"] == {"g": 4, "r": 0, "n": 2}
    assert set(rep) == {"dimension", "surviving_basis", "intermediate", "surface"}


def test_h1_details(capsys, data_dir):
    code, out, _ = run(capsys, "h1", str(data_dir / "two_curve_g4_r0.json"), "--details")
    assert code == 0
    assert "components" in json.loads(out)


def test_h1_empty_torus_two_holes(capsys, data_dir):
    code, out, _ = run(capsys, "h1", str(data_dir / "empty_g1_r2.json"))
    assert code == 0 and json.loads(out)["dimension"] == 2


def test_h1_trivial_curve(capsys, data_dir):
    code, out, _ = run(capsys, "h1", str(data_dir / "trivial_curve.json"))
    assert code == 2
    assert [v["code"] for v in json.loads(out)["violations"]] == ["trivial curve"]


def test_h1_size_limit(capsys, data_dir):
    code, out, _ = run(capsys, "h1", str(data_dir / "two_curve_g4_r0.json"), "--qprime-cap", "1")
    assert code == 3 and out == ""


def test_h1_bad_input(capsys, tmp_path):
    missing = tmp_path / "missing.json"
    code, out, err = run(capsys, "h1", str(missing))
    assert code == 1 and out == "" and "cannot read" in err
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, out, err = run(capsys, "h1", str(broken))
    assert code == 1 and "invalid JSON" in err
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"components": [{"genus": 1}], "curves": [{"id": "c", "ends": []}]}))
    assert run(capsys, "h1", str(wrong))[0] == 1


def test_h1_roundtrip_catalog(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(catalog.nonseparating_curve(2, 3).to_json()))
    code, out, _ = run(capsys, "h1", str(path))
    assert code == 0 and json.loads(out)["dimension"] == 4


def test_shapiro_sign(capsys, data_dir):
    code, out, _ = run(capsys, "shapiro", str(data_dir / "s3_sign.json"))
    assert code == 0
    rep = json.loads(out)
    assert rep["cocycle_valid"] is True
    assert rep["coboundary"] is False
    assert rep["h1_count"] == 2
    assert len(rep["table_digest"]) == 64


def test_shapiro_zero(capsys, data_dir):
    code, out, _ = run(capsys, "shapiro", str(data_dir / "s3_zero.json"))
    rep = json.loads(out)
    assert code == 0 and rep["coboundary"] is True
    assert rep["witness"] == {"1": 0, "2": 0, "3": 0}


def test_shapiro_swap(capsys, data_dir):
    code, out, _ = run(capsys, "shapiro", str(data_dir / "z2_swap.json"))
    assert code == 0 and json.loads(out)["h1_count"] == 1


def test_shapiro_intransitive(capsys, data_dir):
    code, out, err = run(capsys, "shapiro", str(data_dir / "intransitive.json"))
    assert code == 2 and out == "" and "transitive" in err


def test_shapiro_group_cap(capsys, data_dir):
    assert run(capsys, "shapiro", str(data_dir / "s3_sign.json"), "--group-cap", "3")[0] == 3


def test_shapiro_bad_hom(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"degree": 3, "generators": ["(1 2)", "(1 2 3)"], "base_point": 3,
                                "coefficients": {"mod": 2}, "hom": {"(1 3)": 1}}))
    assert run(capsys, "shapiro", str(path))[0] == 2
    path.write_text(json.dumps({"degree": 3, "generators": ["(1 4)"], "base_point": 1}))
    assert run(capsys, "shapiro", str(path))[0] == 1
    path.write_text(json.dumps({"degree": 3, "generators": [], "base_point": 1, "coefficients": "Z"}))
    assert run(capsys, "shapiro", str(path))[0] == 1


def test_shapiro_rationals(capsys, tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({"degree": 3, "generators": ["(1 2)", "(1 2 3)"], "base_point": 1,
                                "coefficients": "Q", "hom": {}}))
    code, out, _ = run(capsys, "shapiro", str(path))
    rep = json.loads(out)
    assert code == 0 and rep["h1_count"] == 1 and rep["coboundary"] is True


def test_torus_verify(capsys):
    code, out, _ = run(capsys, "torus-verify")
    assert code == 0
    assert json.loads(out) == {
        "braid_matrix": True,
        "braid_cocycle": True,
        "order6_matrix": True,
        "order6_cocycle": True,
        "noncoboundary": True,
        "alpha_coefficient": "1",
    }


def test_torus_verify_perturbed(capsys):
    code, out, err = run(capsys, "torus-verify", "--u-alpha", "alpha")
    assert code == 4
    assert json.loads(out)["braid_cocycle"] is False
    assert "braid_cocycle" in err
    assert run(capsys, "torus-verify", "--u-beta", "nonsense")[0] == 1


def test_usage_error_is_input_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1


def test_jobspec_invariants(tmp_path):
    with pytest.raises(ValueError):
        JobSpec(Command.H1)
    with pytest.raises(ValueError):
        JobSpec(Command.TORUS_VERIFY, tmp_path)
    job = JobSpec(Command.H1, tmp_path, {"qprime_cap": 5})
    assert job.qprime_cap == 5 and job.group_cap == 5040 and job.details is False


@pytest.mark.parametrize("argv", [["torus-verify"], ["h1", "two_curve_g4_r0.json"], ["shapiro", "s3_sign.json"]])
def test_output_byte_identical(argv, data_dir):
    args = [a if not a.endswith(".json") else str(data_dir / a) for a in argv]
    outs = [
        subprocess.run([sys.executable, "-m", "mcgcohom", *args], capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1]
    rep = json.loads(outs[0])
    assert json.dumps(rep, sort_keys=True).encode() + b"\n" == outs[0]
