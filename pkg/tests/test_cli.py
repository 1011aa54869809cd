import json

import pytest

from svlie.autgroup import AutomorphismParams, identity, params_from_json, params_to_json
from svlie.cli import main
from svlie.derivations import (
    ClassifiedDerivation,
    classified_to_json,
    classified_window_map,
    window_map_to_json,
)
from svlie.scalar import ONE, Scalar


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bracket_text(capsys):
    code, out, _ = run(capsys, "bracket", "L[-3]", "L[3]")
    assert code == 0
    assert out.strip() == "6*L[0] - 2*C"


def test_bracket_json(capsys):
    code, out, _ = run(capsys, "bracket", "--format", "json", "L[2]", "L[-2]")
    assert code == 0
    assert json.loads(out) == {"result": "-4*L[0] + 1/2*C"}


def test_parse_error_exits_2(capsys):
    code, _, err = run(capsys, "bracket", "L[1", "C")
    assert code == 2
    assert "offset 3" in err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bracket"])
    assert exc.value.code == 2


def test_exp_ad_command(capsys):
    code, out, _ = run(capsys, "exp-ad", "Y[1]", "Y[0]")
    assert code == 0
    assert out.strip() == "Y[0] - M[1]"
    code, _, err = run(capsys, "exp-ad", "L[1]", "Y[0]")
    assert code == 1
    assert "ad not nilpotent" in err


def test_apply_aut_and_compose_and_invert(tmp_path, capsys):
    p = AutomorphismParams(b={1: Scalar(1)}, i=1, u=Scalar(2), alpha=ONE)
    p_file = tmp_path / "p.json"
    p_file.write_text(json.dumps(params_to_json(p)))

    code, out, _ = run(capsys, "apply-aut", "--params", str(p_file), "C")
    assert code == 0
    assert out.strip() == "-C"

    code, out, _ = run(capsys, "compose", "--format", "json", str(p_file), str(p_file))
    assert code == 0
    composed = params_from_json(json.loads(out))
    code, out, _ = run(capsys, "invert", "--format", "json", str(p_file))
    assert code == 0
    inverse = params_from_json(json.loads(out))
    from svlie.autgroup import compose

    assert compose(p, inverse) == identity()
    assert composed == compose(p, p)


def test_apply_der(tmp_path, capsys):
    deriv = ClassifiedDerivation(c1=ONE)
    d_file = tmp_path / "d.json"
    d_file.write_text(json.dumps(classified_to_json(deriv)))
    code, out, _ = run(capsys, "apply-der", "--params", str(d_file), "L[5]")
    assert code == 0
    assert out.strip() == "M[5]"


def test_factorize_roundtrip(tmp_path, capsys):
    p = AutomorphismParams(alpha=ONE, beta=Scalar(2), gamma=Scalar(3))
    from svlie.autgroup import automorphism_window_map

    m_file = tmp_path / "m.json"
    m_file.write_text(json.dumps(window_map_to_json(automorphism_window_map(p, 3))))
    code, out, _ = run(capsys, "factorize", "--format", "json", str(m_file))
    assert code == 0
    assert params_from_json(json.loads(out)) == p


def test_factorize_rejects_non_automorphism(tmp_path, capsys):
    wmap = classified_window_map(ClassifiedDerivation(c1=ONE), 3)
    m_file = tmp_path / "m.json"
    m_file.write_text(json.dumps(window_map_to_json(wmap)))
    code, _, err = run(capsys, "factorize", str(m_file))
    assert code == 1
    assert "not an automorphism" in err


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "invert", str(bad))
    assert code == 2
    assert "invalid JSON" in err
    missing = tmp_path / "missing.json"
    code, _, err = run(capsys, "invert", str(missing))
    assert code == 2


def test_verify_exit_status_and_determinism(capsys):
    code, out1, _ = run(
        capsys, "verify", "--suite", "center", "--radius", "3", "--format", "json"
    )
    assert code == 0
    code, out2, _ = run(
        capsys, "verify", "--suite", "center", "--radius", "3", "--format", "json"
    )
    assert out1 == out2
    report = json.loads(out1)
    assert report["passed"] is True


def test_verify_text_output(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "jacobi", "--radius", "2")
    assert code == 0
    assert out.strip().endswith("PASS")


def test_verify_rejects_bad_radius(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--radius", "0"])
    assert exc.value.code == 2
