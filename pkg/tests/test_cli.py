"""CLI surface: exit codes, determinism, round-trips."""
import json
import subprocess
import sys

from hopfsplit.cli import main
from hopfsplit.serialize import dumps, loads, object_from_json, object_to_json, read_file


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_example_and_validate(tmp_path, capsys):
    path = str(tmp_path / "z2.json")
    code, out, _ = run_cli(["example", "group_algebra", "--n", "2", "--field", "q", "--out", path], capsys)
    assert code == 0
    code, out, _ = run_cli(["validate", path], capsys)
    assert code == 0
    assert "antipode: ok" in out


def test_separable_exit_codes(tmp_path, capsys):
    p1 = str(tmp_path / "z2q.json")
    run_cli(["example", "group_algebra", "--n", "2", "--field", "q", "--out", p1], capsys)
    code, out, _ = run_cli(["separable", p1, "--ctx", "vect"], capsys)
    assert code == 0
    assert "1/2" in out
    p2 = str(tmp_path / "z2f2.json")
    run_cli(["example", "group_algebra", "--n", "2", "--field", "fp:2", "--out", p2], capsys)
    code, out, err = run_cli(["separable", p2, "--ctx", "vect"], capsys)
    assert code == 1


def test_malformed_file_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(["validate", str(bad)], capsys)
    assert code == 2
    bad2 = tmp_path / "bad2.json"
    bad2.write_text(json.dumps({"field": {"kind": "Q"}, "dim": 2, "mul": [[0, 0, 7, "1"]], "unit": ["1", "0"]}))
    code, _, err = run_cli(["validate", str(bad2)], capsys)
    assert code == 2


def test_round_trip_byte_identical(tmp_path, capsys):
    path = tmp_path / "h4.json"
    run_cli(["example", "sweedler_h4", "--field", "q", "--out", str(path)], capsys)
    text1 = path.read_text()
    obj = object_from_json(loads(text1))
    text2 = dumps(object_to_json(obj))
    assert text1 == text2


def test_json_flag_stable(tmp_path, capsys):
    path = str(tmp_path / "z3.json")
    run_cli(["example", "group_algebra", "--n", "3", "--field", "q", "--out", path], capsys)
    code, out1, _ = run_cli(["--json", "integral", path], capsys)
    code, out2, _ = run_cli(["--json", "integral", path], capsys)
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["normalized"] is True


def test_radical_and_coradical_commands(tmp_path, capsys):
    path = str(tmp_path / "h4.json")
    run_cli(["example", "sweedler_h4", "--field", "q", "--out", path], capsys)
    code, out, _ = run_cli(["--json", "radical", path], capsys)
    assert code == 0 and json.loads(out)["dim"] == 2
    code, out, _ = run_cli(["--json", "coradical", path], capsys)
    assert code == 0 and json.loads(out)["dim"] == 2
    code, out, _ = run_cli(["--json", "filtration", path], capsys)
    assert code == 0 and json.loads(out)["dims"] == [2, 4]


def test_hochschild_command(tmp_path, capsys):
    apath = str(tmp_path / "dual.json")
    doc = {
        "field": {"kind": "Q"}, "dim": 2, "basis": ["1", "x"],
        "mul": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
        "unit": ["1", "0"],
    }
    (tmp_path / "dual.json").write_text(json.dumps(doc))
    cpath = str(tmp_path / "coeff.json")
    # regular bimodule of the dual numbers
    coeff = {
        "dim": 2,
        "act_l": [[0, 0, "1"], [1, 1, "1"], [1, 2, "1"]],
        "act_r": [[0, 0, "1"], [1, 1, "1"], [1, 2, "1"]],
    }
    (tmp_path / "coeff.json").write_text(json.dumps(coeff))
    for deg, expect in ((0, 2), (1, 1), (2, 1)):
        code, out, _ = run_cli(["--json", "hochschild", apath, "--coeff", cpath,
                                "--degree", str(deg), "--ctx", "vect"], capsys)
        assert code == 0
        assert json.loads(out)["dimension"] == expect


def test_split_command_radical(tmp_path, capsys):
    hpath = str(tmp_path / "h4.json")
    run_cli(["example", "sweedler_h4", "--field", "q", "--out", hpath], capsys)
    cand = {
        "field": {"kind": "Q"}, "ambient_dim": 4,
        "vectors": [["0", "1", "0", "0"], ["0", "0", "0", "1"]],
    }
    cpath = tmp_path / "cand.json"
    cpath.write_text(json.dumps(cand))
    rpath = str(tmp_path / "report.json")
    code, out, err = run_cli(["split", hpath, "--side", "radical", "--candidate", str(cpath),
                              "--level", "bicomodule", "--out", rpath], capsys)
    assert code == 0, err
    report = read_file(rpath)
    assert report["side"] == "radical"
    assert all(report["checks"].values())


def test_bosonize_command_roundtrip(tmp_path, capsys):
    # extract the H4 quadruple via the pipeline, serialize, re-bosonize
    from hopfsplit.builtin import sweedler_h4
    from hopfsplit.fields import QQ
    from hopfsplit.linalg import Subspace
    from hopfsplit.pipeline import run_radical_pipeline
    from hopfsplit.serialize import quadruple_to_json, write_file
    from hopfsplit.tensors import v_basis

    h4 = sweedler_h4(QQ)
    rep = run_radical_pipeline(h4, Subspace.from_vectors(QQ, 4, [v_basis(QQ, 4, 1), v_basis(QQ, 4, 3)]))
    qpath = str(tmp_path / "quad.json")
    write_file(qpath, quadruple_to_json(rep.quadruple))
    out_path = str(tmp_path / "boso.json")
    code, out, err = run_cli(["bosonize", qpath, "--out", out_path], capsys)
    assert code == 0, err
    doc = read_file(out_path)
    assert doc["dim"] == 4


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopfsplit.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "split" in proc.stdout


def test_quadruple_envelope_roundtrip(tmp_path):
    from hopfsplit.builtin import sweedler_h4
    from hopfsplit.fields import QQ
    from hopfsplit.linalg import Subspace
    from hopfsplit.pipeline import run_radical_pipeline
    from hopfsplit.serialize import dumps, quadruple_from_json, quadruple_to_json
    from hopfsplit.tensors import v_basis

    h4 = sweedler_h4(QQ)
    rep = run_radical_pipeline(h4, Subspace.from_vectors(QQ, 4, [v_basis(QQ, 4, 1), v_basis(QQ, 4, 3)]))
    doc = quadruple_to_json(rep.quadruple)
    text1 = dumps(doc)
    q2 = quadruple_from_json(json.loads(text1))
    text2 = dumps(quadruple_to_json(q2))
    assert text1 == text2
    assert q2.validate().ok


def test_hochschild_comodule_context(tmp_path, capsys):
    # dual numbers with trivial coactions over K[Z2]: same dimensions as Vect
    aux = {"field": {"kind": "Q"}, "dim": 2, "basis": ["1", "g"],
           "mul": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "1"]],
           "unit": ["1", "0"],
           "comul": [[0, 0, 0, "1"], [1, 1, 1, "1"]],
           "counit": ["1", "1"],
           "antipode": [["1", "0"], ["0", "1"]]}
    (tmp_path / "aux.json").write_text(json.dumps(aux))
    # matrix triples are [row, col, coeff]: rho_r(e_v) = e_v (x) 1 has rows
    # v*dh + 0; rho_l(e_v) = 1 (x) e_v has rows 0*dim + v
    trivial_coact_r = [[0, 0, "1"], [2, 1, "1"]]
    trivial_coact_l = [[0, 0, "1"], [1, 1, "1"]]
    alg = {"field": {"kind": "Q"}, "dim": 2, "basis": ["1", "x"],
           "mul": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
           "unit": ["1", "0"],
           "structures": {"coact_r": trivial_coact_r, "coact_l": trivial_coact_l}}
    (tmp_path / "alg.json").write_text(json.dumps(alg))
    coeff = {"dim": 2,
             "act_l": [[0, 0, "1"], [1, 1, "1"], [1, 2, "1"]],
             "act_r": [[0, 0, "1"], [1, 1, "1"], [1, 2, "1"]],
             "structures": {"coact_r": trivial_coact_r, "coact_l": trivial_coact_l}}
    (tmp_path / "coeff.json").write_text(json.dumps(coeff))
    code, out, err = run_cli(["--json", "hochschild", str(tmp_path / "alg.json"),
                              "--coeff", str(tmp_path / "coeff.json"),
                              "--degree", "2", "--ctx", "comod",
                              "--aux", str(tmp_path / "aux.json")], capsys)
    assert code == 0, err
    assert json.loads(out)["dimension"] == 1


def test_split_command_coradical_h4(tmp_path, capsys):
    hpath = str(tmp_path / "h4.json")
    run_cli(["example", "sweedler_h4", "--field", "q", "--out", hpath], capsys)
    cand = {"field": {"kind": "Q"}, "ambient_dim": 4,
            "vectors": [["1", "0", "0", "0"], ["0", "0", "1", "0"]]}
    cpath = tmp_path / "corad.json"
    cpath.write_text(json.dumps(cand))
    rpath = str(tmp_path / "report.json")
    code, out, err = run_cli(["split", hpath, "--side", "coradical", "--candidate", str(cpath),
                              "--level", "bicomodule", "--out", rpath], capsys)
    assert code == 0, err
    report = read_file(rpath)
    assert report["side"] == "coradical"
    assert all(report["checks"].values())
    assert all(report["filtration_checks"].values())
    # the quadruple envelope carries the xi triples
    assert "xi" in report["quadruple"]


def test_radical_coradical_with_candidate_flags(tmp_path, capsys):
    hpath = str(tmp_path / "h4.json")
    run_cli(["example", "sweedler_h4", "--field", "q", "--out", hpath], capsys)
    rad_cand = {"field": {"kind": "Q"}, "ambient_dim": 4,
                "vectors": [["0", "1", "0", "0"], ["0", "0", "0", "1"]]}
    (tmp_path / "rad.json").write_text(json.dumps(rad_cand))
    code, out, _ = run_cli(["--json", "radical", hpath, "--candidate", str(tmp_path / "rad.json")], capsys)
    assert code == 0 and json.loads(out)["dim"] == 2
    cor_cand = {"field": {"kind": "Q"}, "ambient_dim": 4,
                "vectors": [["1", "0", "0", "0"], ["0", "0", "1", "0"]]}
    (tmp_path / "cor.json").write_text(json.dumps(cor_cand))
    code, out, _ = run_cli(["--json", "coradical", hpath, "--candidate", str(tmp_path / "cor.json")], capsys)
    assert code == 0 and json.loads(out)["dim"] == 2
    # a non-coradical candidate is rejected with exit 1
    bad = {"field": {"kind": "Q"}, "ambient_dim": 4, "vectors": [["1", "0", "0", "0"]]}
    (tmp_path / "bad.json").write_text(json.dumps(bad))
    code, _, err = run_cli(["coradical", hpath, "--candidate", str(tmp_path / "bad.json")], capsys)
    assert code == 1


def test_bosonize_dual_command(tmp_path, capsys):
    from hopfsplit.builtin import sweedler_h4
    from hopfsplit.fields import QQ
    from hopfsplit.linalg import Subspace
    from hopfsplit.pipeline import run_coradical_pipeline
    from hopfsplit.serialize import quadruple_to_json, write_file
    from hopfsplit.tensors import v_basis

    h4 = sweedler_h4(QQ)
    rep = run_coradical_pipeline(h4, Subspace.from_vectors(QQ, 4, [v_basis(QQ, 4, 0), v_basis(QQ, 4, 2)]))
    qpath = str(tmp_path / "quad.json")
    write_file(qpath, quadruple_to_json(rep.quadruple))
    out_path = str(tmp_path / "boso.json")
    code, out, err = run_cli(["bosonize", qpath, "--dual", "--out", out_path], capsys)
    assert code == 0, err
    # forgetting --dual on a dual envelope is an input error
    code, _, _ = run_cli(["bosonize", qpath, "--out", out_path], capsys)
    assert code == 2
