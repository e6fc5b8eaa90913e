"""CLI exit codes, report schema, determinism, and file artifacts."""

import json
import re

import pytest

from pontcalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def last_json(text):
    # the report is the last JSON object on stdout (a table may precede it)
    decoder = json.JSONDecoder()
    idx, objs = 0, []
    while True:
        start = text.find("{", idx)
        if start == -1:
            break
        try:
            obj, end = decoder.raw_decode(text[start:])
            objs.append(obj)
            idx = start + end
        except ValueError:
            idx = start + 1
    return objs[-1]


def test_identities_pass(capsys):
    code, out = run(capsys, "identities", "--kmax", "6")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("k\\d")
    report = last_json(out)
    assert report["report_version"] == 1
    assert report["verdict"] == "pass"
    assert report["exact_arithmetic"] is True
    assert report["witness"]["problems"] == []


def test_thresholds_k(capsys):
    code, out = run(capsys, "thresholds", "--k", "2")
    assert code == 0
    assert "g_gonality" in out
    assert re.search(r"^2\t3\t12\t3\t3$", out, re.M)


def test_thresholds_inverse(capsys):
    code, out = run(capsys, "thresholds", "--g", "11", "--format", "json")
    assert code == 0
    report = last_json(out)
    assert report["witness"]["max_proven_k"] == 3


def test_thresholds_requires_exactly_one(capsys):
    assert main(["thresholds"]) == 1
    assert main(["thresholds", "--k", "2", "--g", "3"]) == 1


def test_verify_relation_writes_certificate(tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    code, out = run(capsys, "verify-relation", "--k", "2", "--g", "3", "--out", str(cert_path))
    assert code == 0
    report = last_json(out)
    assert report["verdict"] == "pass"
    assert report["witness"]["re_verified_by_expansion"] is True
    data = json.loads(cert_path.read_text())
    assert data["format"] == "pontryagin-membership-certificate"
    assert data["k"] == 2 and data["g"] == 3
    from pontcalc.relations import MembershipCertificate, verify_certificate

    assert verify_certificate(MembershipCertificate.from_json_dict(data))


def test_verify_relation_inconclusive_exit_2(tmp_path, capsys):
    code, out = run(
        capsys,
        "verify-relation", "--k", "2", "--g", "3",
        "--jmax", "1", "--cap", "1", "--method", "window",
        "--out", str(tmp_path / "c.json"),
    )
    assert code == 2
    report = last_json(out)
    assert report["verdict"] == "inconclusive"
    assert report["witness"]["caps_tried"] == [1, 2]
    assert not (tmp_path / "c.json").exists()


def test_alpha(capsys):
    code, out = run(capsys, "alpha", "--k", "3")
    assert code == 0
    report = last_json(out)
    assert report["witness"]["zero_entries"] == []
    assert out.splitlines()[0] == "0\t1/1"


def test_recursion_check(capsys):
    code, out = run(capsys, "recursion-check", "--k", "4")
    assert code == 0
    report = last_json(out)
    assert report["witness"]["results"] == {"1": True, "2": True, "3": True}


def test_check_star_pass_and_violation(tmp_path, capsys):
    ok = tmp_path / "ok.txt"
    ok.write_text("3 1\n2\n1 -1 0\n0 1 -1\n")
    code, out = run(capsys, "check-star", "--file", str(ok))
    assert code == 0

    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n1\n1 0 0 0\n")
    code, out = run(capsys, "check-star", "--file", str(bad))
    assert code == 3
    report = last_json(out)
    assert report["verdict"] == "fail"
    assert report["witness"]["violation"]["degree"] == 1


def test_check_doublestar(tmp_path, capsys):
    f = tmp_path / "cfg.txt"
    f.write_text("3 2\n1\n1 -1 0\n1\n1 1 -2\n")
    code, out = run(capsys, "check-doublestar", "--file", str(f))
    assert code == 0
    f.write_text("3 1\n1\n1 0 0\n")
    code, out = run(capsys, "check-doublestar", "--file", str(f))
    assert code == 3


def test_pair_lemma_file_and_random(tmp_path, capsys):
    f = tmp_path / "pair.txt"
    f.write_text("3 2\n1\n1 -1 0\n1\n1 1 -2\n")
    code, out = run(capsys, "pair-lemma", "--file", str(f))
    assert code == 0
    report = last_json(out)
    assert report["witness"]["lhs_dim_product_plus_sum"] == 2
    code, out = run(capsys, "pair-lemma", "--k", "6", "--seed", "11")
    assert code == 0


def test_pair_lemma_precondition_is_usage_error(tmp_path, capsys):
    f = tmp_path / "bad_pair.txt"
    f.write_text("3 2\n1\n1 0 0\n1\n1 1 -2\n")
    assert main(["pair-lemma", "--file", str(f)]) == 1


def test_mu_rank(tmp_path, capsys):
    f = tmp_path / "pair.txt"
    f.write_text("3 2\n1\n1 -1 0\n1\n1 1 -2\n")
    code, out = run(capsys, "mu-rank", "--file", str(f), "--seed", "0")
    assert code == 0
    report = last_json(out)
    assert report["witness"]["rank"] == 2 == report["witness"]["expected"]


def test_search(capsys):
    code, out = run(capsys, "search", "--k", "3", "--n", "2", "--budget", "300", "--seed", "0")
    assert code == 0
    report = last_json(out)
    assert report["witness"]["best_sum"] == 2
    assert report["witness"]["bound"] == 2
    assert report["witness"]["evaluations"] == 300


def test_gamma_check(capsys):
    code, out = run(capsys, "gamma-check", "--g", "2", "--trials", "2", "--seed", "1")
    assert code == 0
    report = last_json(out)
    assert report["witness"]["failures"] == []


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["verify-relation"])  # missing required flags
    assert info.value.code == 1
    assert main(["check-star", "--file", "/nonexistent/path.txt"]) == 1


def test_env_cap_override_maps_to_inconclusive(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CYCLES_MAX_CAP", "2")
    code, out = run(capsys, "gamma-check", "--g", "3", "--trials", "1")
    assert code == 2
    report = last_json(out)
    assert report["verdict"] == "inconclusive"
    assert "support cap" in report["witness"]["error"]


def test_report_determinism(tmp_path, capsys):
    def strip_wall(path):
        data = json.loads(path.read_text())
        data.pop("wall_time_s")
        return json.dumps(data, sort_keys=True)

    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    for path in (r1, r2):
        code = main(["search", "--k", "3", "--n", "2", "--budget", "200",
                     "--seed", "7", "--report", str(path)])
        assert code == 0
        capsys.readouterr()
    assert strip_wall(r1) == strip_wall(r2)


def test_report_file_destination(tmp_path, capsys):
    path = tmp_path / "rep.json"
    code = main(["thresholds", "--k", "4", "--report", str(path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "report_version" not in out  # table only; report went to the file
    from pontcalc.bounds import thresholds

    report = json.loads(path.read_text())
    assert report["subcommand"] == "thresholds"
    assert report["witness"]["g_gonality"] == thresholds(4).g_gonality
