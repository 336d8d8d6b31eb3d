import json

import pytest

from cremona.cli_app import main


def test_verify_mq_identity():
    assert main(["verify", "mq-identity", "--q-max", "101"]) == 0


def test_verify_same_orbit_both_fields():
    assert main(["verify", "same-orbit", "--q", "2"]) == 0
    assert main(["verify", "same-orbit", "--q", "3"]) == 0


def test_verify_produit_small():
    assert main(["verify", "produit", "--q", "2", "--samples", "500"]) == 0


def test_verify_beta_twist():
    assert main(["verify", "beta-twist", "--q", "2"]) == 0


def test_census_usage_error_on_bad_q():
    with pytest.raises(SystemExit) as exc:
        main(["census", "--q", "5"])
    assert exc.value.code == 2


def test_census_sampled_round_trip(tmp_path, capsys):
    out = tmp_path / "census.json"
    csv_path = tmp_path / "reps.csv"
    code = main(
        [
            "census", "--q", "2", "--sample", "25", "--seed", "3",
            "--out", str(out), "--csv", str(csv_path),
            "--cache-dir", str(tmp_path / "cache"),
        ]
    )
    assert code == 0
    data = json.loads(out.read_text())
    assert data["q"] == 2 and data["mode"] == "sampled"
    assert data["bound_satisfied"] is True
    rows = csv_path.read_text().strip().splitlines()
    assert len(rows) == data["pgl3_class_count"] + 1  # header + reps
    # a second run hits the cache and agrees modulo elapsed time
    code = main(
        [
            "census", "--q", "2", "--sample", "25", "--seed", "3",
            "--out", str(out), "--cache-dir", str(tmp_path / "cache"),
        ]
    )
    assert code == 0
    data2 = json.loads(out.read_text())
    for key in data:
        if key != "elapsed_ms":
            assert data[key] == data2[key]


def test_census_thread_determinism(tmp_path):
    # sampled censuses are single-threaded by construction; the exact
    # reduce path is exercised over a subrange in test_census; here the
    # CLI just needs to produce identical JSON for repeat runs
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        assert main(
            [
                "census", "--q", "2", "--sample", "20", "--seed", "7",
                "--out", str(out), "--no-cache",
            ]
        ) == 0
    d1, d2 = json.loads(out1.read_text()), json.loads(out2.read_text())
    d1.pop("elapsed_ms"), d2.pop("elapsed_ms")
    assert d1 == d2


def test_chambers_example(tmp_path, capsys):
    out = tmp_path / "chambers.json"
    assert main(["chambers", "--example", "3.8", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["chambers"]) == 4
    assert set(data["negative_classes"]) == {"L'", "E'", "E+E'"}
    capsys.readouterr()


def test_chambers_degrees(tmp_path, capsys):
    assert main(["chambers", "--degrees", "1,1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["chambers"]) == 5
    assert len(data["windows"]) == 5


def test_complex_two_points(tmp_path, capsys):
    dot = tmp_path / "fig1.dot"
    js = tmp_path / "fig1.json"
    assert main(["complex", "--points", "2", "--dot", str(dot), "--json", str(js)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["squares"] == 5 and summary["vertices"] == 11
    assert dot.read_text().startswith("digraph sarkisov")
    data = json.loads(js.read_text())
    assert len(data["vertices"]) == 11


def test_amalgam_nf_sig_abel(capsys):
    assert main(["amalgam", "nf", "--word", "b1 b1"]) == 0
    assert capsys.readouterr().out.strip() == "(empty)"
    assert main(["amalgam", "sig", "--word", "b1 e:g b2 e:g b1"]) == 0
    assert capsys.readouterr().out.strip() == "b1 b2 b1"
    assert main(["amalgam", "abel", "--word", "b1 b2 b1"]) == 0
    assert capsys.readouterr().out.strip() == "[0, 1]"


def test_amalgam_ball(tmp_path, capsys):
    dot = tmp_path / "ball.dot"
    assert main(["amalgam", "ball", "--radius", "2", "--dot", str(dot)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["vertices"] == summary["edges"] + 1
    assert dot.read_text().startswith("graph bass_serre")
