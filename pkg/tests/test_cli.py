import json

import pytest

from tileforge import cli
from tileforge.family import SweepRecord


def test_analyze_named_instance(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert cli.main(["analyze", "--abc", "1,2,4", "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["neighbors"]["count"] == 14
    assert report["predicted_14"] is True
    assert report["audit_pass"] is True
    assert report["levels"] == {"g2": 36, "g3": 24, "g4": 0}
    assert report["census"]["euler"] == 2
    assert "14" in capsys.readouterr().out


def test_analyze_outside_family_reports_data_not_failure(tmp_path):
    out = tmp_path / "report.json"
    assert cli.main(["analyze", "--abc", "1,1,2", "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["neighbors"]["count"] == 20
    assert report["predicted_14"] is False
    assert report["audit_pass"] is None
    assert report["levels"]["g3"] is None


def test_analyze_rejects_invalid_parameters(capsys):
    assert cli.main(["analyze", "--abc", "0,1,2"]) == 2
    assert "error" in capsys.readouterr().err


def test_analyze_requires_exactly_one_input(tmp_path):
    m = tmp_path / "m.json"
    m.write_text("[[0,0,-4],[1,0,-2],[0,1,-1]]")
    assert cli.main(["analyze"]) == 2
    assert cli.main(["analyze", "--abc", "1,2,4", "--matrix", str(m)]) == 2
    assert cli.main(["analyze", "--matrix", str(m)]) == 2


def test_analyze_explicit_matrix_matches_abc(tmp_path):
    m = tmp_path / "m.json"
    d = tmp_path / "d.json"
    m.write_text("[[0,0,-4],[1,0,-2],[0,1,-1]]")
    d.write_text(json.dumps([[i, 0, 0] for i in range(4)]))
    out = tmp_path / "report.json"
    dot = tmp_path / "graph.dot"
    code = cli.main(["analyze", "--matrix", str(m), "--digits", str(d),
                     "--json", str(out), "--dot", str(dot)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["neighbors"]["count"] == 14
    assert report["predicted_14"] is None
    assert report["levels"]["g2"] == 36
    assert '"2,1,1"' in dot.read_text()


def test_analyze_basis_override_is_neutral(tmp_path):
    out = tmp_path / "report.json"
    basis = "[[1,0,0],[1,1,0],[2,1,1]]"
    code = cli.main(["analyze", "--abc", "1,2,4", "--basis", basis,
                     "--json", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["neighbors"]["count"] == 14
    assert report["contact"]["size"] == 15


def test_sweep_smallest_box(tmp_path, capsys):
    out = tmp_path / "records.csv"
    assert cli.main(["sweep", "--max", "2", "--csv", str(out)]) == 0
    assert "1 triples checked, 0 disagreements" in capsys.readouterr().out
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("1,1,2,")


def test_sweep_csv_independent_of_jobs(tmp_path):
    one = tmp_path / "one.csv"
    two = tmp_path / "two.csv"
    assert cli.main(["sweep", "--max", "5", "--csv", str(one)]) == 0
    assert cli.main(["sweep", "--max", "5", "--jobs", "2",
                     "--csv", str(two)]) == 0
    assert one.read_bytes() == two.read_bytes()


def test_sweep_exit_code_flags_disagreement(monkeypatch, capsys):
    fake = SweepRecord(1, 2, 4, 15, True, False, 15, 36, 24, True, 2, True)
    monkeypatch.setattr(cli, "sweep", lambda *a, **k: (fake,))
    assert cli.main(["sweep", "--max", "2"]) == 1
    assert "1 disagreements" in capsys.readouterr().out


def test_sweep_exit_code_flags_audit_failure(monkeypatch):
    fake = SweepRecord(1, 2, 4, 14, True, True, 15, 36, 24, True, 2, False,
                       "loops: broken")
    monkeypatch.setattr(cli, "sweep", lambda *a, **k: (fake,))
    assert cli.main(["sweep", "--max", "2"]) == 1


def test_render_tile_depth_six(tmp_path, capsys):
    out = tmp_path / "tile.ply"
    assert cli.main(["render", "--abc", "1,2,4", "--depth", "6",
                     "--ply", str(out)]) == 0
    text = out.read_text()
    assert "element vertex 4096" in text
    assert "4096 points" in capsys.readouterr().out


def test_render_boundary_merges_all_faces(tmp_path):
    out = tmp_path / "boundary.ply"
    assert cli.main(["render", "--abc", "1,2,4", "--boundary", "--depth", "5",
                     "--ply", str(out)]) == 0
    text = out.read_text()
    assert "property uchar face" in text
    body = text.split("end_header\n")[1].strip().split("\n")
    faces = {line.split()[-1] for line in body}
    assert len(faces) == 14


def test_render_cap_exceeded_is_input_error(capsys):
    assert cli.main(["render", "--abc", "1,2,4", "--depth", "99"]) == 2
    assert "cap" in capsys.readouterr().err


def test_render_boundary_requires_abc(tmp_path):
    m = tmp_path / "m.json"
    d = tmp_path / "d.json"
    m.write_text("[[0,0,-4],[1,0,-2],[0,1,-1]]")
    d.write_text(json.dumps([[i, 0, 0] for i in range(4)]))
    code = cli.main(["render", "--matrix", str(m), "--digits", str(d),
                     "--boundary"])
    assert code == 2


def test_render_explicit_matrix_tile(tmp_path):
    m = tmp_path / "m.json"
    d = tmp_path / "d.json"
    m.write_text("[[0,0,-4],[1,0,-2],[0,1,-1]]")
    d.write_text(json.dumps([[i, 0, 0] for i in range(4)]))
    out = tmp_path / "tile.csv"
    code = cli.main(["render", "--matrix", str(m), "--digits", str(d),
                     "--depth", "2", "--csv", str(out)])
    assert code == 0
    assert len(out.read_text().splitlines()) == 17


def test_render_is_byte_deterministic(tmp_path):
    a = tmp_path / "a.ply"
    b = tmp_path / "b.ply"
    cli.main(["render", "--abc", "1,2,4", "--depth", "4", "--ply", str(a)])
    cli.main(["render", "--abc", "1,2,4", "--depth", "4", "--ply", str(b)])
    assert a.read_bytes() == b.read_bytes()
