from fractions import Fraction

import pytest

from tileforge.analysis import analysis_for
from tileforge.family import sweep
from tileforge.geometry_io import (
    GraphDocument,
    PointCloud,
    approximate_boundary_piece,
    approximate_tile,
    attractor_radius,
    cloud_csv,
    cloud_ply,
    count_walks,
    export,
    graph_document,
    merge_clouds,
    parse_dot,
    render,
    to_dot,
)
from tileforge.lattice import companion_form


def system_124():
    return companion_form([1, 1, 2, 4])


def test_tile_depth_one_points_are_inverse_digit_images():
    M, digits = system_124()
    cloud = approximate_tile(M, digits, 1)
    col = (Fraction(-1, 2), Fraction(-1, 4), Fraction(-1, 4))
    expected = {tuple(i * x for x in col) for i in range(4)}
    assert set(cloud.points) == expected
    assert len(cloud.points) == 4


def test_tile_point_count_is_exponential():
    M, digits = system_124()
    assert len(approximate_tile(M, digits, 2).points) == 16
    assert len(approximate_tile(M, digits, 3).points) == 64


def test_tile_points_stay_inside_reported_radius():
    M, digits = system_124()
    cloud = approximate_tile(M, digits, 4)
    assert cloud.bound > 0
    for row in cloud.float_rows():
        assert max(abs(x) for x in row) <= cloud.bound + 1e-9


def test_tile_cap_rejects_large_enumerations():
    M, digits = system_124()
    with pytest.raises(ValueError):
        approximate_tile(M, digits, 4, cap=100)


def test_cap_env_override(monkeypatch):
    M, digits = system_124()
    monkeypatch.setenv("TILEFORGE_CAP_POINTS", "10")
    with pytest.raises(ValueError):
        approximate_tile(M, digits, 2)
    monkeypatch.setenv("TILEFORGE_CAP_POINTS", "1000000")
    assert len(approximate_tile(M, digits, 2).points) == 16


def test_tile_rejects_non_expanding_matrix():
    from tileforge.lattice import IntMatrix, collinear_digit_set

    M = IntMatrix(((1, 0, 0), (0, 1, 0), (0, 0, 2)))
    with pytest.raises(ValueError):
        approximate_tile(M, collinear_digit_set(M, (0, 0, 1)), 1)


def test_boundary_piece_single_walk_from_far_corner():
    t = analysis_for((1, 2, 4))
    cloud = approximate_boundary_piece(t, (2, 1, 1), 1)
    assert cloud.points == ((Fraction(0), Fraction(0), Fraction(0)),)
    assert cloud.tags is not None and len(cloud.tags) == 1


def test_boundary_piece_counts_follow_walks():
    t = analysis_for((1, 2, 4))
    g = t.boundary_graph
    for alpha in ((1, 0, 0), (1, 1, 0)):
        for depth in (1, 2, 3):
            expected = count_walks(g, alpha, depth)
            cloud = approximate_boundary_piece(t, alpha, depth)
            assert len(cloud.points) == expected


def test_boundary_piece_rejects_non_neighbor():
    t = analysis_for((1, 2, 4))
    with pytest.raises(ValueError):
        approximate_boundary_piece(t, (9, 9, 9), 2)


def test_boundary_tags_index_the_face():
    t = analysis_for((1, 2, 4))
    alpha = (1, 0, 0)
    cloud = approximate_boundary_piece(t, alpha, 2)
    assert set(cloud.tags) == {t.neighbors.points.index(alpha)}


def test_merge_concatenates_tagged_clouds():
    t = analysis_for((1, 2, 4))
    pieces = [approximate_boundary_piece(t, a, 2)
              for a in t.neighbors.points[:3]]
    merged = merge_clouds(pieces)
    assert len(merged.points) == sum(len(p.points) for p in pieces)
    assert len(set(merged.tags)) == 3


def test_merge_rejects_mixed_tagging():
    M, digits = system_124()
    plain = approximate_tile(M, digits, 1)
    t = analysis_for((1, 2, 4))
    tagged = approximate_boundary_piece(t, (1, 0, 0), 1)
    with pytest.raises(ValueError):
        merge_clouds([plain, tagged])


def test_radius_estimate_is_finite_and_positive():
    M, digits = system_124()
    r = attractor_radius(M, digits)
    assert 0 < r < 100


def test_contact_graph_dot_round_trip():
    t = analysis_for((1, 2, 4))
    doc = graph_document(t.contact_graph)
    assert len(doc.vertices) == 14
    text = to_dot(doc)
    assert '"2,1,1"' in text
    assert text.startswith("digraph {\n")
    assert parse_dot(text) == doc


def test_dot_keeps_isolated_vertices():
    doc = GraphDocument(((0, 0, 1), (5, 5, 5)), (((0, 0, 1), (0, 0, 1), 0, 0),))
    text = to_dot(doc)
    assert '"5,5,5";' in text
    assert parse_dot(text) == doc


def test_dot_rejects_garbage():
    with pytest.raises(ValueError):
        parse_dot('digraph {\n  what is this\n}\n')


def test_ply_header_counts_vertices():
    M, digits = system_124()
    cloud = approximate_tile(M, digits, 2)
    text = cloud_ply(cloud)
    assert "element vertex 16" in text
    assert "property uchar face" not in text
    assert text.endswith("\n")


def test_ply_tagged_cloud_declares_face_property():
    t = analysis_for((1, 2, 4))
    cloud = approximate_boundary_piece(t, (1, 0, 0), 2)
    text = cloud_ply(cloud)
    assert "property uchar face" in text
    body = text.split("end_header\n")[1]
    assert all(len(line.split()) == 4 for line in body.strip().split("\n"))


def test_csv_cloud_golden():
    cloud = PointCloud(((Fraction(-1, 2), Fraction(0), Fraction(1, 4)),),
                       1, "test", 1.0)
    assert cloud_csv(cloud) == "x,y,z\n-0.5,0,0.25\n"


def test_render_rejects_incompatible_pairs():
    M, digits = system_124()
    cloud = approximate_tile(M, digits, 1)
    with pytest.raises(ValueError):
        render(cloud, "dot")
    t = analysis_for((1, 2, 4))
    with pytest.raises(ValueError):
        render(t.contact_graph, "ply")


def test_render_is_deterministic():
    M, digits = system_124()
    one = render(approximate_tile(M, digits, 3), "ply")
    two = render(approximate_tile(M, digits, 3), "ply")
    assert one == two


def test_export_sweep_records_csv(tmp_path):
    records = sweep(2, 2, 3, parallelism=1)
    path = tmp_path / "records.csv"
    export(records, "csv", path)
    text = path.read_text()
    assert text.startswith("A,B,C,neighbor_count,")
    assert "\r" not in text


def test_export_json_report(tmp_path):
    path = tmp_path / "report.json"
    export({"b": 2, "a": 1}, "json", path)
    assert path.read_text() == '{\n  "a": 1,\n  "b": 2\n}\n'
