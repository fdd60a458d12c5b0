import io as _io
import json
import math
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from inscribed import cli, io
from inscribed.errors import DocumentSyntaxError, TooFewVertices
from inscribed.geometry import random_convex_polygon, regular_polygon
from inscribed.min_perimeter import min_perimeter_inscribed, solve_all_N

PENTAGON_DOC = '{"vertices": [[1,0],[0.309,0.951],[-0.809,0.588],[-0.809,-0.588],[0.309,-0.951]]}'
SQUARE_DOC = '{"vertices": [[0,0],[1,0],[1,1],[0,1]]}'


def _run(capsys, *argv):
    code = cli.run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def pentagon_file(tmp_path):
    path = tmp_path / "pentagon.json"
    path.write_text(io.dump_polygon(regular_polygon(5), "pentagon"))
    return str(path)


def test_parse_examples():
    C = io.parse_polygon(PENTAGON_DOC)
    assert C.n == 5
    assert np.allclose(C.vertices, regular_polygon(5).vertices, atol=1e-3)
    with pytest.raises(TooFewVertices, match="vertices"):
        io.parse_polygon(SQUARE_DOC)
    with pytest.raises(DocumentSyntaxError, match="line 1"):
        io.parse_polygon('{"vertices": [[1, 0],')


@pytest.mark.parametrize(
    "text",
    ['[1, 2]', '{"verts": []}', '{"vertices": 3}', '{"vertices": [[0, 0, 1]]}', '{"vertices": [[true, 0]]}'],
)
def test_parse_rejects_bad_shapes(text):
    with pytest.raises(DocumentSyntaxError):
        io.parse_polygon(text)


@given(st.integers(5, 40), st.integers(0, 2**32 - 1))
def test_polygon_document_round_trip(n, seed):
    C = random_convex_polygon(n, seed)
    back = io.parse_polygon(io.dump_polygon(C))
    # 17 significant digits make the text form exact
    assert np.array_equal(back.vertices, C.vertices)
    again = io.parse_polygon(io.dump_polygon(back))
    assert np.all(np.abs(again.vertices - C.vertices) <= np.spacing(np.abs(C.vertices)))


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_encoding_is_lossless(x):
    assert json.loads(io.dumps({"x": x}))["x"] == x


def test_non_finite_values_are_refused():
    with pytest.raises(ValueError):
        io.dumps([math.inf])


def test_result_document_round_trip():
    C = random_convex_polygon(9, 11)
    res = min_perimeter_inscribed(C)
    doc = json.loads(io.dumps(io.result_document("min-perimeter", res.value, res.witness)))
    Q = io.witness_from_document(C, doc)
    assert Q.anchors == res.witness.anchors
    assert doc["sequence"] == res.witness.sequence()


def test_witness_index_out_of_range():
    C = regular_polygon(5)
    with pytest.raises(DocumentSyntaxError):
        io.witness_from_document(C, {"witness": [{"vertex": 0}, {"vertex": 7}]})
    with pytest.raises(DocumentSyntaxError):
        io.witness_from_document(C, {"witness": [{"side": 1}]})


def test_svg_is_deterministic_and_host_only_when_empty():
    C = random_convex_polygon(7, 2)
    a = io.render_svg(C, [])
    assert a == io.render_svg(C, [])
    assert a.count("<polygon") == 1 and "stroke-dasharray" not in a
    assert "<circle" not in a


def test_svg_hexagon_family():
    C = regular_polygon(6)
    fam = solve_all_N(C).witnesses[:2]
    svg = io.render_svg(C, fam)
    assert svg == io.render_svg(C, fam)
    dashed = [line for line in svg.splitlines() if line.startswith("<polygon") and "dasharray" in line]
    assert len(dashed) == 2
    assert svg.count("<circle") == 12


def test_cli_min_perimeter_pentagon(capsys, pentagon_file):
    code, out, _ = _run(capsys, "min-perimeter", pentagon_file)
    doc = json.loads(out)
    assert code == 0
    assert doc["value"] == pytest.approx(4.755283, abs=1e-6)
    assert doc["sequence"] == "NNNNN"
    assert max(doc["diagnostics"]["reflection_residuals"]) < 1e-7


def test_cli_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", _io.StringIO(PENTAGON_DOC))
    code, out, _ = _run(capsys, "min-area", "-")
    assert code == 0 and json.loads(out)["problem"] == "min-area"


def test_cli_output_is_deterministic(capsys, pentagon_file):
    a = _run(capsys, "min-area", pentagon_file)[1]
    b = _run(capsys, "min-area", pentagon_file)[1]
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "timing_ns"}
    assert strip(a) == strip(b)


def test_cli_check_sequence(capsys):
    code, out, _ = _run(capsys, "check-sequence", "--kind", "area", "NUNUNUUNUNUU")
    assert code == 0 and json.loads(out)["admissible"] is True
    code, out, _ = _run(capsys, "check-sequence", "--kind", "perimeter", "UUUNN")
    assert json.loads(out)["admissible"] is False


def test_cli_exit_codes(capsys, tmp_path, monkeypatch):
    square = tmp_path / "square.json"
    square.write_text(SQUARE_DOC)
    code, _, err = _run(capsys, "min-area", str(square))
    assert code == 1 and json.loads(err)["error"] == "TooFewVertices"
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = _run(capsys, "min-perimeter", str(bad))
    assert code == 1 and json.loads(err)["error"] == "DocumentSyntaxError"
    assert _run(capsys, "no-such-command")[0] == 1
    assert _run(capsys, "check-sequence", "NUX")[0] == 1
    assert _run(capsys, "min-area", str(tmp_path / "missing.json"))[0] == 1

    def boom(C):
        raise RuntimeError("internal")

    monkeypatch.setattr(cli, "min_area_inscribed", boom)
    monkeypatch.setattr(sys, "stdin", _io.StringIO(PENTAGON_DOC))
    code, _, err = _run(capsys, "min-area", "-")
    assert code == 2 and json.loads(err)["error"] == "RuntimeError"


def test_cli_svg_and_render(capsys, tmp_path, pentagon_file):
    svg = tmp_path / "out.svg"
    res = tmp_path / "res.json"
    code, out, _ = _run(capsys, "min-area", pentagon_file, "--svg", str(svg))
    assert code == 0 and svg.read_text().startswith("<svg")
    res.write_text(out)
    code, out, _ = _run(capsys, "render", pentagon_file, "--result", str(res))
    assert code == 0 and out.count("dasharray") == 1


def test_cli_verify(capsys, tmp_path, pentagon_file):
    res = tmp_path / "res.json"
    res.write_text(_run(capsys, "min-perimeter", pentagon_file)[1])
    code, out, _ = _run(capsys, "verify", pentagon_file, str(res))
    doc = json.loads(out)
    assert code == 0 and doc["check"] == "reflection-law" and doc["ok"]
    moved = json.loads(res.read_text())
    moved["witness"][0]["tau"] = 0.6
    res.write_text(json.dumps(moved))
    assert not json.loads(_run(capsys, "verify", pentagon_file, str(res))[1])["ok"]


def test_cli_realize_sequence(capsys):
    code, out, _ = _run(capsys, "realize-sequence", "--kind", "perimeter", "NUUNU")
    doc = json.loads(out)
    assert code == 0 and doc["sequence"] == "NUUNU" and len(doc["polygon"]["vertices"]) == 5
    assert _run(capsys, "realize-sequence", "--kind", "area", "NNUNU")[0] == 1


def test_cli_bench_csv(capsys):
    code, out, _ = _run(capsys, "bench", "--problem", "min-area", "--sizes", "16,32", "--seed", "3", "--repeats", "1")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "n,wall_ns"
    assert [int(r.split(",")[0]) for r in lines[1:]] == [16, 32]
    assert all(int(r.split(",")[1]) > 0 for r in lines[1:])


def test_module_entry_point(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(PENTAGON_DOC)
    proc = subprocess.run(
        [sys.executable, "-m", "inscribed", "min-perimeter", str(path)], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["sequence"] == "NNNNN"
