import json
import subprocess
import sys

import pytest

from curvex import (automorphism_group, build_tower, farey_ball, farey_level, gstar_level, nerve,
                    product_star, complete_graph, reconstruct_curve_complex, tower_report)
from curvex.cli import main, parse_config
from curvex.complex import Complex2
from curvex.farey import fibers_of
from curvex.tower import surface_product


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_quotient_level5(capsys):
    code, out, _ = run(capsys, "quotient", "--level", "5")
    assert code == 0
    doc = json.loads(out)
    assert (len(doc["vertices"]), len(doc["edges"]), len(doc["triangles"])) == (12, 30, 20)


def test_quotient_modulus_limit(capsys):
    code, out, err = run(capsys, "quotient", "--level", "99999")
    assert code == 2 and out == ""
    assert err.startswith("ModulusLimitExceeded:")


def test_usage_errors(capsys):
    assert run(capsys, "quotient")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "tower", "--surface", "1,1", "--levels", "2,x")[0] == 2
    assert run(capsys, "product", "--surface", "nonsense", "--level", "2")[0] == 2


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_byte_identical_payloads(capsys, tmp_path):
    cases = [
        (["farey", "--depth", "3"], farey_ball(3).to_json()),
        (["quotient", "--level", "7"], farey_level(7).to_json()),
        (["quotient", "--level", "4", "--star"], gstar_level(4).to_json()),
        (["product", "--surface", "1,1+0,4", "--level", "3"], surface_product("1,1+0,4", 3).flattened.to_json()),
        (["tower", "--surface", "1,1", "--levels", "2,4"], json.dumps(tower_report(build_tower("1,1", [2, 4])))),
    ]
    for argv, want in cases:
        code, out, _ = run(capsys, *argv)
        assert code == 0
        assert out == want + "\n"


def test_file_commands(capsys, tmp_path):
    src = tmp_path / "rook.json"
    c = product_star([complete_graph(3), complete_graph(4)]).flattened
    src.write_text(c.to_json())

    code, out, _ = run(capsys, "reconstruct", "--in", str(src))
    assert code == 0 and out == reconstruct_curve_complex(c).to_json() + "\n"

    code, out, _ = run(capsys, "aut", "--in", str(src))
    assert code == 0 and out == automorphism_group(c, respect_triangles=False).to_json() + "\n"
    assert json.loads(out)["order"] == 6 * 24

    code, out, _ = run(capsys, "nerve", "--in", str(src))
    assert code == 0 and out == nerve(c, fibers_of(c)).to_json() + "\n"

    cover = tmp_path / "cover.json"
    cover.write_text(json.dumps([[0, 1, 2, 3], [4, 5, 6, 7, 8, 9, 10, 11]]))
    code, out, _ = run(capsys, "nerve", "--in", str(src), "--cover", str(cover))
    assert code == 0 and json.loads(out)["edges"] == []


def test_aut_with_triangles(capsys, tmp_path):
    src = tmp_path / "f5.json"
    src.write_text(farey_level(5).to_json())
    code, out, _ = run(capsys, "aut", "--in", str(src), "--triangles")
    doc = json.loads(out)
    assert code == 0 and doc["order"] == 120 and doc["orientation_preserving_index"] == 2


def test_missing_file_and_bad_json(capsys, tmp_path):
    code, _, err = run(capsys, "aut", "--in", str(tmp_path / "missing.json"))
    assert code == 2 and "FileNotFoundError" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [{"id": 0, "label": "a"}], "edges": [[0, 5]]}')
    code, _, err = run(capsys, "aut", "--in", str(bad))
    assert code == 2


def test_nerve_needs_fibers(capsys, tmp_path):
    src = tmp_path / "k3.json"
    src.write_text(complete_graph(3).to_json())
    code, _, err = run(capsys, "nerve", "--in", str(src))
    assert code == 2 and err.startswith("MissingFiberMetadata:")


def test_dot_and_out(capsys, tmp_path):
    target = tmp_path / "f2.dot"
    code, out, _ = run(capsys, "quotient", "--level", "2", "--format", "dot", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == farey_level(2).to_dot()


def test_deadline_exit_code(capsys, tmp_path):
    src = tmp_path / "big.json"
    src.write_text(product_star([complete_graph(6)] * 3).flattened.to_json())
    code, _, err = run(capsys, "reconstruct", "--in", str(src), "--deadline", "0")
    assert code == 1 and err.startswith("DeadlineExceeded:")


def test_wrong_type_is_reported(capsys):
    code, _, err = run(capsys, "tower", "--surface", "2,0", "--levels", "2")
    assert code == 2 and err.startswith("WrongType:")


def test_config_parsing():
    cfg = parse_config(["tower", "--surface", "1,1", "--levels", "2,4,8", "--deadline", "3"])
    assert cfg.levels == [2, 4, 8] and cfg.deadline == 3.0 and cfg.fmt is None
    cfg = parse_config(["quotient", "--level", "6", "--star"])
    assert cfg.levels == [6] and cfg.star


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "curvex", "quotient", "--level", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert Complex2.from_json(proc.stdout) == farey_level(3)


@pytest.mark.slow
def test_verify_default(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "default")
    rows = [line for line in out.splitlines()[1:] if line.strip()]
    assert code == 0
    assert len(rows) == 12
    assert all(" PASS " in line for line in rows)
