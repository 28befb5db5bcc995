import json
import subprocess
import sys

import pytest

from mixhodge import io
from mixhodge.cli import run
from mixhodge.fixtures import make_fixture
from mixhodge.kahler import validate_package
from mixhodge.mhs import check_opposedness
from mixhodge.rht import mc_check, validate_algebra

MHS = ["mhs(split)", "mhs(random:1)", "mhs(random:2)"]
PKG = ["acyclic-square", "elliptic", "torus-twisted", "formal(sphere2)", "formal-diamond(p2)",
       "tensor(elliptic,elliptic)"]


def report(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


@pytest.mark.parametrize("name", PKG)
def test_generated_packages_validate_after_round_trip(name):
    obj = json.loads(io.dumps(make_fixture(name)))
    P = io.package_from_json(io.parse(json.dumps(obj)))
    assert validate_package(P)["ok"]
    assert io.package_to_json(P) == obj


def test_acyclic_square_fixture_has_green_operator():
    P = io.package_from_json(make_fixture("acyclic-square"))
    assert any(any(r) for r in P.green)


@pytest.mark.parametrize("name", ["sphere2", "proj-plane", "k3", "tensor(sphere2,sphere2)"])
def test_ring_fixtures(name):
    A = io.algebra_from_json(make_fixture(name))
    assert validate_algebra(A)["ok"]
    assert io.algebra_to_json(A) == make_fixture(name)


@pytest.mark.parametrize("name", MHS)
def test_mhs_fixtures_round_trip(name):
    M = io.mixed_from_json(make_fixture(name))
    assert check_opposedness(M)[0]
    assert io.mixed_to_json(M) == make_fixture(name)


def test_dgla_fixture_round_trip():
    L, w, g = io.dgla_from_json(make_fixture("dgla(random:4)"))
    assert mc_check(L, w)
    assert io.dgla_to_json(L, w, g) == make_fixture("dgla(random:4)")


def test_diamond_round_trip():
    assert io.diamond_to_json(io.diamond_from_json(make_fixture("diamond(k3)"))) == make_fixture("diamond(k3)")


def test_validate_split_mhs(capsys):
    code, r = report(capsys, ["validate", "--fixture", "mhs(split)"])
    assert code == 0 and r["status"] == "pass"
    assert r["payload"]["hodge_numbers"] == {"0,0": 1, "0,1": 1, "1,0": 1, "1,1": 1}


def test_truncation_is_a_math_failure(capsys):
    code, r = report(capsys, ["validate", "--fixture", "mhs(cs-truncation)"])
    assert code == 1 and r["status"] == "fail"


def test_homotopy_of_k3(capsys):
    code, r = report(capsys, ["homotopy", "--fixture", "k3", "--n-max", "3"])
    assert code == 0 and r["payload"]["groups"]["3"]["dim"] == 252


def test_deligne_table_of_elliptic_curve(capsys):
    code, r = report(capsys, ["deligne", "--fixture", "diamond(elliptic)"])
    rows = {(x["m"], x["a"]): x["sequence"] for x in r["payload"]["rows"]}
    assert code == 0 and rows[(2, 1)] == 1


@pytest.mark.parametrize("argv", [
    ["rees", "--fixture", "filtration(pure:2:3)"],
    ["validate", "--fixture", "filtration(pure:1:3)"],
    ["split-mhs", "--fixture", "mhs(random:7)"],
    ["bundle-type", "--fixture", "mhs(random:7)"],
    ["pi3", "--fixture", "sphere2"],
    ["pi4", "--fixture", "acyclic-square-pi4"],
    ["mc-gauge", "--fixture", "dgla(random:2)"],
    ["kahler-validate", "--fixture", "tensor(elliptic,acyclic-square)"],
    ["formality", "--fixture", "acyclic-square", "--points", "1,0,0,1;2,1,1,1"],
    ["monodromy", "--fixture", "torus-twisted"],
    ["archimedean", "--fixture", "diamond(p1)", "--window", "2"],
    ["validate", "--fixture", "diamond(k3)"],
    ["validate", "--fixture", "dgla(random:2)"],
])
def test_commands_pass(capsys, argv):
    code, r = report(capsys, argv)
    assert code == 0 and r["status"] == "pass"
    assert r["provenance"]["input_sha256"]


def test_reports_are_deterministic(capsys, tmp_path):
    path = tmp_path / "pkg.json"
    assert run(["make-fixture", "torus-twisted", "--out", str(path)]) == 0
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        assert run(["monodromy", str(path), "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("text", ["not json", '{"kind": "nothing"}', '{"kind": "gc-algebra"}',
                                  '{"kind": "gc-algebra", "labels": ["1"], "degrees": [0], "products": [[0, 0]]}',
                                  '{"kind": "hodge-diamond", "n": 1, "h": [[0, 0, 1], [1, 0, 1]]}'])
def test_schema_errors_exit_two(tmp_path, capsys, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    code = run(["validate", str(path)])
    capsys.readouterr()
    assert code in (1, 2)
    if "hodge-diamond" not in text:
        assert code == 2


def test_wrong_kind_and_missing_input(capsys):
    assert run(["pi4", "--fixture", "sphere2"]) == 2
    assert run(["homotopy"]) == 2
    assert run(["make-fixture", "nonsense"]) == 2
    assert run(["archimedean", "--fixture", "diamond(p1)"]) == 2
    capsys.readouterr()


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "mixhodge", "pi3", "--fixture", "sphere2"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0 and json.loads(out.stdout)["payload"]["equal"]
