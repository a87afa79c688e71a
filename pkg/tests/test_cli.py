import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from orbiram.cli import exact, run

DATA = Path(__file__).parent / "data"
MALFORMED = sorted((DATA / "malformed").glob("*.json"))


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, _ = call(*argv, "--format", "json")
    return code, json.loads(out)


def all_strings(obj):
    if isinstance(obj, dict):
        return all(all_strings(v) for v in obj.values())
    if isinstance(obj, list):
        return all(all_strings(v) for v in obj)
    return isinstance(obj, (str, bool)) or obj is None


def test_genus_example():
    code, out, _ = call("genus", DATA / "valid" / "genus_wild.json")
    assert code == 0 and "genus: 1/2" in out
    code, doc = call_json("genus", DATA / "valid" / "genus_wild.json")
    assert doc["genus"] == "1/2" and all_strings(doc)


def test_oracle_example():
    code, out, _ = call("oracle", "--family", "artin_schreier", "--trials", 100, "--seed", 7)
    assert code == 0 and out.strip() == "100/100 residuals zero"


def test_geometric_verdict_is_not_a_failure():
    code, doc = call_json("geometric", DATA / "valid" / "geometric_single_tame.json")
    assert code == 0 and doc["status"] == "NotGeometric" and doc["rule"] == "R5/one-point"
    assert "fundamental group is trivial" in doc["citation"]
    code, doc = call_json("geometric", DATA / "valid" / "geometric_hkg.json")
    assert code == 0 and doc["status"] == "Geometric" and doc["rule"] == "R3"


def test_degram_relative():
    code, doc = call_json("degram", DATA / "valid" / "degram_mixed.json")
    assert code == 0 and doc["degram"] == "8" and doc["hilbert_sum"] == "8"
    assert doc["relative"]["tower"] == doc["relative"]["hilbert_sum"] == "4"


def test_rh_check_cover_and_morphism():
    code, doc = call_json("rh-check", DATA / "valid" / "cover_as.json")
    assert code == 0 and doc["genus"] == "1" and doc["target_B_f"]["rh_residual"] == "0"
    code, doc = call_json("rh-check", DATA / "valid" / "morphism_kummer.json")
    assert code == 0 and doc["residual"] == "0" and doc["divisor_degree"] == "4"
    assert doc["minus_one_convention_residual"] == "-3"


def test_rh_check_invalid_morphism_exits_one():
    doc = {"v": 1, "p": 3, "degree": 1, "source": {"id": "X", "genus": 0, "points": ["0"]},
           "target": {"id": "X", "genus": 0, "points": ["0"]},
           "records": [{"y": "0", "x": "0", "e": 1, "P": {"tame": 2}}]}
    code, out, _ = call("rh-check", json.dumps(doc), "--format", "json")
    assert code == 1 and json.loads(out)["valid"] is False


def test_bundle_check():
    code, doc = call_json("bundle-check", DATA / "valid" / "bundle_projection.json")
    assert code == 0 and doc["projection"]["residual"] == ["0", "0"]
    assert doc["ledger"][0]["orb_degree"] == "3/2"
    code, doc = call_json("bundle-check", DATA / "valid" / "bundle_equivariant.json")
    assert code == 0 and doc["equivariant"]["invariant_ranks"] == ["1"]
    broken = {"v": 1, "equivariant": {"q": 5, "group": {"cyclic": 2}, "rank": 1,
                                      "lambda": [[[[1]], [[1]]], [[[4]], [[1]]]]}}
    code, out, _ = call("bundle-check", json.dumps(broken))
    assert code == 1 and "cocycle_valid: False" in out


@pytest.mark.parametrize("path", MALFORMED, ids=lambda p: p.stem)
def test_malformed_corpus_exits_two(path):
    verb = path.stem.split("_")[0]
    code, out, err = call(verb, path, "--format", "json")
    assert code == 2
    assert json.loads(out)["error"]["message"]
    assert err.startswith("error:")


def test_malformed_json_reports_position():
    code, _, err = call("genus", DATA / "malformed" / "genus_missing_comma.json")
    assert code == 2 and "line 1 column 9" in err


def test_inline_and_stdin(monkeypatch):
    code, out, _ = call("genus", '{"v": 1, "p": 5, "branch": {"0": {"tame": 3}, "1": {"tame": 3}}}')
    assert code == 0 and "genus: 2/3" in out
    monkeypatch.setattr(sys, "stdin", io.StringIO('{"v": 1, "p": 5, "branch": {}}'))
    code, out, _ = call("genus", "-")
    assert code == 0 and "genus: 0" in out


def test_usage_errors():
    assert call("genus")[0] == 2
    assert call("frobnicate", "{}")[0] == 2
    assert call("oracle", "--family", "elliptic")[0] == 2
    assert call("oracle", "--family", "kummer", "--q", 7, "--trials", 3)[0] == 0
    assert call("oracle", "--family", "kummer", "--q", 8, "--trials", 3)[0] == 2


@pytest.mark.parametrize("argv", [
    ("oracle", "--family", "kummer", "--seed", 11, "--trials", 20),
    ("oracle", "--family", "artin_schreier", "--seed", 11, "--trials", 20, "--q", 9),
    ("geometric", DATA / "valid" / "geometric_hkg.json"),
    ("rh-check", DATA / "valid" / "cover_as.json"),
])
def test_deterministic_json(argv):
    first = call(*argv, "--format", "json")
    second = call(*argv, "--format", "json")
    assert first == second and first[0] == 0


def test_exact_serializer():
    from fractions import Fraction
    assert exact({"a": [1, Fraction(1, 3), True, None]}) == {"a": ["1", "1/3", True, None]}
    with pytest.raises(TypeError):
        exact(0.5)


def test_module_entry_point_subprocess():
    proc = subprocess.run([sys.executable, "-m", "orbiram", "genus", str(DATA / "valid" / "genus_wild.json"),
                           "--format", "json"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["genus"] == "1/2"
