import io as _io
import json

import pytest

from fin2cat.cli import run


def call(*argv):
    out = _io.StringIO()
    code = run([str(a) for a in argv], stdout=out)
    text = out.getvalue()
    return code, (json.loads(text) if text else None), text


def test_cat2_sketch_is_cat_injective(fixtures_dir):
    code, rep, _ = call("sketch", "check", "--doctrine", "cat", fixtures_dir / "cat2.sketch.json")
    assert code == 0
    assert len(rep["checks"]) == 11 and all(c["status"] == "pass" for c in rep["checks"])


def test_empty_inserter_is_a_success(fixtures_dir):
    code, rep, _ = call("limit", "--kind", "inserter", fixtures_dir / "bad-direction.json")
    assert code == 0
    assert rep["result"]["empty"] and rep["result"]["apex_objects"] == 0


def test_strictify_guard(fixtures_dir):
    code, rep, _ = call("monoidal", "strictify", "--maxlen", "0",
                        fixtures_dir / "z2-strict.monoidal.json")
    assert code == 2 and rep is None


def test_failed_check_exits_one(fixtures_dir):
    code, rep, _ = call("monoidal", "validate", fixtures_dir / "bad-pentagon.monoidal.json")
    assert code == 1
    assert rep["checks"][0]["status"] == "fail" and "witness" in rep["checks"][0]


def test_usage_and_io_errors(fixtures_dir, tmp_path):
    assert call("nonsense")[0] == 2
    assert call("cat", "validate", tmp_path / "missing.json")[0] == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert call("cat", "validate", tmp_path / "junk.json")[0] == 2
    assert call("limit", "--kind", "colimit", fixtures_dir / "bad-direction.json")[0] == 2


def test_budget_overflow_exits_two(fixtures_dir):
    code, _, _ = call("cat", "functors", fixtures_dir / "arrow.category.json",
                      fixtures_dir / "arrow.category.json", "--max-nodes", "1")
    assert code == 2


def test_reports_are_byte_identical(fixtures_dir):
    args = ("monoidal", "strictify", "--maxlen", "2", fixtures_dir / "z2-twisted.monoidal.json")
    assert call(*args)[2] == call(*args)[2]


def test_every_check_carries_an_anchor(fixtures_dir):
    _, rep, _ = call("monoidal", "strictify", "--maxlen", "2",
                     fixtures_dir / "z2-twisted.monoidal.json")
    assert rep["checks"] and all(c["anchor"] for c in rep["checks"])
    assert [c["name"] for c in rep["checks"]] == sorted(c["name"] for c in rep["checks"])


def test_quiet_drops_witnesses(fixtures_dir):
    _, rep, _ = call("monoidal", "validate", fixtures_dir / "bad-pentagon.monoidal.json",
                     "--quiet")
    assert "witness" not in rep["checks"][0]


def test_emit_writes_the_constructed_object(fixtures_dir, tmp_path):
    out = tmp_path / "apex.json"
    code, _, _ = call("limit", "--kind", "comma", fixtures_dir / "good-direction.json",
                      "--emit", out)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["objects"] and doc["cone"]["kind"] == "comma"
    # commands that build nothing emit their report
    rep_out = tmp_path / "report.json"
    call("sketch", "check", "--doctrine", "cat", fixtures_dir / "cat2.sketch.json",
         "--emit", rep_out)
    assert json.loads(rep_out.read_text())["command"][0] == "sketch"


def test_completion_runs_out_of_fuel(tmp_path):
    loop = {"level": "csk", "base": {"level": "gph", "base": {"vertices": ["0"]},
                                     "markings": {"E": [{"id": "f", "value": ["0", "0"]}]}}}
    p = tmp_path / "loop.json"
    p.write_text(json.dumps(loop))
    code, rep, _ = call("sketch", "complete", "--doctrine", "cat", "--fuel", "5", p)
    assert code == 1 and rep["checks"][0]["witness"]["outstanding"] > 0


def test_twocat_commands(fixtures_dir):
    src, tgt = fixtures_dir / "d1-source.twofunctor.json", fixtures_dir / "d1-target.twofunctor.json"
    assert call("twocat", "validate", src)[0] == 0
    code, rep, _ = call("twocat", "ps-hom", "--source", src, "--target", tgt)
    assert code == 0 and rep["result"]["count"] == 1
    code, rep, _ = call("twocat", "mate-inverse", "--source", src, "--target", tgt)
    assert code == 0 and rep["result"]["pointwise_equivalences"] == 1
    assert call("twocat", "span-embed", fixtures_dir / "iso-to-one.functor.json")[0] == 0
    assert call("twocat", "span-invert", fixtures_dir / "iso-to-one.span.json")[0] == 0


def test_strong_monoidal_hom(fixtures_dir):
    code, rep, _ = call("monoidal", "hom", fixtures_dir / "z2-strict.monoidal.json",
                        fixtures_dir / "z2-twisted.monoidal.json")
    assert code == 0 and rep["result"]["count"] == 4


def test_verify_empty_suite(fixtures_dir):
    code, rep, _ = call("verify", fixtures_dir / "suite-empty.json")
    assert code == 0 and rep["checks"] == []


def test_verify_names_a_corrupted_fixture(fixtures_dir):
    code, rep, _ = call("verify", fixtures_dir / "suite-corrupted.json", "--quiet")
    assert code == 1
    failed = [c["name"] for c in rep["checks"] if c["status"] == "fail"]
    assert failed == ["fixture arrow category"]


def test_verify_shipped_fixtures(fixtures_dir):
    code, rep, _ = call("verify", fixtures_dir / "suite-fixtures-only.json")
    assert code == 0 and len(rep["checks"]) == 8


def test_verify_selected_criteria(tmp_path):
    p = tmp_path / "suite.json"
    p.write_text(json.dumps({"criteria": [2, "relative adjoints"]}))
    code, rep, _ = call("verify", p)
    assert code == 0
    assert [c["name"][:12] for c in rep["checks"]] == ["criterion 02", "criterion 10"]


@pytest.mark.slow
def test_verify_full_default_suite():
    code, rep, _ = call("verify", "--quiet")
    assert code == 0
    assert sum(c["name"].startswith("criterion") for c in rep["checks"]) == 10
