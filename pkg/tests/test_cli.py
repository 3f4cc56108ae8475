import io
import json
from pathlib import Path

import pytest

from ktq import cli, groups, instances
from ktq.errors import InvalidInput
from ktq.instances import ResultFile, dump, instance_document, load, load_text, parse, parse_result, to_text

FIXTURES = Path(instances.__file__).parent / "fixtures"
DATA = Path(__file__).parent / "data"
ALL = sorted(FIXTURES.glob("*.json"))


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("path", ALL, ids=lambda p: p.stem)
def test_fixture_round_trip(path):
    f, _ = load(str(path))
    doc = dump(f)
    assert doc == json.loads(path.read_text())
    again = load_text(to_text(doc))
    assert dump(again) == doc


WITH_EXPECTED = [p for p in ALL if "expected" in json.loads(p.read_text())]


@pytest.mark.parametrize("path", WITH_EXPECTED, ids=lambda p: p.stem)
def test_fixture_expected_values(path):
    f, res, _ = cli.compute_result(str(path))
    exp = f.extras["expected"]
    for d, v in exp["dims"].items():
        assert res.dims[int(d)] == v
    if "per_summand" in exp:
        G = f.instance.group
        order = exp.get("class_order") or [G.labels[r] for r in res.per_summand]
        by_label = {G.labels[r]: dims[0] for r, dims in res.per_summand.items()}
        assert [by_label[c] for c in order] == exp["per_summand"]


def test_parse_is_canonical():
    doc = {"version": 1, "group": {"named": "cyclic:4"}, "space": {"type": "cosets", "subgroup": [2, 0]}}
    out = dump(parse(doc))
    assert out["space"]["subgroup"] == [0, 2]
    assert out["twist"] == {"type": "trivial"}
    assert dump(parse(out)) == out


def test_generated_table_document():
    G = groups.symmetric(3)
    doc = instance_document(G, {"type": "point"}, name="s3-table")
    f = parse(doc)
    assert f.name == "s3-table" and f.instance.group.order == 6


@pytest.mark.parametrize("doc,msg", [
    ([], "object"),
    ({"version": 2}, "version"),
    ({"version": 1, "space": {"type": "point"}}, "group"),
    ({"version": 1, "group": {"named": "nope"}, "space": {"type": "point"}}, "unknown named group"),
    ({"version": 1, "group": {"named": "klein"}, "space": {"type": "torus"}}, "space type"),
    ({"version": 1, "group": {"named": "klein"}, "space": {"type": "point"}, "twist": {"type": "cocycle"}},
     "modulus"),
    ({"version": 1, "group": {"order": 3, "mult_table": [[0, 1], [1, 0]]}, "space": {"type": "point"}}, "order"),
    ({"version": 1, "group": {"named": "klein"}, "space": {"type": "cosets", "subgroup": [9]}}, "range"),
    ({"version": 1, "group": {"named": "klein"}, "space": {"type": "gset", "action": "x"}}, "list"),
])
def test_invalid_documents(doc, msg):
    with pytest.raises(InvalidInput, match=msg):
        parse(doc)


def test_result_round_trip():
    r = ResultFile({0: 2, 1: 0}, ((("class", "e"), ("dims", [1, 0]), ("rep", 0), ("size", 1)),),
                   {0: ((1, -1), (0, "1/3"))}, {"engine": "ktq test"})
    doc = r.to_dict()
    assert parse_result(doc).to_dict() == doc
    assert doc["basis"]["0"] == [["1", "-1"], ["0", "1/3"]]
    with pytest.raises(InvalidInput):
        parse_result({"version": 1, "dims": {}, "provenance": {}, "basis": {"0": [[0.5]]}})


def test_validate(capsys):
    code, out, _ = run(["validate", FIXTURES / "klein.json"], capsys)
    assert code == 0
    assert "cocycle mod 2: cocycle identity ok on all triples" in out
    assert out.rstrip().endswith("valid")


def test_validate_flipped_cocycle(capsys):
    code, _, err = run(["validate", DATA / "klein-flipped.json"], capsys)
    assert code == 2
    assert "cocycle identity fails at (g, h, k) = (1, 1, 2)" in err


def test_missing_and_malformed_files(capsys, tmp_path):
    assert run(["validate", tmp_path / "none.json"], capsys)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["compute", bad], capsys)
    assert code == 2 and "not valid JSON" in err
    bad.write_bytes(b"\xff\xfe")
    assert run(["compute", bad], capsys)[0] == 2


def test_compute_json(capsys):
    code, out, _ = run(["compute", FIXTURES / "klein.json", "--per-summand", "--basis"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["dims"] == {"0": 1, "1": 0}
    assert [row["dims"][0] for row in doc["per_summand"]] == [1, 2, 2, 2]
    assert len(doc["basis"]["0"]) == 1 and doc["basis"]["1"] == []
    assert all(isinstance(x, str) for x in doc["basis"]["0"][0])
    assert doc["provenance"]["instance"] == "klein"
    assert len(doc["provenance"]["input_sha256"]) == 64


def test_compute_degree_flag(capsys):
    _, out, _ = run(["compute", FIXTURES / "d8-circle-sign-r.json", "--degree", "1"], capsys)
    assert json.loads(out)["dims"] == {"1": 3}


def test_compute_table(capsys):
    code, out, _ = run(["compute", FIXTURES / "d8-circle-trivial.json", "--table", "--degree", "0"], capsys)
    assert code == 0
    head, row = out.splitlines()
    assert head.split()[1:] == ["[e]", "[r2]", "[r]", "[s]", "[rs]", "K^0"]
    assert row.split()[1:] == ["1", "2", "4", "2", "2", "5"]


@pytest.mark.parametrize("fixture,kind", [
    ("klein", "alpha-regular"), ("d8-circle-sign-r", "circle-mv"), ("z2-circle-sign", "circle-mv"),
    ("trivial-point", "atiyah-segal"), ("d8-cosets", "atiyah-segal"), ("klein", "adem-ruan"),
    ("d8-cosets", "adem-ruan"),
])
def test_oracles_pass(capsys, fixture, kind):
    code, out, _ = run(["oracle", FIXTURES / f"{fixture}.json", "--kind", kind], capsys)
    assert code == 0
    assert out and all(line.startswith("PASS") for line in out.splitlines())


def test_oracle_wrong_instance(capsys):
    code, _, err = run(["oracle", FIXTURES / "klein.json", "--kind", "circle-mv"], capsys)
    assert code == 2 and "circles" in err
    assert run(["oracle", FIXTURES / "klein.json", "--kind", "atiyah-segal"], capsys)[0] == 2


@pytest.mark.parametrize("example", ["klein", "d8-circle"])
def test_reproduce(capsys, example):
    code, out, _ = run(["reproduce", "--example", example], capsys)
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["compute"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["reproduce", "--example", "other"])


def test_internal_failure_exit_code(capsys, monkeypatch):
    def broken(*a, **k):
        raise AssertionError("sabotaged")
    monkeypatch.setattr(cli, "compute", broken)
    code, _, err = run(["compute", FIXTURES / "klein.json"], capsys)
    assert code == 1 and "internal error" in err


def test_oracle_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli.cocycles, "alpha_regular_classes", lambda a: [0, 1])
    code, out, _ = run(["oracle", FIXTURES / "klein.json", "--kind", "alpha-regular"], capsys)
    assert code == 1 and out.startswith("FAIL")


def test_compute_is_deterministic():
    path = str(FIXTURES / "d8-cosets.json")
    outs = set()
    for _ in range(3):
        buf = io.StringIO()
        cli.cmd_compute(path, per_summand=True, basis=True, out=buf)
        outs.add(buf.getvalue())
    assert len(outs) == 1
