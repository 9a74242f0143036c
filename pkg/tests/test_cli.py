import json

import pytest

from charlevels.cli import main
from charlevels.groups import (
    BUILTIN_CORPUS_LABELS,
    CorpusManifest,
    GroupSpecError,
    builtin_corpus,
    builtin_group,
    group_from_label,
    parse_group_file,
)
from charlevels.permgrp import element_order


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- group files ----------------------------------------------------------------

def test_parse_group_file_examples():
    s4 = parse_group_file('{"name":"S4","degree":4,"generators":[[[1,2]],[[1,2,3,4]]]}')
    assert s4.build().order() == 24
    triv = parse_group_file('{"name":"triv","degree":1,"generators":[]}')
    assert triv.build().order() == 1
    with pytest.raises(GroupSpecError, match="repeated"):
        parse_group_file('{"name":"bad","degree":3,"generators":[[[1,1]]]}')


@pytest.mark.parametrize("text,match", [
    ('{"name":"x","degree":3,"generators":[[[1,4]]]}', "outside 1..3"),
    ('{"name":"x","degree":3,\n "generators":[[[1,2]]', "line 2"),
    ('{"name":"x","degree":3}', "missing field"),
    ('[1, 2]', "JSON object"),
    ('{"name":"x","degree":3,"generators":[[[1,"a"]]]}', "non-integer"),
])
def test_parse_errors(text, match):
    with pytest.raises(GroupSpecError, match=match):
        parse_group_file(text)


@pytest.mark.parametrize("spec", builtin_corpus(), ids=lambda s: s.name)
def test_round_trip(spec):
    again = parse_group_file(spec.to_json())
    assert again == spec
    assert again.build().order() == spec.build().order()


def test_builtin_group_examples():
    psl = builtin_group("psl2", 8)
    G = psl.build()
    assert psl.degree == 9 and G.order() == 504
    c8 = builtin_group("cyclic", 8)
    assert c8.degree == 8 and c8.build().order() == 8
    dp = group_from_label("direct_product:cyclic:4,cyclic:3").build()
    assert dp.order() == 12 and any(element_order(g) == 12 for g in dp.elements())
    with pytest.raises(GroupSpecError, match="cyclic"):
        builtin_group("mathieu", 11)
    with pytest.raises(GroupSpecError):
        builtin_group("psl2", 16)


def test_corpus_manifest_validation():
    specs = builtin_corpus()
    assert len({s.name for s in specs}) == len(specs) == len(BUILTIN_CORPUS_LABELS)
    assert all(s.build().order() <= 2016 for s in specs)
    with pytest.raises(GroupSpecError):
        CorpusManifest(specs + specs[:1])


# -- commands --------------------------------------------------------------------

def test_table_command(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "table", "--group", "psl2:8")
    assert code == 0
    assert out.count("\nX.") == 9
    dest = tmp_path / "t.json"
    code, _, _ = run_cli(capsys, "table", "--group", "psl2:8", "--format", "json", "--out", str(dest))
    doc = json.loads(dest.read_text())
    assert code == 0 and len(doc["characters"]) == 9 and doc["group_order"] == 504


def test_levels_command(capsys):
    code, out, _ = run_cli(capsys, "levels", "--group", "cyclic:8", "-p", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["levels"][0]["histogram"]["counts"] == {"0": 2, "2": 2, "3": 4}
    code, out, _ = run_cli(capsys, "levels", "--group", "symmetric:4", "--format", "md")
    assert code == 0 and "p = 3" in out


def test_levels_from_file(capsys, tmp_path):
    f = tmp_path / "s4.json"
    f.write_text('{"name":"S4","degree":4,"generators":[[[1,2]],[[1,2,3,4]]]}')
    code, out, _ = run_cli(capsys, "levels", "--group", str(f), "-p", "2")
    assert code == 0 and json.loads(out)["levels"][0]["histogram"]["counts"] == {"0": 4}


def test_verify_command(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run_cli(capsys, "verify", "--group", "cyclic:12", "--out", str(dest))
    assert code == 0 and "0 failed" in out
    doc = json.loads(dest.read_text())
    assert {r["status"] for r in doc["results"]} <= {"pass", "not_applicable"}
    code, out, _ = run_cli(capsys, "verify", "--group", "cyclic:12", "--format", "md")
    assert code == 0 and "| C12 |" in out


def test_verify_user_corpus(capsys, tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    for spec in (builtin_group("cyclic", 4), builtin_group("symmetric", 3)):
        (d / f"{spec.name}.json").write_text(spec.to_json())
    code, out, _ = run_cli(capsys, "verify", "--all", "--corpus", str(d), "-p", "2", "--out", str(tmp_path / "r.json"))
    assert code == 0
    doc = json.loads((tmp_path / "r.json").read_text())
    assert sorted(g["name"] for g in doc["metadata"]["groups"]) == ["C4", "S3"]


def test_verify_exit_code_on_failure(capsys, monkeypatch):
    from charlevels import cli, verify

    def broken(ctx, p):
        return verify.CheckResult("continuity", ctx.name, p, verify.FAIL, [{"character": 0}])

    monkeypatch.setattr(verify, "check_continuity", broken)
    code, out, err = run_cli(capsys, "verify", "--group", "cyclic:4", "-p", "2")
    assert code == 1 and "FAIL C4 p=2 continuity" in err


def test_corpus_list(capsys):
    code, out, _ = run_cli(capsys, "corpus", "list", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == len(BUILTIN_CORPUS_LABELS)
    assert {"name": "PSL(2,8)", "degree": 9, "order": 504, "primes": [2, 3, 7]} in rows


@pytest.mark.parametrize("argv", [
    ["levels", "--group", "mathieu:11"],
    ["levels", "--group", "cyclic:8", "-p", "4"],
    ["levels", "--group", "cyclic:8", "-p", "x"],
    ["table", "--group", "symmetric:6", "--max-classes", "5"],
    ["table", "--group", "symmetric:6", "--max-order", "100"],
    ["levels", "--group", "missing_file.json"],
    ["verify"],
    ["verify", "--all", "--corpus", "/nonexistent"],
])
def test_errors_exit_2(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 2 and "error:" in err


def test_unknown_flag(capsys):
    code, _, err = run_cli(capsys, "table", "--group", "cyclic:2", "--bogus")
    assert code == 2 and "unrecognized" in err


def test_parallel_report_is_identical(capsys, tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    for label in ("cyclic:8", "symmetric:4", "psl2:7"):
        spec = group_from_label(label)
        (d / f"{spec.name}.json").write_text(spec.to_json())
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli(capsys, "verify", "--all", "--corpus", str(d), "--out", str(a))[0] == 0
    assert run_cli(capsys, "verify", "--all", "--corpus", str(d), "--jobs", "2", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
