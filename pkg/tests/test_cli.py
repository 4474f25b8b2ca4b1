import json

import pytest

from braidcrypt.cli import main, parse_seeds


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nf_worked_example(capsys):
    code, out, _ = run(capsys, "nf", "B4: 1 -3 2")
    assert code == 0 and out == "B4: D^-1 | 3 4 2 1 | 3 1 2 4\n"


def test_nf_variants(capsys):
    _, out, _ = run(capsys, "nf", "--lengths", "B4: 1 -3 2")
    assert "gar 13" in out and "redgar 3" in out
    _, out, _ = run(capsys, "nf", "--right", "B3: 1 2")
    assert out.strip().endswith("D^0")
    _, out, _ = run(capsys, "nf", "--bkl", "B4 band: (3,1)")
    assert out.strip() == "B4 band: d^0 | (1 3)"


def test_wp_exit_codes(capsys):
    assert run(capsys, "wp", "--method", "handle", "B3: 1 2 1 -2 -1 -2")[0] == 0
    assert run(capsys, "wp", "B3: 1 2", "B3: 2 1")[0] == 1
    code, out, _ = run(capsys, "wp", "--method", "burau", "B3: 1 2 1", "B3: 2 1 2")
    assert code == 0 and "probably equal" in out
    assert run(capsys, "wp", "--method", "handle", "--budget", "1", "B3: 1 2 1 -2 -1 -2")[0] == 2


def test_conj(capsys, tmp_path):
    code, out, _ = run(capsys, "conj", "--kind", "sc", "B4: 3 2 1")
    assert code == 0 and out.startswith("SC: 2 vertices")
    graph = tmp_path / "g.tsv"
    run(capsys, "conj", "--kind", "uss", "--emit-graph", str(graph), "B4: 1 3 2 1 1 2 2 1 3")
    lines = graph.read_text().splitlines()
    assert len(lines) == 12 and all(len(line.split("\t")) == 3 for line in lines)
    assert run(capsys, "conj", "--budget-vertices", "2", "--kind", "sss", "B4: 1 3 2 1 1 2 2 1 3")[0] == 2
    code, out, _ = run(capsys, "conj", "B4: 1", "--target", "B4: 3")
    assert code == 0 and out.startswith("B4: D^")
    assert run(capsys, "conj", "B4: 1", "--target", "B4: 1 1")[0] == 1


def test_parse_errors(capsys):
    assert run(capsys, "nf", "B4: 7")[0] == 64
    assert run(capsys, "nf", "garbage")[0] == 64
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 64


@pytest.mark.parametrize("scheme", ["aag", "ko", "ko-enc", "sdg", "shifted"])
def test_protocol_csv(capsys, scheme):
    code, out, _ = run(capsys, "protocol", "--scheme", scheme, "--runs", "3", "--seed", "5")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "seed,scheme,n,key_agree,seconds"
    assert lines[1:] == [f"{i},{scheme},8,1," for i in range(3)]
    assert out == run(capsys, "protocol", "--scheme", scheme, "--runs", "3", "--seed", "5")[1]


def test_protocol_odd_n(capsys):
    assert run(capsys, "protocol", "--scheme", "ko", "--n", "7")[0] == 64


def test_attack_csv(capsys, tmp_path):
    out = tmp_path / "a.csv"
    code, _, _ = run(capsys, "attack", "--attack", "lba-mem", "--memory", "2", "4", "--n", "6", "--seeds", "0:2", "--out", str(out))
    rows = out.read_text().splitlines()
    assert code == 0 and len(rows) == 5 and rows[0].startswith("seed,attack")
    seeds = tmp_path / "seeds.txt"
    seeds.write_text("4\n9\n")
    _, text, _ = run(capsys, "attack", "--n", "6", "--seeds", str(seeds))
    assert [r.split(",")[0] for r in text.splitlines()[1:]] == ["4", "9"]


def test_parse_seeds():
    assert parse_seeds("3") == [0, 1, 2]
    assert parse_seeds("2:4") == [2, 3]


def test_gen_and_config(capsys, tmp_path, monkeypatch):
    _, out, _ = run(capsys, "gen", "--count", "3", "--length", "5", "--n", "4", "--pairs")
    lines = out.splitlines()
    assert len(lines) == 3 and all(line.startswith("B4: ") and "\t" in line for line in lines)
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n": 5, "seed": 9}))
    monkeypatch.setenv("BRAIDCRYPT_CONFIG", str(cfg))
    _, out, _ = run(capsys, "gen", "--count", "1", "--length", "4")
    assert out.startswith("B5: ")
    cfg.write_text(json.dumps({"out_dir": str(tmp_path)}))
    run(capsys, "gen", "--count", "2", "--out", "corpus.txt")
    assert len((tmp_path / "corpus.txt").read_text().splitlines()) == 2
    cfg.write_text(json.dumps({"vertex_budget": 0}))
    assert run(capsys, "gen")[0] == 64
    cfg.write_text(json.dumps({"colour": 1}))
    assert run(capsys, "gen")[0] == 64


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "1,4,7")
    assert code == 0 and out.count("[PASS]") == 3 and "3/3 criteria passed" in out
