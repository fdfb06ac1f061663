import csv

import pytest

from orderlabel.cli import main, parse_sizes


@pytest.fixture
def chain_file(tmp_path):
    path = tmp_path / "chain.txt"
    path.write_text("# chain\n10 9\n" + "".join("{} {}\n".format(i, i + 1) for i in range(9)))
    return path


def test_encode_verify_chain(tmp_path, chain_file, capsys):
    out = tmp_path / "chain.orlb"
    assert main(["encode", str(chain_file), "--out", str(out)]) == 0
    assert main(["verify", str(chain_file), str(out)]) == 0
    assert "45/45 pairs match" in capsys.readouterr().out


def test_query(tmp_path, chain_file, capsys):
    out = tmp_path / "c.orlb"
    main(["encode", str(chain_file), "--out", str(out), "--profile", "fast", "--dict", "sorted"])
    capsys.readouterr()
    assert main(["query", str(out), "2", "7"]) == 0
    assert capsys.readouterr().out.startswith("u<v inspected_bits=")
    main(["query", str(out), "7", "2"])
    assert capsys.readouterr().out.startswith("v<u")


def test_query_antichain(tmp_path, capsys):
    src = tmp_path / "anti.txt"
    src.write_text("5 0\n")
    out = tmp_path / "anti.orlb"
    main(["encode", str(src), "--out", str(out)])
    capsys.readouterr()
    main(["query", str(out), "0", "4"])
    assert capsys.readouterr().out.startswith("incomparable")


def test_reach_round_trip(tmp_path, capsys):
    g = tmp_path / "g.txt"
    assert main(["gen", "--model", "digraph", "--n", "60", "--p", "0.04", "--seed", "2", "--out", str(g)]) == 0
    out = tmp_path / "g.orlb"
    assert main(["encode", str(g), "--profile", "reach", "--out", str(out)]) == 0
    assert main(["verify", str(g), str(out)]) == 0
    assert "3600/3600 pairs match" in capsys.readouterr().out
    main(["query", str(out), "0", "0"])
    assert capsys.readouterr().out.startswith("reaches:yes")


def test_verify_detects_mismatch(tmp_path, chain_file, capsys):
    out = tmp_path / "chain.orlb"
    main(["encode", str(chain_file), "--out", str(out)])
    other = tmp_path / "other.txt"
    other.write_text("10 8\n" + "".join("{} {}\n".format(i, i + 1) for i in range(8)))
    assert main(["verify", str(other), str(out)]) == 1
    assert "36/45 pairs match" in capsys.readouterr().out


def test_errors_give_nonzero_exit(tmp_path, chain_file, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n")
    assert main(["encode", str(bad), "--out", str(tmp_path / "x")]) == 2
    cyc = tmp_path / "cyc.txt"
    cyc.write_text("2 2\n0 1\n1 0\n")
    assert main(["encode", str(cyc), "--out", str(tmp_path / "x")]) == 2
    junk = tmp_path / "junk.orlb"
    junk.write_bytes(b"nope")
    assert main(["query", str(junk), "0", "1"]) == 2
    assert main(["universal-check", "9"]) == 2
    out = tmp_path / "c.orlb"
    main(["encode", str(chain_file), "--out", str(out)])
    assert main(["query", str(out), "0", "10"]) == 2
    assert "error:" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        main(["encode", str(chain_file), "--bogus"])
    assert exc.value.code != 0


def test_bench_csv(tmp_path):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--model", "layered", "--n", "50..150:50", "--pairs", "100", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert [(r["n"], r["profile"]) for r in rows] == [
        ("50", "tradeoff"), ("50", "fast"), ("100", "tradeoff"), ("100", "fast"), ("150", "tradeoff"), ("150", "fast")]


def test_universal_check_cli(tmp_path, capsys):
    edges = tmp_path / "u.txt"
    assert main(["universal-check", "3", "--out", str(edges)]) == 0
    text = capsys.readouterr().out
    assert "posets enumerated: 19" in text and "decodes to itself: yes" in text
    assert edges.read_text().split("\n")[0].count(" ") == 1


def test_parse_sizes():
    assert parse_sizes("50..300") == [50, 100, 150, 200, 250, 300]
    assert parse_sizes("100..3000:1000") == [100, 1100, 2100]
    assert parse_sizes("7, 9") == [7, 9]
    with pytest.raises(Exception):
        parse_sizes("a..b")
