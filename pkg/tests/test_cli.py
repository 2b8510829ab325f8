import csv
import io

import pytest

from tdsub import codec
from tdsub.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("dna", [False, True])
def test_encode_decode_file_roundtrip(tmp_path, capsys, dna):
    msgs = tmp_path / "msg.txt"
    msgs.write_text("# two messages\n0 1 2 3 4 5 6 7 8 9 a\nf f f f 0 0 0 0 1 1 1\n")
    seqs, back = tmp_path / "seq.txt", tmp_path / "back.txt"
    flag = ["--dna"] if dna else []
    assert run(capsys, "encode", "--in", str(msgs), "--out", str(seqs), *flag)[0] == 0
    lines = seqs.read_text().split()
    assert len(lines) == 2 and all(len(w) == 340 for w in lines)
    assert set("".join(lines)) <= (set("ACGT") if dna else set("0123"))
    code, _, err = run(capsys, "decode", "--in", str(seqs), "--out", str(back), *flag)
    assert code == 0 and "case: markers-aligned" in err
    assert back.read_text().splitlines() == [
        "0 1 2 3 4 5 6 7 8 9 a",
        "f f f f 0 0 0 0 1 1 1",
    ]


def test_decode_after_replayed_trace(tmp_path, capsys):
    params = codec.make_params(4, "01201", 18, 4)
    x = codec.encode(params, [7] * 11)
    seq = tmp_path / "x.txt"
    seq.write_text("".join(map(str, x)) + "\n")
    trace = tmp_path / "t.txt"
    trace.write_text("D 3 2\nS 20 3\nD 100 3\n")
    noisy = tmp_path / "y.txt"
    assert run(capsys, "replay", "--trace", str(trace), "--in", str(seq), "--out", str(noisy))[0] == 0
    assert len(noisy.read_text().strip()) == 345
    code, out, err = run(capsys, "decode", "--in", str(noisy))
    assert code == 0 and out.strip() == " ".join(["7"] * 11)
    assert "status: ok" in err


def test_decode_failure_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("0123\n")
    code, out, _ = run(capsys, "decode", "--in", str(bad))
    assert code == 1 and "decode failure" in out


@pytest.mark.parametrize("content, where", [("0124\n", "line 1, column 4"), ("\n01x\n", "line 2")])
def test_malformed_sequence_file(tmp_path, capsys, content, where):
    f = tmp_path / "s.txt"
    f.write_text(content)
    code, _, err = run(capsys, "decode", "--in", str(f))
    assert code == 2 and where in err


def test_malformed_message_file(tmp_path, capsys):
    f = tmp_path / "m.txt"
    f.write_text("0 1 2\n")
    code, _, err = run(capsys, "encode", "--in", str(f))
    assert code == 2 and "expected 11 symbols" in err


def test_missing_file_and_bad_params(capsys):
    assert run(capsys, "decode", "--in", "/nonexistent/file")[0] == 2
    assert run(capsys, "encode", "--m", "17", "--in", "/dev/null")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_simulate_without_duplications(capsys, tmp_path):
    code, out, _ = run(capsys, "simulate", "--trials", "20", "--max-dups", "0", "--no-sub")
    assert code == 0 and "rate=1.000000" in out


def test_simulate_is_deterministic(capsys):
    a = run(capsys, "simulate", "--trials", "30", "--seed", "5", "--field-degree", "3")
    b = run(capsys, "simulate", "--trials", "30", "--seed", "5", "--field-degree", "3",
            "--workers", "2")
    assert a == b and a[0] == 0


def test_rates_csv(capsys):
    code, out, _ = run(capsys, "rates", "--q", "4", "--m-range", "18..20", "--best-sigma")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == ["sigma", "m", "M", "lambda", "rate_exact", "rate_lb", "rate_asymptotic"]
    assert rows[0]["sigma"] == "01201" and rows[0]["M"] == "11900743"
    assert float(rows[0]["lambda"]) == pytest.approx(2.6534, abs=5e-4)
    assert [r["m"] for r in rows] == ["18", "19", "20"]
    assert run(capsys, "rates", "--m-range", "18..20") == (code, out, "")


def test_rates_small_counts_give_nan(capsys):
    _, out, _ = run(capsys, "rates", "--q", "3", "--sigma", "01020", "--m-range", "1..2")
    assert out.splitlines()[1].endswith("nan,nan,nan")


def test_rates_bad_range(capsys):
    assert run(capsys, "rates", "--m-range", "18-20")[0] == 2


def test_verify_lemma1(capsys):
    code, out, _ = run(capsys, "verify", "lemma1", "--base", "012", "--cap", "13")
    assert code == 0
    assert "PASS lemma1 max root length: max=13 witness=0120103212012" in out


def test_verify_graph_and_rates(capsys):
    code, out, _ = run(capsys, "verify", "graph", "--q", "4")
    assert code == 0 and out.count("PASS") == 3
    code, out, _ = run(capsys, "verify", "rates")
    assert code == 0 and "FAIL" not in out


def test_verify_theorem1_small(capsys):
    code, out, _ = run(capsys, "verify", "theorem1", "--trials", "200")
    assert code == 0 and out.startswith("PASS theorem1")


def test_replay_requires_events(tmp_path, capsys):
    t = tmp_path / "t.txt"
    t.write_text("# nothing\n")
    assert run(capsys, "replay", "--trace", str(t), "--in", "/dev/null")[0] == 2


def test_dna_requires_q4(tmp_path, capsys):
    f, t = tmp_path / "s.txt", tmp_path / "t.txt"
    f.write_text("ACGT\n")
    t.write_text("D 0 1\n")
    code, _, err = run(capsys, "replay", "--trace", str(t), "--q", "3", "--dna", "--in", str(f))
    assert code == 2 and "q = 4" in err
    code, out, _ = run(capsys, "replay", "--trace", str(t), "--dna", "--in", str(f))
    assert code == 0 and out == "AACGT\n"
