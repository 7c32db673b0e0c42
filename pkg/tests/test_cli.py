import random

import pytest

from slptext.cli import main
from slptext.grammar import load_slp, stats


@pytest.fixture
def corpus_file(tmp_path):
    rng = random.Random(17)
    base = bytes(rng.choice(b"acgtn") for _ in range(3000))
    text = base * 12
    path = tmp_path / "corpus.bin"
    path.write_bytes(text)
    return path, text


def run(capsysbinary, *argv):
    code = main([str(a) for a in argv])
    captured = capsysbinary.readouterr()
    return code, captured.out, captured.err


class TestBuildEncodeDecode:
    def test_full_pipeline_round_trip(self, tmp_path, corpus_file, capsysbinary):
        path, text = corpus_file
        slp_path = tmp_path / "c.slp"
        code, out, _ = run(capsysbinary, "build", path, "-o", slp_path)
        assert code == 0
        assert out.startswith(b"sigma=")
        # the stats line carries all six fields
        fields = dict(kv.split(b"=") for kv in out.split())
        assert set(fields) == {b"sigma", b"n", b"s", b"r", b"d", b"h"}
        assert int(fields[b"n"]) == len(text)

        for scheme in ("shaped", "naive"):
            enc_path = tmp_path / f"c.{scheme}"
            code, _, _ = run(capsysbinary, "encode", slp_path, "-o", enc_path,
                             "--scheme", scheme)
            assert code == 0
            code, out, _ = run(capsysbinary, "decode", enc_path)
            assert code == 0 and out == text

        code, out, _ = run(capsysbinary, "decode", slp_path)
        assert code == 0 and out == text

    def test_build_with_plain_repair(self, tmp_path, capsysbinary):
        path = tmp_path / "t.bin"
        path.write_bytes(b"mississippi" * 30)
        slp_path = tmp_path / "t.slp"
        code, out, _ = run(capsysbinary, "build", path, "-o", slp_path,
                           "--builder", "repair")
        assert code == 0
        slp = load_slp(slp_path.read_bytes())
        assert stats(slp).line().encode() == out.strip()

    def test_build_window_modulus_flags(self, tmp_path, corpus_file, capsysbinary):
        path, text = corpus_file
        out_a = tmp_path / "a.slp"
        out_b = tmp_path / "b.slp"
        assert run(capsysbinary, "build", path, "-o", out_a,
                   "--window", 8, "--modulus", 8)[0] == 0
        assert run(capsysbinary, "build", path, "-o", out_b,
                   "--window", 8, "--modulus", 8)[0] == 0
        # determinism: same flags, byte-identical grammar files
        assert out_a.read_bytes() == out_b.read_bytes()


class TestAccessExtract:
    @pytest.fixture
    def encoded(self, tmp_path, corpus_file, capsysbinary):
        path, text = corpus_file
        slp_path = tmp_path / "c.slp"
        enc_path = tmp_path / "c.sslp"
        run(capsysbinary, "build", path, "-o", slp_path)
        run(capsysbinary, "encode", slp_path, "-o", enc_path)
        return enc_path, text

    def test_access(self, encoded, capsysbinary):
        enc_path, text = encoded
        code, out, _ = run(capsysbinary, "access", enc_path, "--pos", 17)
        assert code == 0 and out == text[16:17]

    def test_extract(self, encoded, capsysbinary):
        enc_path, text = encoded
        code, out, _ = run(capsysbinary, "extract", enc_path,
                           "--pos", 100, "--len", 64)
        assert code == 0 and out == text[99:163]

    def test_extract_17_of_demo_grammar_prints_T(self, tmp_path, capsysbinary):
        from slptext.grammar import save_slp
        from conftest import gattaca_slp
        slp_path = tmp_path / "g.slp"
        enc_path = tmp_path / "g.sslp"
        slp_path.write_bytes(save_slp(gattaca_slp()))
        assert run(capsysbinary, "encode", slp_path, "-o", enc_path)[0] == 0
        code, out, _ = run(capsysbinary, "extract", enc_path,
                           "--pos", 17, "--len", 1)
        assert code == 0 and out == b"T"

    def test_zero_based_flag(self, encoded, capsysbinary):
        enc_path, text = encoded
        code, out, _ = run(capsysbinary, "extract", enc_path,
                           "--pos", 0, "--len", 5, "--zero-based")
        assert code == 0 and out == text[0:5]
        code, out, _ = run(capsysbinary, "access", enc_path,
                           "--pos", 0, "--zero-based")
        assert code == 0 and out == text[0:1]

    def test_out_of_range_is_data_error(self, encoded, capsysbinary):
        enc_path, text = encoded
        code, _, err = run(capsysbinary, "access", enc_path,
                           "--pos", len(text) + 1)
        assert code == 2 and b"error" in err


class TestStats:
    def test_stats_on_all_formats(self, tmp_path, corpus_file, capsysbinary):
        path, _text = corpus_file
        slp_path = tmp_path / "c.slp"
        run(capsysbinary, "build", path, "-o", slp_path)
        code, out_slp, _ = run(capsysbinary, "stats", slp_path)
        assert code == 0 and b" h=" in out_slp
        for scheme, probe in (("shaped", b" d="), ("naive", b" r=")):
            enc_path = tmp_path / f"c.{scheme}"
            run(capsysbinary, "encode", slp_path, "-o", enc_path,
                "--scheme", scheme)
            code, out, _ = run(capsysbinary, "stats", enc_path)
            assert code == 0 and probe in out

    def test_d_at_most_r(self, tmp_path, corpus_file, capsysbinary):
        path, _text = corpus_file
        slp_path = tmp_path / "c.slp"
        run(capsysbinary, "build", path, "-o", slp_path)
        _, out, _ = run(capsysbinary, "stats", slp_path)
        fields = dict(kv.split(b"=") for kv in out.split())
        assert int(fields[b"d"]) <= int(fields[b"r"])


class TestGen:
    def test_gen_deterministic(self, tmp_path, capsysbinary):
        a = tmp_path / "a.bin"
        b = tmp_path / "b.bin"
        for out in (a, b):
            code, _, _ = run(capsysbinary, "gen", "-m", 1000, "-c", 5,
                             "-e", 0.001, "--seed", 3, "-o", out)
            assert code == 0
        assert a.read_bytes() == b.read_bytes()
        assert len(a.read_bytes()) == 5000


class TestBenchCommand:
    def test_csv_output(self, tmp_path, corpus_file, capsysbinary):
        path, _text = corpus_file
        slp_path = tmp_path / "c.slp"
        shaped_path = tmp_path / "c.sslp"
        naive_path = tmp_path / "c.nslp"
        run(capsysbinary, "build", path, "-o", slp_path)
        run(capsysbinary, "encode", slp_path, "-o", shaped_path)
        run(capsysbinary, "encode", slp_path, "-o", naive_path,
            "--scheme", "naive")
        csv_path = tmp_path / "report.csv"
        code, _, _ = run(capsysbinary, "bench", shaped_path, naive_path,
                         "--queries", 40, "--lengths", "1,4",
                         "--threads", "1,2", "--seed", 1,
                         "--csv", csv_path)
        assert code == 0
        lines = csv_path.read_text().strip().split("\n")
        assert lines[0] == "encoding,length,threads,mean_us,total_s,size_bytes"
        assert len(lines) == 1 + 2 * 2 * 2
        assert {line.split(",")[0] for line in lines[1:]} == {"shaped", "naive"}

    def test_mismatched_texts_exit_2(self, tmp_path, capsysbinary):
        a_txt = tmp_path / "a.txt"
        b_txt = tmp_path / "b.txt"
        a_txt.write_bytes(b"aaaaabbbbb" * 50)
        b_txt.write_bytes(b"xxxxxyyyyy" * 50)
        enc_paths = []
        for txt in (a_txt, b_txt):
            slp_path = txt.with_suffix(".slp")
            enc_path = txt.with_suffix(".sslp")
            run(capsysbinary, "build", txt, "-o", slp_path)
            run(capsysbinary, "encode", slp_path, "-o", enc_path)
            enc_paths.append(enc_path)
        code, _, err = run(capsysbinary, "bench", *enc_paths,
                           "--queries", 10, "--lengths", "1", "--threads", "1")
        assert code == 2 and b"error" in err


class TestExitCodes:
    def test_usage_error_is_1(self, capsysbinary):
        with pytest.raises(SystemExit) as exc:
            main(["build"])  # missing required arguments
        assert exc.value.code == 1

    def test_unknown_command_is_1(self, capsysbinary):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 1

    def test_missing_file_is_2(self, capsysbinary):
        code, _, err = run(capsysbinary, "stats", "/nonexistent/file.slp")
        assert code == 2

    def test_garbage_file_is_2(self, tmp_path, capsysbinary):
        bad = tmp_path / "bad.slp"
        bad.write_bytes(b"this is not a grammar file at all")
        code, _, err = run(capsysbinary, "stats", bad)
        assert code == 2 and b"error" in err

    def test_truncated_encoding_is_2(self, tmp_path, corpus_file, capsysbinary):
        path, _text = corpus_file
        slp_path = tmp_path / "c.slp"
        enc_path = tmp_path / "c.sslp"
        run(capsysbinary, "build", path, "-o", slp_path)
        run(capsysbinary, "encode", slp_path, "-o", enc_path)
        clipped = tmp_path / "clipped.sslp"
        clipped.write_bytes(enc_path.read_bytes()[:-20])
        code, _, err = run(capsysbinary, "decode", clipped)
        assert code == 2
