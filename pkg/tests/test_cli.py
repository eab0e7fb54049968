import io
import json
import os
import subprocess
import sys

import pytest

from uzstem.cli import main, tokenize
from uzstem.inventory import default_grammar_dir


def run(argv, stdin_text=None, monkeypatch=None):
    out = io.StringIO()
    if stdin_text is not None:
        monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(stdin_text.encode("utf-8"))))
    code = main(argv, out)
    return code, out.getvalue()


def test_analyze_golden_via_stdin(monkeypatch):
    code, out = run(["analyze"], "bajartirilmayaptimi\n", monkeypatch)
    assert code == 0
    (line,) = out.splitlines()
    cols = line.split("\t")
    assert cols[:4] == ["bajartirilmayaptimi", "bajartirilmayaptimi", "bajar", "-"]
    assert len(cols[4:]) == 6
    assert cols[4] == "tir:RelativeVerb:causative"


def test_empty_input(monkeypatch):
    assert run(["analyze"], "", monkeypatch) == (0, "")


def test_three_words_in_order(monkeypatch):
    code, out = run(["stem"], "kitoblarim boryapsiz gul\n", monkeypatch)
    assert (code, out) == (0, "kitob\nbor\ngul\n")


def test_stem_passthrough(tmp_path):
    f = tmp_path / "in.txt"
    f.write_text("xyz123\n", encoding="utf-8")
    assert run(["stem", str(f)]) == (0, "xyz123\n")


def test_unanalyzed_flag(tmp_path):
    f = tmp_path / "in.txt"
    f.write_text("gul\n", encoding="utf-8")
    code, out = run(["analyze", str(f)])
    assert out.split("\t")[3].strip() == "unanalyzed"


def test_tokenize_splits_hyphen_and_keeps_apostrophes():
    assert list(tokenize("bor-yap-siz  o'g'il, ...")) == ["bor", "yap", "siz", "o'g'il,"]


def test_json_and_tsv_agree(tmp_path):
    f = tmp_path / "in.txt"
    f.write_text("dadamlar serhosil olma\n", encoding="utf-8")
    _, tsv = run(["analyze", "--all", str(f)])
    _, js = run(["analyze", "--all", "--format", "json", str(f)])
    tsv_rows = [l.split("\t") for l in tsv.splitlines()]
    json_rows = [json.loads(l) for l in js.splitlines()]
    assert len(tsv_rows) == len(json_rows) > 3
    for cols, rec in zip(tsv_rows, json_rows):
        assert cols[:5] == [rec["token"], rec["normalized"], str(rec["rank"]), rec["stem"], ",".join(rec["flags"]) or "-"]
        assert cols[5:] == [f"{m['surface']}:{m['class']}:{m['gloss']}" for m in rec["morphemes"]]
    assert list(json_rows[0]) == ["token", "normalized", "stem", "morphemes", "flags", "rank"]


def test_output_is_byte_identical(tmp_path):
    f = tmp_path / "in.txt"
    f.write_text("bajartirilmayaptimi kitoblarim olma\n" * 20, encoding="utf-8")
    assert run(["analyze", "--all", str(f)]) == run(["analyze", "--all", str(f)])


def test_min_stem_len_flag(tmp_path):
    f = tmp_path / "in.txt"
    f.write_text("boryapsiz\n", encoding="utf-8")
    assert run(["stem", "--min-stem-len", "4", str(f)])[1] != "bor\n"


def test_validate_shipped(capsys):
    code, out = run(["validate"])
    assert code == 0
    assert out.splitlines()[-1] == "7/7 classes OK, 172 affixes, 222 allomorphs"


def _copy_grammar(tmp_path, drop=None, extra=None):
    lines = (default_grammar_dir() / "affixes.tsv").read_text(encoding="utf-8").splitlines()
    if drop:
        lines = [l for l in lines if not l.startswith(drop)]
    if extra:
        lines.append(extra)
    d = tmp_path / "grammar"
    d.mkdir()
    (d / "affixes.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return d


def test_validate_deleted_row(tmp_path):
    d = _copy_grammar(tmp_path, drop="4\t10\t")
    code, out = run(["validate", str(d)])
    assert code == 1
    assert "class 4 Derivational  affixes 70/71" in out
    assert "MISMATCH" in out


def test_validate_duplicate_row(tmp_path, capsys):
    d = _copy_grammar(tmp_path, extra="1\t18\tyap\tS\tcontinuous tense")
    code, _ = run(["validate", str(d)])
    assert code == 1
    assert "duplicate" in capsys.readouterr().err


def test_grammar_env_var(tmp_path, monkeypatch, capsys):
    d = _copy_grammar(tmp_path, drop="4\t10\t")
    monkeypatch.setenv("UZSTEM_GRAMMAR", str(d))
    assert run(["validate"])[0] == 1
    assert run(["--grammar", str(default_grammar_dir()), "validate"])[0] == 0


def test_export_prefix_machine():
    code, out = run(["export", "7"])
    assert code == 0
    edges = [l for l in out.splitlines() if not l.startswith("#")]
    assert len(edges) == 7
    assert "# states: 2" in out


def test_export_main_contains_every_class():
    code, out = run(["export", "main", "--ltr"])
    assert code == 0
    classes = {l.split("\t")[1].split("@")[1].split(".")[0] for l in out.splitlines()
               if not l.startswith("#") and "@" in l}
    assert classes == {str(c) for c in range(1, 8)}


def test_export_unknown_target(capsys):
    assert run(["export", "99"])[0] == 1
    assert "99" in capsys.readouterr().err


def test_unreadable_file(tmp_path, capsys):
    assert run(["stem", str(tmp_path / "missing.txt")])[0] == 2
    assert "missing.txt" in capsys.readouterr().err


def test_malformed_utf8_flagged(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_bytes(b"kitob\xfflar\n")
    code, out = run(["analyze", "--format", "json", str(f)])
    rec = json.loads(out)
    assert code == 0
    assert "replaced-bytes" in rec["flags"]


def test_console_entry_point(tmp_path):
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "uzstem", "stem"],
        input="kitoblarim boryapsiz\n",
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert proc.stdout == "kitob\nbor\n"
