"""Command-line front end: ``uzstem {analyze,stem,validate,export}``."""

from __future__ import annotations

import argparse
import io
import json
import os
import re
import sys
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from .analyzer import Analysis, Analyzer, AnalyzerConfig, normalize
from .fsm import to_edge_list
from .inventory import AFFIX_CLASSES, EXPECTED_COUNTS, InventoryError, default_grammar_dir, load_inventory
from .machines import build_graph, load_morphotactics

GRAMMAR_ENV = "UZSTEM_GRAMMAR"

EXIT_OK, EXIT_SETUP, EXIT_IO = 0, 1, 2

_SPLIT = re.compile(r"[\s\-‐‑–—]+")


def resolve_grammar(path: str | None) -> tuple[Path, Path]:
    """Return (affix file, ordering table) for ``--grammar``, the env var, or the shipped data.

    A directory must hold ``affixes.tsv``; its ``morphotactics.tsv`` is used
    when present, otherwise the shipped one.
    """
    path = path or os.environ.get(GRAMMAR_ENV)
    shipped = default_grammar_dir()
    if not path:
        return shipped / "affixes.tsv", shipped / "morphotactics.tsv"
    p = Path(path)
    affixes = p / "affixes.tsv" if p.is_dir() else p
    tactics = affixes.parent / "morphotactics.tsv"
    return affixes, tactics if tactics.exists() else shipped / "morphotactics.tsv"


def tokenize(line: str) -> Iterator[str]:
    """Whitespace/hyphen split; surrounding punctuation is left for ``normalize``."""
    for tok in _SPLIT.split(line):
        if tok and normalize(tok):
            yield tok


def read_lines(paths: list[str]) -> Iterator[str]:
    """Lines from the given files (or stdin), decoded with byte replacement."""
    if not paths:
        stream = io.TextIOWrapper(sys.stdin.buffer, encoding="utf-8", errors="replace")
        yield from stream
        return
    for p in paths:
        with open(p, "rb") as fh:
            for raw in fh:
                yield raw.decode("utf-8", errors="replace")


def record(token: str, analysis: Analysis, rank: int | None = None) -> dict:
    flags = []
    if analysis.unanalyzed:
        flags.append("unanalyzed")
    if "�" in token:
        flags.append("replaced-bytes")
    rec = {
        "token": token,
        "normalized": normalize(token),
        "stem": analysis.stem,
        "morphemes": [m.to_dict() for m in analysis.morphemes],
        "flags": flags,
    }
    if rank is not None:
        rec["rank"] = rank
    return rec


def format_tsv(rec: dict) -> str:
    cols = [rec["token"], rec["normalized"]]
    if "rank" in rec:
        cols.append(str(rec["rank"]))
    cols += [rec["stem"], ",".join(rec["flags"]) or "-"]
    cols += [f"{m['surface']}:{m['class']}:{m['gloss']}" for m in rec["morphemes"]]
    return "\t".join(cols)


def format_json(rec: dict) -> str:
    return json.dumps(rec, ensure_ascii=False)


def _build_analyzer(args) -> Analyzer:
    affixes, tactics = resolve_grammar(args.grammar)
    inv = load_inventory(affixes, expected=None)
    graph = build_graph(inv, load_morphotactics(tactics, inv))
    cfg = AnalyzerConfig(min_stem_len=args.min_stem_len, emit_all=args.all, max_analyses=args.max_analyses)
    return Analyzer(graph, cfg)


def _records(analyzer: Analyzer, lines: Iterable[str], emit_all: bool) -> Iterator[dict]:
    # Bounded cache: corpus vocabularies are Zipfian, memory must not grow with input.
    cached = lru_cache(maxsize=1 << 16)(analyzer.analyze)
    for line in lines:
        for tok in tokenize(line):
            analyses = cached(tok)
            if emit_all:
                for rank, a in enumerate(analyses, start=1):
                    yield record(tok, a, rank)
            else:
                yield record(tok, analyses[0])


def cmd_analyze(args, out: TextIO) -> int:
    analyzer = _build_analyzer(args)
    fmt = format_json if args.format == "json" else format_tsv
    for rec in _records(analyzer, read_lines(args.files), args.all):
        out.write(fmt(rec))
        out.write("\n")
    return EXIT_OK


def cmd_stem(args, out: TextIO) -> int:
    args.all = False
    analyzer = _build_analyzer(args)
    cached = lru_cache(maxsize=1 << 16)(analyzer.stem)
    for line in read_lines(args.files):
        for tok in tokenize(line):
            out.write(cached(tok))
            out.write("\n")
    return EXIT_OK


def cmd_validate(args, out: TextIO) -> int:
    affixes, tactics = resolve_grammar(args.grammar_path or args.grammar)
    try:
        inv = load_inventory(affixes, expected=None)
    except InventoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SETUP
    counts = inv.counts()
    ok = 0
    for cid, (want_e, want_a) in sorted(EXPECTED_COUNTS.items()):
        got_e, got_a = counts[cid]
        good = (got_e, got_a) == (want_e, want_a)
        ok += good
        out.write(
            f"class {cid} {AFFIX_CLASSES[cid].name:<13} affixes {got_e}/{want_e}"
            f"  allomorphs {got_a}/{want_a}  {'OK' if good else 'MISMATCH'}\n"
        )
    problems = []
    try:
        table = load_morphotactics(tactics, inv)
        used = {(a.class_id, f) for a in table.arcs for f in a.forms}
        dead = [e for e in inv.entries if (e.class_id, e.generic_form) not in used]
        problems += [f"affix {e.generic_form!r} (class {e.class_id}) is not used by any arc" for e in dead]
    except InventoryError as exc:
        problems.append(f"ordering table: {exc}")
    for p in problems:
        out.write(f"error: {p}\n")
    n_e, n_a = len(inv.entries), len(inv.allomorphs)
    out.write(f"{ok}/{len(EXPECTED_COUNTS)} classes OK, {n_e} affixes, {n_a} allomorphs\n")
    return EXIT_OK if ok == len(EXPECTED_COUNTS) and not problems else EXIT_SETUP


def cmd_export(args, out: TextIO) -> int:
    affixes, tactics = resolve_grammar(args.grammar)
    inv = load_inventory(affixes, expected=None)
    graph = build_graph(inv, load_morphotactics(tactics, inv))
    if args.target == "main":
        machine = graph.ltr if args.ltr else graph.rtl
    elif args.target.isdigit() and int(args.target) in graph.machines:
        cm = graph.machines[int(args.target)]
        machine = cm.ltr if args.ltr else cm.rtl
    else:
        print(f"error: unknown export target {args.target!r} (use 1-7 or main)", file=sys.stderr)
        return EXIT_SETUP
    out.write(to_edge_list(machine))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uzstem", description="Lexicon-free Uzbek affix stripper.")
    parser.add_argument("--grammar", metavar="PATH", help=f"grammar directory or affix file (env: {GRAMMAR_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    def text_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("files", nargs="*", help="input files (default: stdin)")
        p.add_argument("--min-stem-len", type=int, default=2, metavar="N")
        p.add_argument("--grammar", metavar="PATH", default=argparse.SUPPRESS)
        return p

    p = text_cmd("analyze", "segment every token")
    p.add_argument("--all", action="store_true", help="emit every analysis, ranked")
    p.add_argument("--max-analyses", type=int, default=16, metavar="N")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_analyze)

    p = text_cmd("stem", "print one stem per token")
    p.set_defaults(func=cmd_stem, max_analyses=16)

    p = sub.add_parser("validate", help="check affix counts and the ordering table")
    p.add_argument("grammar_path", nargs="?", metavar="GRAMMAR")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("export", help="dump a machine as an edge list")
    p.add_argument("target", help="class id 1-7 or 'main'")
    p.add_argument("--ltr", action="store_true", help="left-to-right machine instead of the runtime one")
    p.add_argument("--grammar", metavar="PATH", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = out if out is not None else sys.stdout
    try:
        return args.func(args, out)
    except InventoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SETUP
    except BrokenPipeError:
        return EXIT_OK
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
