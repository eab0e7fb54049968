"""Lexicon-free affix stripping over the right-to-left main machine."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

from .inventory import PREFIX_CLASS, AFFIX_CLASSES, normalize_apostrophes
from .machines import STEM_LABEL, LabelInfo, MorphotacticGraph, default_graph

__all__ = [
    "Morpheme",
    "Analysis",
    "AnalyzerConfig",
    "Analyzer",
    "normalize",
    "analyze",
    "stem",
    "strip_prefix",
]


@dataclass(frozen=True)
class Morpheme:
    surface: str
    gloss: str
    class_id: int
    generic_form: str
    label: str

    @property
    def class_name(self) -> str:
        return AFFIX_CLASSES[self.class_id].name

    @classmethod
    def from_label(cls, info: LabelInfo) -> "Morpheme":
        a = info.allomorph
        return cls(a.surface, info.gloss, a.class_id, a.entry.generic_form, info.label)

    def to_dict(self) -> dict:
        return {"surface": self.surface, "class": self.class_name, "gloss": self.gloss}


@dataclass(frozen=True)
class Analysis:
    """A stem with its affixes; ``suffixes`` are in left-to-right word order."""

    stem: str
    prefix: Morpheme | None = None
    suffixes: tuple[Morpheme, ...] = ()

    @property
    def morphemes(self) -> tuple[Morpheme, ...]:
        return ((self.prefix,) if self.prefix else ()) + self.suffixes

    @property
    def unanalyzed(self) -> bool:
        return self.prefix is None and not self.suffixes

    @property
    def score(self) -> tuple:
        # Lower sorts first: most suffix material stripped, then a prefix split
        # if one applies, then fewest morphemes (an undivided suffix beats its
        # pieces), then label order.
        unsuffixed = len(self.stem) + (len(self.prefix.surface) if self.prefix else 0)
        return (unsuffixed, len(self.stem), len(self.morphemes), tuple(m.label for m in self.morphemes))

    def surface(self) -> str:
        return (self.prefix.surface if self.prefix else "") + self.stem + "".join(m.surface for m in self.suffixes)

    def segmented(self, sep: str = "-") -> str:
        parts = ([self.prefix.surface] if self.prefix else []) + [self.stem] + [m.surface for m in self.suffixes]
        return sep.join(parts)

    def to_dict(self) -> dict:
        return {
            "stem": self.stem,
            "prefix": self.prefix.to_dict() if self.prefix else None,
            "suffixes": [m.to_dict() for m in self.suffixes],
            "score": list(self.score[:3]),
        }


@dataclass(frozen=True)
class AnalyzerConfig:
    min_stem_len: int = 2
    max_analyses: int | None = 16
    emit_all: bool = False
    # A prefix is only split off when at least this much stem is left behind.
    min_prefixed_stem_len: int = 4

    def __post_init__(self):
        if self.min_stem_len < 1:
            raise ValueError("min_stem_len must be >= 1")
        if self.max_analyses is not None and self.max_analyses < 1:
            raise ValueError("max_analyses must be >= 1 or None")


_EDGE_JUNK = re.compile(r"^[\W_]+|[\W_]+$")


def normalize(raw: str) -> str:
    """Lowercase, fold apostrophes, and trim surrounding punctuation.

    A trailing apostrophe survives only after ``o`` or ``g`` (o', g').
    """
    s = normalize_apostrophes(unicodedata.normalize("NFC", raw)).strip().lower()
    trail = ""
    m = re.search(r"[og]'+[\W_]*$", s)
    if m:
        trail = "'"
        s = s[: m.start() + 1]
    s = _EDGE_JUNK.sub("", s)
    return s + trail if s else ""


class Analyzer:
    """Right-to-left affix stripper bound to one graph and configuration.

    Immutable after construction; ``analyze`` keeps all scratch state local,
    so one instance can be shared between threads.
    """

    def __init__(self, graph: MorphotacticGraph | None = None, config: AnalyzerConfig | None = None):
        self.graph = graph if graph is not None else default_graph()
        self.config = config if config is not None else AnalyzerConfig()
        self._morphemes = {lbl: Morpheme.from_label(info) for lbl, info in self.graph.labels.items()}
        # reversed-surface trie: char -> child; key None holds labels ending here
        self._trie: dict = {}
        prefixes = []
        for lbl, info in sorted(self.graph.labels.items()):
            surface = info.allomorph.surface
            if info.allomorph.class_id == PREFIX_CLASS:
                prefixes.append((surface, lbl))
                continue
            node = self._trie
            for ch in reversed(surface):
                node = node.setdefault(ch, {})
            node.setdefault(None, []).append(lbl)
        self._prefixes = tuple(prefixes)

    def _collect(self, word: str) -> list[Analysis]:
        cfg = self.config
        dfa = self.graph.rtl
        trans, finals = dfa.transitions, dfa.finals
        trie, morphs, prefixes = self._trie, self._morphemes, self._prefixes
        min_stem = cfg.min_stem_len
        min_prefixed = max(min_stem, cfg.min_prefixed_stem_len)
        found: list[Analysis] = []

        def emit(pos: int, state: int, acc: list[str]) -> None:
            suffixes = tuple(morphs[lbl] for lbl in reversed(acc))
            stem_str = word[:pos]
            if state in finals:
                found.append(Analysis(stem_str, None, suffixes))
            row = trans[state]
            for surface, lbl in prefixes:
                nxt = row.get(lbl)
                if nxt is not None and nxt in finals and stem_str.startswith(surface) \
                        and pos - len(surface) >= min_prefixed:
                    found.append(Analysis(stem_str[len(surface):], morphs[lbl], suffixes))

        def search(pos: int, state: int, acc: list[str]) -> None:
            row = trans[state]
            gate = row.get(STEM_LABEL)
            if gate is not None:
                emit(pos, gate, acc)
            node = trie
            i = pos - 1
            while i >= min_stem:
                node = node.get(word[i])
                if node is None:
                    break
                for lbl in node.get(None, ()):
                    nxt = row.get(lbl)
                    if nxt is not None:
                        acc.append(lbl)
                        search(i, nxt, acc)
                        acc.pop()
                i -= 1

        search(len(word), dfa.initial, [])
        return found

    def all_analyses(self, word: str) -> set[Analysis]:
        """Every legal analysis of an already-normalized word, unranked."""
        if len(word) < self.config.min_stem_len:
            return {Analysis(word)}
        return set(self._collect(word))

    def analyze(self, word: str) -> list[Analysis]:
        word = normalize(word)
        if len(word) < self.config.min_stem_len:
            return [Analysis(word)]
        ranked = sorted(set(self._collect(word)), key=lambda a: a.score)
        if not ranked:
            return [Analysis(word)]
        if not self.config.emit_all:
            return ranked[:1]
        if self.config.max_analyses is not None:
            return ranked[: self.config.max_analyses]
        return ranked

    def stem(self, word: str) -> str:
        return self.analyze(word)[0].stem

    def strip_prefix(self, word: str) -> tuple[Morpheme, str] | None:
        """Longest prefix whose removal leaves a long enough stem, if any."""
        word = normalize(word)
        limit = max(self.config.min_stem_len, self.config.min_prefixed_stem_len)
        for surface, lbl in sorted(self._prefixes, key=lambda p: (-len(p[0]), p[0])):
            if word.startswith(surface) and len(word) - len(surface) >= limit:
                return self._morphemes[lbl], word[len(surface):]
        return None


_ANALYZERS: dict[tuple[int, AnalyzerConfig], Analyzer] = {}


def _get(graph: MorphotacticGraph | None, config: AnalyzerConfig | None) -> Analyzer:
    graph = graph if graph is not None else default_graph()
    config = config or AnalyzerConfig()
    key = (id(graph), config)
    cached = _ANALYZERS.get(key)
    if cached is None or cached.graph is not graph:
        cached = _ANALYZERS[key] = Analyzer(graph, config)
    return cached


def analyze(word: str, graph: MorphotacticGraph | None = None, config: AnalyzerConfig | None = None) -> list[Analysis]:
    return _get(graph, config).analyze(word)


def stem(word: str, graph: MorphotacticGraph | None = None, config: AnalyzerConfig | None = None) -> str:
    return _get(graph, config).stem(word)


def strip_prefix(word: str, graph: MorphotacticGraph | None = None, config: AnalyzerConfig | None = None):
    return _get(graph, config).strip_prefix(word)
