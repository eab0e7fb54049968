"""Brute-force segmentation oracle and word synthesis for testing.

The oracle never touches the reversed/determinized machine or the suffix
trie: it tries every prefix, every stem boundary and every way of covering
the rest of the word with raw allomorph strings, and keeps the segmentations
that the left-to-right composed NFA accepts.
"""

from __future__ import annotations

import random
from collections import defaultdict

from .analyzer import Analysis, AnalyzerConfig, Morpheme
from .fsm import EPSILON
from .inventory import PREFIX_CLASS, Inventory
from .machines import STEM_LABEL, MorphotacticGraph

__all__ = ["enumerate_segmentations_oracle", "WordSynthesizer", "UZBEK_LETTERS"]

UZBEK_LETTERS = tuple("abdefghijklmnopqrstuvxyz") + ("o'", "g'", "sh", "ch", "ng")


class _ForwardNfa:
    def __init__(self, graph: MorphotacticGraph):
        nfa = graph.ltr
        self.finals = nfa.finals
        self.eps: dict[int, list[int]] = defaultdict(list)
        self.moves: dict[tuple[int, str], list[int]] = defaultdict(list)
        for a, lbl, b in nfa.edges:
            if lbl is EPSILON:
                self.eps[a].append(b)
            else:
                self.moves[(a, lbl)].append(b)
        self.start = self.closure({nfa.initial})

    def closure(self, states) -> frozenset[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            for t in self.eps.get(stack.pop(), ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def step(self, states: frozenset[int], label: str) -> frozenset[int]:
        nxt = {t for s in states for t in self.moves.get((s, label), ())}
        return self.closure(nxt) if nxt else frozenset()


_NFA_CACHE: dict[int, tuple[MorphotacticGraph, _ForwardNfa]] = {}


def _forward(graph: MorphotacticGraph) -> _ForwardNfa:
    hit = _NFA_CACHE.get(id(graph))
    if hit is None or hit[0] is not graph:
        hit = _NFA_CACHE[id(graph)] = (graph, _ForwardNfa(graph))
    return hit[1]


def enumerate_segmentations_oracle(
    word: str,
    inv: Inventory,
    graph: MorphotacticGraph,
    config: AnalyzerConfig | None = None,
) -> set[Analysis]:
    """Every (prefix?, stem, suffixes) split of ``word`` the composed graph accepts."""
    cfg = config or AnalyzerConfig()
    if len(word) < cfg.min_stem_len:
        return {Analysis(word)}
    nfa = _forward(graph)

    labels_of = defaultdict(list)
    for lbl, info in graph.labels.items():
        labels_of[info.allomorph].append(lbl)
    prefixes, suffixes = [], []
    for allo in inv.allomorphs:
        for lbl in sorted(labels_of.get(allo, ())):
            (prefixes if allo.class_id == PREFIX_CLASS else suffixes).append((allo.surface, lbl))
    morph = {lbl: Morpheme.from_label(graph.labels[lbl]) for _, lbl in prefixes + suffixes}

    out: set[Analysis] = set()

    def cover(i: int, states: frozenset[int], acc: tuple[str, ...], prefix, stem_str: str) -> None:
        if i == len(word):
            if states & nfa.finals:
                out.add(Analysis(stem_str, prefix, tuple(morph[l] for l in acc)))
            return
        for surface, lbl in suffixes:
            if word.startswith(surface, i):
                nxt = nfa.step(states, lbl)
                if nxt:
                    cover(i + len(surface), nxt, acc + (lbl,), prefix, stem_str)

    options = [(0, None, nfa.start, cfg.min_stem_len)]
    for surface, lbl in prefixes:
        if word.startswith(surface):
            after = nfa.step(nfa.start, lbl)
            if after:
                options.append((len(surface), morph[lbl], after, max(cfg.min_stem_len, cfg.min_prefixed_stem_len)))

    for start, prefix, states, min_len in options:
        for end in range(start + min_len, len(word) + 1):
            after_stem = nfa.step(states, STEM_LABEL)
            if after_stem:
                cover(end, after_stem, (), prefix, word[start:end])
    return out


class WordSynthesizer:
    """Random stems glued to affix sequences sampled from the composed graph.

    Stems are drawn so that they end in no allomorph surface and begin with no
    prefix surface, which makes the generating stem the expected best analysis.
    """

    def __init__(self, graph: MorphotacticGraph, seed: int = 0, prefix_rate: float = 0.1):
        self.graph = graph
        self.rng = random.Random(seed)
        self.prefix_rate = prefix_rate
        self.out: dict[int, list[tuple[str | None, int]]] = defaultdict(list)
        for a, lbl, b in sorted(graph.ltr.edges, key=lambda e: (e[0], e[1] or "", e[2])):
            self.out[a].append((lbl, b))
        self.surfaces = {info.allomorph.surface for info in graph.labels.values()}
        self.prefix_surfaces = {
            info.allomorph.surface for info in graph.labels.values() if info.allomorph.class_id == PREFIX_CLASS
        }
        self.suffix_surfaces = self.surfaces - self.prefix_surfaces
        self._alive = self._coreachable()

    def _coreachable(self) -> set[int]:
        back = defaultdict(set)
        for a, _, b in self.graph.ltr.edges:
            back[b].add(a)
        alive = set(self.graph.ltr.finals)
        stack = list(alive)
        while stack:
            for a in back[stack.pop()]:
                if a not in alive:
                    alive.add(a)
                    stack.append(a)
        return alive

    def random_stem(self, min_len: int = 3, max_len: int = 6) -> str:
        while True:
            n = self.rng.randint(min_len, max_len)
            stem = ""
            while len(stem) < n:
                stem += self.rng.choice(UZBEK_LETTERS)
            stem = stem[:n] if not stem[:n].endswith("'") else stem[: n - 1]
            if len(stem) < min_len:
                continue
            if any(stem.endswith(s) for s in self.suffix_surfaces):
                continue
            if any(stem.startswith(p) for p in self.prefix_surfaces):
                continue
            return stem

    def random_path(self) -> list[str]:
        """Labels along one random START->END walk, stem edge included."""
        node = self.graph.ltr.initial
        labels: list[str] = []
        finals = self.graph.ltr.finals
        while node not in finals or (self.out.get(node) and self.rng.random() < 0.5):
            choices = [(l, b) for l, b in self.out.get(node, ()) if b in self._alive]
            if not choices:
                break
            lbl, node = self.rng.choice(choices)
            if lbl is not EPSILON:
                labels.append(lbl)
        return labels

    def sample(self, max_word_len: int = 12) -> tuple[str, str, tuple[str, ...]]:
        """One synthesized ``(word, stem, labels)``; labels exclude the stem gate."""
        while True:
            path = self.random_path()
            has_prefix = path[0] != STEM_LABEL
            if has_prefix and self.rng.random() > self.prefix_rate:
                continue
            stem = self.random_stem(4 if has_prefix else 3)
            pieces = []
            for lbl in path:
                pieces.append(stem if lbl == STEM_LABEL else self.graph.labels[lbl].allomorph.surface)
            word = "".join(pieces)
            if len(word) <= max_word_len:
                return word, stem, tuple(l for l in path if l != STEM_LABEL)

    def random_string(self, max_len: int = 12) -> str:
        n = self.rng.randint(1, max_len)
        s = ""
        while len(s) < n:
            s += self.rng.choice(UZBEK_LETTERS)
        return s[:n].rstrip("'") or "a"
