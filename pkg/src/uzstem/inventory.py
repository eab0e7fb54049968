"""Affix inventory: the seven affix classes and their allomorphs.

The grammar ships as a tab-separated data file (``data/affixes.tsv``). Each row
holds one generic affix form; :func:`expand_generic` turns it into the concrete
surface strings that actually occur in text.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

__all__ = [
    "AffixKind",
    "AffixClass",
    "AFFIX_CLASSES",
    "AbbreviationRule",
    "ABBREVIATIONS",
    "AffixEntry",
    "Allomorph",
    "Inventory",
    "InventoryError",
    "ValidationError",
    "EXPECTED_COUNTS",
    "normalize_apostrophes",
    "expand_generic",
    "load_inventory",
    "allomorphs_of_class",
    "default_grammar_dir",
]


class AffixKind(Enum):
    INFLECTIONAL = "inflectional"
    DERIVATIONAL = "derivational"


@dataclass(frozen=True)
class AffixClass:
    id: int
    name: str
    kind: AffixKind


AFFIX_CLASSES: dict[int, AffixClass] = {
    c.id: c
    for c in (
        AffixClass(1, "TensePerson", AffixKind.INFLECTIONAL),
        AffixClass(2, "Verb", AffixKind.INFLECTIONAL),
        AffixClass(3, "RelativeVerb", AffixKind.INFLECTIONAL),
        AffixClass(4, "Derivational", AffixKind.DERIVATIONAL),
        AffixClass(5, "Noun", AffixKind.INFLECTIONAL),
        AffixClass(6, "Number", AffixKind.INFLECTIONAL),
        AffixClass(7, "Prefix", AffixKind.DERIVATIONAL),
    )
}

PREFIX_CLASS = 7

# class_id -> (affixes, allomorphs)
EXPECTED_COUNTS: dict[int, tuple[int, int]] = {
    1: (24, 27),
    2: (23, 41),
    3: (13, 23),
    4: (71, 81),
    5: (23, 31),
    6: (11, 12),
    7: (7, 7),
}


@dataclass(frozen=True)
class AbbreviationRule:
    letter: str
    expansions: tuple[str, ...]


ABBREVIATIONS: dict[str, AbbreviationRule] = {
    r.letter: r
    for r in (
        AbbreviationRule("G", ("g", "k", "q")),
        AbbreviationRule("Y", ("a", "y")),
        AbbreviationRule("K", ("k", "g")),
        AbbreviationRule("Q", ("k", "g", "g'", "q")),
        AbbreviationRule("T", ("t", "d")),
    )
}

_APOSTROPHES = str.maketrans({"’": "'", "‘": "'", "ʻ": "'", "ʼ": "'", "`": "'"})
_GENERIC_RE = re.compile(r"^(?:[a-z'A-Z]|\([a-z']+\))+$")


def normalize_apostrophes(text: str) -> str:
    """Fold the apostrophe variants seen in Uzbek Latin text to ASCII ``'``."""
    return text.translate(_APOSTROPHES)


class InventoryError(ValueError):
    """Malformed grammar data (bad row, illegal character, duplicate key)."""


class ValidationError(InventoryError):
    """The loaded inventory does not match the expected per-class counts."""

    def __init__(self, message: str, counts: dict[int, tuple[int, int]], expected: dict[int, tuple[int, int]]):
        super().__init__(message)
        self.counts = counts
        self.expected = expected


@dataclass(frozen=True)
class AffixEntry:
    class_id: int
    index_in_table: int
    generic_form: str
    attachment: str  # "suffix" | "prefix"
    gloss: str

    @property
    def affix_class(self) -> AffixClass:
        return AFFIX_CLASSES[self.class_id]

    @property
    def key(self) -> tuple[int, int]:
        return (self.class_id, self.index_in_table)


@dataclass(frozen=True)
class Allomorph:
    surface: str
    entry: AffixEntry

    @property
    def id(self) -> str:
        """Stable identifier used as an automaton label, e.g. ``yap@1.18``."""
        return f"{self.surface}@{self.entry.class_id}.{self.entry.index_in_table}"

    @property
    def class_id(self) -> int:
        return self.entry.class_id


def _tokenize(generic_form: str) -> list[tuple[str, ...]]:
    # Each token is the list of alternatives at that position; "" marks omission.
    tokens: list[tuple[str, ...]] = []
    i = 0
    while i < len(generic_form):
        ch = generic_form[i]
        if ch == "(":
            close = generic_form.find(")", i)
            if close == -1:
                raise InventoryError(f"unbalanced parenthesis in {generic_form!r}")
            group = generic_form[i + 1 : close]
            inner = [""]
            for sub in _tokenize(group):
                inner = [a + b for a in inner for b in sub]
            tokens.append((*inner, ""))
            i = close + 1
        elif ch.isupper():
            rule = ABBREVIATIONS.get(ch)
            if rule is None:
                raise InventoryError(f"unknown abbreviation letter {ch!r} in {generic_form!r}")
            tokens.append(rule.expansions)
            i += 1
        else:
            tokens.append((ch,))
            i += 1
    return tokens


def expand_generic(generic_form: str) -> list[str]:
    """Expand a generic affix form into its concrete surface strings.

    >>> expand_generic("Gancha")
    ['gancha', 'kancha', 'qancha']
    >>> expand_generic("(i)ngiz")
    ['ingiz', 'ngiz']
    """
    out: dict[str, None] = {}
    for combo in itertools.product(*_tokenize(generic_form)):
        surface = "".join(combo)
        if surface:
            out.setdefault(surface)
    return list(out)


@dataclass(frozen=True)
class Inventory:
    entries: tuple[AffixEntry, ...]
    allomorphs: tuple[Allomorph, ...]
    by_class: dict[int, tuple[AffixEntry, ...]] = field(repr=False)

    def entry(self, class_id: int, generic_form: str) -> AffixEntry:
        for e in self.by_class.get(class_id, ()):
            if e.generic_form == generic_form:
                return e
        raise KeyError((class_id, generic_form))

    def allomorphs_of(self, entry: AffixEntry) -> tuple[Allomorph, ...]:
        return tuple(a for a in self.allomorphs if a.entry == entry)

    def counts(self) -> dict[int, tuple[int, int]]:
        n_entries = Counter(e.class_id for e in self.entries)
        n_allo = Counter(a.class_id for a in self.allomorphs)
        return {c: (n_entries[c], n_allo[c]) for c in AFFIX_CLASSES}

    def serialize(self) -> str:
        return "\n".join(f"{a.class_id}\t{a.entry.index_in_table}\t{a.surface}" for a in self.allomorphs)


def _parse_row(line: str, lineno: int) -> AffixEntry:
    cols = line.split("\t")
    if len(cols) != 5:
        raise InventoryError(f"line {lineno}: expected 5 tab-separated columns, got {len(cols)}")
    cid, idx, form, att, gloss = (c.strip() for c in cols)
    try:
        class_id, index = int(cid), int(idx)
    except ValueError:
        raise InventoryError(f"line {lineno}: class id and index must be integers") from None
    if class_id not in AFFIX_CLASSES:
        raise InventoryError(f"line {lineno}: unknown class id {class_id}")
    form = normalize_apostrophes(form)
    if not form or not _GENERIC_RE.match(form):
        raise InventoryError(f"line {lineno}: illegal generic form {form!r}")
    bad = {ch for ch in form if ch.isupper()} - set(ABBREVIATIONS)
    if bad:
        raise InventoryError(f"line {lineno}: unknown abbreviation letter(s) {''.join(sorted(bad))}")
    if att not in ("S", "P"):
        raise InventoryError(f"line {lineno}: attachment must be S or P, got {att!r}")
    attachment = "prefix" if att == "P" else "suffix"
    if (attachment == "prefix") != (class_id == PREFIX_CLASS):
        raise InventoryError(f"line {lineno}: only class {PREFIX_CLASS} rows may be prefixes")
    return AffixEntry(class_id, index, form, attachment, gloss)


def _check_counts(inv: Inventory, expected: dict[int, tuple[int, int]]) -> None:
    counts = inv.counts()
    if counts == expected:
        return
    total = sum(e for e, _ in expected.values())
    lines = [f"{len(inv.entries)} of {total} entries"]
    for c, (want_e, want_a) in sorted(expected.items()):
        got_e, got_a = counts.get(c, (0, 0))
        if (got_e, got_a) != (want_e, want_a):
            lines.append(
                f"class {c} {AFFIX_CLASSES[c].name}: affixes {got_e}/{want_e}, allomorphs {got_a}/{want_a}"
            )
    raise ValidationError("; ".join(lines), counts, expected)


def load_inventory(
    path: str | Path | None = None,
    expected: dict[int, tuple[int, int]] | None = EXPECTED_COUNTS,
) -> Inventory:
    """Load and expand a grammar data file.

    ``path`` defaults to the shipped grammar. Pass ``expected=None`` to skip
    the per-class count check (useful when extending the grammar).
    """
    if path is None:
        path = default_grammar_dir() / "affixes.tsv"
    text = Path(path).read_text(encoding="utf-8")

    entries: list[AffixEntry] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        entry = _parse_row(line, lineno)
        if entry.key in seen:
            raise InventoryError(
                f"line {lineno}: duplicate row for class {entry.class_id} index {entry.index_in_table}"
                f" (first defined on line {seen[entry.key]})"
            )
        seen[entry.key] = lineno
        entries.append(entry)

    allomorphs = tuple(Allomorph(s, e) for e in entries for s in expand_generic(e.generic_form))
    by_class = {c: tuple(e for e in entries if e.class_id == c) for c in AFFIX_CLASSES}
    inv = Inventory(tuple(entries), allomorphs, by_class)
    if expected is not None:
        _check_counts(inv, expected)
    return inv


def allomorphs_of_class(inv: Inventory, class_id: int) -> list[Allomorph]:
    """Allomorphs of one class, longest surface first (ties: alphabetical, then table order)."""
    return sorted(
        (a for a in inv.allomorphs if a.class_id == class_id),
        key=lambda a: (-len(a.surface), a.surface, a.entry.index_in_table),
    )


def default_grammar_dir() -> Path:
    return Path(str(resources.files("uzstem") / "data"))
