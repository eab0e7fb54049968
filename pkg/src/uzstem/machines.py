"""Per-class morphotactic machines and their composition into the main machine.

Every class machine is written left to right in ``data/morphotactics.tsv``,
then reversed and determinized into the right-to-left machine the analyzer
runs. The main machine is assembled the same way from the class graphs plus
the inter-class links.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .fsm import EPSILON, Dfa, Nfa, determinize, reverse
from .inventory import AFFIX_CLASSES, Allomorph, Inventory, InventoryError, default_grammar_dir, load_inventory

__all__ = [
    "STEM_LABEL",
    "STEM_GATE",
    "START",
    "Arc",
    "Morphotactics",
    "LabelInfo",
    "ClassMachine",
    "MorphotacticGraph",
    "load_morphotactics",
    "build_class_machine",
    "compose_main",
    "legal_next_classes",
    "build_graph",
    "default_graph",
]

STEM_LABEL = "<stem>"
STEM_GATE = 0
START = "start"

_PSEUDO_NODES = ("START", "PRE", "STEM", "END")


@dataclass(frozen=True)
class Arc:
    class_id: int
    src: str
    dst: str
    forms: tuple[str, ...]  # empty tuple: epsilon
    role: str | None = None


@dataclass(frozen=True)
class LabelInfo:
    label: str
    allomorph: Allomorph
    role: str | None

    @property
    def gloss(self) -> str:
        return self.role or self.allomorph.entry.gloss


@dataclass(frozen=True)
class Morphotactics:
    arcs: tuple[Arc, ...]
    entries: dict[int, tuple[str, ...]]
    exits: dict[int, tuple[str, ...]]
    links: tuple[tuple[str, str], ...]


def _parse_endpoint(token: str, lineno: int) -> str:
    if token in _PSEUDO_NODES:
        return token
    cls, sep, node = token.partition(":")
    if not sep or not cls.isdigit() or int(cls) not in AFFIX_CLASSES or not node:
        raise InventoryError(f"line {lineno}: bad link endpoint {token!r}")
    return token


def load_morphotactics(path: str | Path | None = None, inv: Inventory | None = None) -> Morphotactics:
    """Parse the ordering table. With ``inv`` given, every form is checked against it."""
    if path is None:
        path = default_grammar_dir() / "morphotactics.tsv"
    arcs: list[Arc] = []
    entries: dict[int, list[str]] = {c: [] for c in AFFIX_CLASSES}
    exits: dict[int, list[str]] = {c: [] for c in AFFIX_CLASSES}
    links: list[tuple[str, str]] = []

    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        cols = [c.strip() for c in raw.split("\t")]
        kind = cols[0]
        try:
            if kind == "arc":
                if len(cols) not in (5, 6):
                    raise InventoryError(f"line {lineno}: arc needs 4 or 5 fields")
                cid = int(cols[1])
                forms = () if cols[4] == "-" else tuple(f for f in cols[4].split(",") if f)
                role = cols[5] if len(cols) == 6 and cols[5] else None
                if role and not forms:
                    raise InventoryError(f"line {lineno}: an empty transition cannot carry a role")
                arcs.append(Arc(cid, cols[2], cols[3], forms, role))
            elif kind in ("entry", "exit"):
                if len(cols) != 3:
                    raise InventoryError(f"line {lineno}: {kind} needs 2 fields")
                (entries if kind == "entry" else exits)[int(cols[1])].append(cols[2])
            elif kind == "link":
                if len(cols) != 3:
                    raise InventoryError(f"line {lineno}: link needs 2 fields")
                links.append((_parse_endpoint(cols[1], lineno), _parse_endpoint(cols[2], lineno)))
            else:
                raise InventoryError(f"line {lineno}: unknown record type {kind!r}")
        except (ValueError, KeyError) as exc:
            if isinstance(exc, InventoryError):
                raise
            raise InventoryError(f"line {lineno}: {exc}") from None

    if inv is not None:
        for arc in arcs:
            if arc.class_id not in AFFIX_CLASSES:
                raise InventoryError(f"unknown class id {arc.class_id}")
            for form in arc.forms:
                try:
                    inv.entry(arc.class_id, form)
                except KeyError:
                    raise InventoryError(f"class {arc.class_id} has no affix {form!r}") from None
    return Morphotactics(
        tuple(arcs),
        {c: tuple(v) for c, v in entries.items()},
        {c: tuple(v) for c, v in exits.items()},
        tuple(links),
    )


@dataclass(frozen=True)
class ClassMachine:
    class_id: int
    ltr: Nfa
    rtl: Dfa
    nodes: dict[str, int] = field(compare=False, hash=False)

    @property
    def name(self) -> str:
        return AFFIX_CLASSES[self.class_id].name


def _label(allomorph: Allomorph, role: str | None) -> str:
    return allomorph.id if role is None else f"{allomorph.id}:{role}"


def _class_edges(inv: Inventory, tactics: Morphotactics, class_id: int, nodes: dict[str, int]):
    edges = []
    labels: dict[str, LabelInfo] = {}
    for arc in tactics.arcs:
        if arc.class_id != class_id:
            continue
        a = nodes.setdefault(arc.src, len(nodes))
        b = nodes.setdefault(arc.dst, len(nodes))
        if not arc.forms:
            edges.append((a, EPSILON, b))
        for form in arc.forms:
            for allo in inv.allomorphs_of(inv.entry(class_id, form)):
                lbl = _label(allo, arc.role)
                labels[lbl] = LabelInfo(lbl, allo, arc.role)
                edges.append((a, lbl, b))
    return edges, labels


def build_class_machine(inv: Inventory, class_id: int, tactics: Morphotactics | None = None) -> ClassMachine:
    """Left-to-right machine for one class, plus its reversed deterministic twin."""
    if class_id not in AFFIX_CLASSES:
        raise ValueError(f"unknown class id {class_id}")
    tactics = load_morphotactics(inv=inv) if tactics is None else tactics
    entries, exits = tactics.entries.get(class_id, ()), tactics.exits.get(class_id, ())
    if not entries or not exits:
        raise InventoryError(f"class {class_id} needs at least one entry and one exit node")
    nodes: dict[str, int] = {}
    edges, _ = _class_edges(inv, tactics, class_id, nodes)
    for n in (*entries, *exits):
        nodes.setdefault(n, len(nodes))
    if len(entries) == 1:
        initial = nodes[entries[0]]
    else:
        initial = len(nodes)
        edges += [(initial, EPSILON, nodes[n]) for n in entries]
    ltr = Nfa.build(initial, {nodes[n] for n in exits}, edges)
    return ClassMachine(class_id, ltr, determinize(reverse(ltr)), nodes)


@dataclass(frozen=True)
class MorphotacticGraph:
    machines: dict[int, ClassMachine] = field(compare=False)
    entrances: frozenset[int]
    exits: frozenset[int]
    links: tuple[tuple[str, str], ...]
    ltr: Nfa
    rtl: Dfa
    labels: dict[str, LabelInfo] = field(compare=False, repr=False)
    node_ids: dict[str, int] = field(compare=False, repr=False)

    def info(self, label: str) -> LabelInfo:
        return self.labels[label]


def _endpoint_class(token: str) -> int | None:
    return int(token.split(":")[0]) if ":" in token else None


def compose_main(
    machines: dict[int, ClassMachine],
    inv: Inventory,
    tactics: Morphotactics,
) -> MorphotacticGraph:
    """Wire the seven class machines together through the inter-class links.

    The stem occupies a single ``<stem>`` edge between PRE and STEM, so the
    right-to-left machine reads suffixes, then the stem gate, then at most
    one prefix.
    """
    missing = set(AFFIX_CLASSES) - set(machines)
    if missing:
        raise ValueError(f"missing class machine(s): {sorted(missing)}")

    node_ids: dict[str, int] = {n: i for i, n in enumerate(_PSEUDO_NODES)}
    edges: list = [(node_ids["PRE"], STEM_LABEL, node_ids["STEM"])]
    labels: dict[str, LabelInfo] = {}
    for cid in sorted(machines):
        local: dict[str, int] = {}
        class_edges, class_labels = _class_edges(inv, tactics, cid, local)
        remap = {}
        for name, i in local.items():
            remap[i] = node_ids.setdefault(f"{cid}:{name}", len(node_ids))
        edges += [(remap[a], lbl, remap[b]) for a, lbl, b in class_edges]
        labels.update(class_labels)
        if set(machines[cid].ltr.labels) != set(class_labels):
            raise ValueError(f"class {cid} machine does not match the ordering table")

    for src, dst in tactics.links:
        for end in (src, dst):
            if end not in node_ids:
                raise InventoryError(f"link endpoint {end!r} is not a node of any class machine")
        edges.append((node_ids[src], EPSILON, node_ids[dst]))

    ltr = Nfa.build(node_ids["START"], {node_ids["END"]}, edges)
    entrances = frozenset(_endpoint_class(s) for s, d in tactics.links if d == "END") - {None}
    inbound: dict[int, set[str]] = {}
    for s, d in tactics.links:
        c = _endpoint_class(d)
        if c is not None and _endpoint_class(s) != c:
            inbound.setdefault(c, set()).add(s)
    exits = frozenset(c for c, srcs in inbound.items() if srcs <= {"START", "PRE", "STEM"})
    return MorphotacticGraph(
        machines=dict(machines),
        entrances=entrances,
        exits=exits,
        links=tactics.links,
        ltr=ltr,
        rtl=determinize(reverse(ltr)),
        labels=labels,
        node_ids=node_ids,
    )


def legal_next_classes(graph: MorphotacticGraph, current: int | str) -> frozenset[int]:
    """Classes that may supply the next affix when reading right to left.

    ``current`` is ``START`` (the word end), a class id (that class has just
    been completed) or ``STEM_GATE``. ``STEM_GATE`` in the result means the
    remainder may be declared the stem at this point.
    """
    if current == START:
        targets = {"END"}
    elif current == STEM_GATE:
        targets = {"PRE"}
    else:
        targets = {d for _, d in graph.links if _endpoint_class(d) == current}
    out = set()
    for s, d in graph.links:
        if d not in targets:
            continue
        c = _endpoint_class(s)
        if c is not None and c != current:
            out.add(c)
        elif s == "STEM":
            out.add(STEM_GATE)
    return frozenset(out)


def build_graph(inv: Inventory, tactics: Morphotactics) -> MorphotacticGraph:
    machines = {c: build_class_machine(inv, c, tactics) for c in AFFIX_CLASSES}
    return compose_main(machines, inv, tactics)


@lru_cache(maxsize=8)
def _cached_graph(affix_path: str, tactics_path: str) -> MorphotacticGraph:
    inv = load_inventory(affix_path)
    return build_graph(inv, load_morphotactics(tactics_path, inv))


def default_graph(grammar_dir: str | Path | None = None) -> MorphotacticGraph:
    """Graph built from the shipped grammar (or from another grammar directory)."""
    d = Path(grammar_dir) if grammar_dir is not None else default_grammar_dir()
    return _cached_graph(str(d / "affixes.tsv"), str(d / "morphotactics.tsv"))
