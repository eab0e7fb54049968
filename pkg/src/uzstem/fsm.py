"""Labeled-edge automata: reversal, subset construction, and language enumeration.

Labels are opaque strings (allomorph ids in this package). ``EPSILON`` (``None``)
marks an empty transition.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

__all__ = [
    "EPSILON",
    "Nfa",
    "Dfa",
    "reverse",
    "determinize",
    "accepts",
    "enumerate_language",
    "epsilon_closure",
    "to_edge_list",
]

EPSILON = None

Edge = tuple[int, Union[str, None], int]


@dataclass(frozen=True)
class Nfa:
    states: frozenset[int]
    initial: int
    finals: frozenset[int]
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValueError(f"initial state {self.initial} not in states")
        if not self.finals <= self.states:
            raise ValueError("finals must be a subset of states")
        for a, _, b in self.edges:
            if a not in self.states or b not in self.states:
                raise ValueError(f"edge endpoint outside states: {(a, b)}")

    @classmethod
    def build(cls, initial: int, finals: Iterable[int], edges: Iterable[Edge]) -> "Nfa":
        edges = frozenset(edges)
        finals = frozenset(finals)
        states = {initial, *finals}
        for a, _, b in edges:
            states.update((a, b))
        return cls(frozenset(states), initial, finals, edges)

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(lbl for _, lbl, _ in self.edges if lbl is not EPSILON)

    def successors(self) -> dict[int, list[tuple[str | None, int]]]:
        out: dict[int, list[tuple[str | None, int]]] = defaultdict(list)
        for a, lbl, b in sorted(self.edges, key=_edge_key):
            out[a].append((lbl, b))
        return out


@dataclass(frozen=True)
class Dfa:
    states: frozenset[int]
    initial: int
    finals: frozenset[int]
    transitions: dict[int, dict[str, int]] = field(hash=False, compare=False)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset((a, lbl, b) for a, row in self.transitions.items() for lbl, b in row.items())

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(lbl for row in self.transitions.values() for lbl in row)

    def step(self, state: int, label: str) -> int | None:
        return self.transitions.get(state, {}).get(label)


def _edge_key(edge: Edge) -> tuple:
    a, lbl, b = edge
    return (a, "" if lbl is EPSILON else lbl, b)


def epsilon_closure(nfa: Nfa, states: Iterable[int], succ=None) -> frozenset[int]:
    succ = nfa.successors() if succ is None else succ
    seen = set(states)
    stack = list(seen)
    while stack:
        s = stack.pop()
        for lbl, t in succ.get(s, ()):
            if lbl is EPSILON and t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def reverse(machine: Nfa) -> Nfa:
    """Flip every edge and swap initial/final roles.

    With several finals a fresh initial state is added with epsilon edges to
    each of them.
    """
    edges = {(b, lbl, a) for a, lbl, b in machine.edges}
    if len(machine.finals) == 1:
        (initial,) = machine.finals
    else:
        initial = max(machine.states) + 1
        edges.update((initial, EPSILON, f) for f in machine.finals)
    return Nfa.build(initial, {machine.initial}, edges)


def determinize(machine: Nfa) -> Dfa:
    """Subset construction with epsilon closure.

    DFA states are numbered densely in discovery order (breadth-first, labels
    visited in sorted order), so equal inputs always give identical output.
    """
    succ = machine.successors()
    start = epsilon_closure(machine, [machine.initial], succ)
    ids: dict[frozenset[int], int] = {start: 0}
    transitions: dict[int, dict[str, int]] = {}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        moves: dict[str, set[int]] = defaultdict(set)
        for s in subset:
            for lbl, t in succ.get(s, ()):
                if lbl is not EPSILON:
                    moves[lbl].add(t)
        row: dict[str, int] = {}
        for lbl in sorted(moves):
            target = epsilon_closure(machine, moves[lbl], succ)
            if target not in ids:
                ids[target] = len(ids)
                queue.append(target)
            row[lbl] = ids[target]
        transitions[ids[subset]] = row
    finals = frozenset(i for subset, i in ids.items() if subset & machine.finals)
    return Dfa(frozenset(ids.values()), 0, finals, transitions)


def accepts(machine: Dfa | Nfa, labels: Sequence[str]) -> bool:
    """True iff ``labels`` drives the machine from its initial state to a final one.

    Unknown labels simply reject.
    """
    if isinstance(machine, Dfa):
        state: int | None = machine.initial
        for lbl in labels:
            state = machine.step(state, lbl)
            if state is None:
                return False
        return state in machine.finals
    succ = machine.successors()
    current = epsilon_closure(machine, [machine.initial], succ)
    for lbl in labels:
        nxt = {t for s in current for l, t in succ.get(s, ()) if l == lbl}
        if not nxt:
            return False
        current = epsilon_closure(machine, nxt, succ)
    return bool(current & machine.finals)


def enumerate_language(machine: Dfa | Nfa, max_len: int) -> set[tuple[str, ...]]:
    """All accepted label sequences of length <= ``max_len``.

    Walks the machine itself rather than the full label alphabet, so the cost
    is proportional to the (bounded) language, not to ``|labels| ** max_len``.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    if isinstance(machine, Dfa):
        out: set[tuple[str, ...]] = set()
        stack = [(machine.initial, ())]
        while stack:
            state, seq = stack.pop()
            if state in machine.finals:
                out.add(seq)
            if len(seq) < max_len:
                for lbl, t in machine.transitions.get(state, {}).items():
                    stack.append((t, seq + (lbl,)))
        return out

    succ = machine.successors()
    closures: dict[int, frozenset[int]] = {}

    def closure(s: int) -> frozenset[int]:
        if s not in closures:
            closures[s] = epsilon_closure(machine, [s], succ)
        return closures[s]

    out = set()
    frontier = {(): closure(machine.initial)}
    for depth in range(max_len + 1):
        nxt: dict[tuple[str, ...], set[int]] = defaultdict(set)
        for seq, current in frontier.items():
            if current & machine.finals:
                out.add(seq)
            if depth == max_len:
                continue
            for s in current:
                for lbl, t in succ.get(s, ()):
                    if lbl is not EPSILON:
                        nxt[seq + (lbl,)].update(closure(t))
        frontier = {k: frozenset(v) for k, v in nxt.items()}
    return out


def to_edge_list(machine: Dfa | Nfa) -> str:
    """Stable plain-text dump: a header, then one ``from<TAB>label<TAB>to`` line per edge.

    Epsilon is written ``<eps>``. Edges are sorted by (from, label, to).
    """
    finals = " ".join(str(f) for f in sorted(machine.finals))
    lines = [
        f"# kind: {'dfa' if isinstance(machine, Dfa) else 'nfa'}",
        f"# states: {len(machine.states)}",
        f"# initial: {machine.initial}",
        f"# finals: {finals}",
    ]
    for a, lbl, b in sorted(machine.edges, key=_edge_key):
        lines.append(f"{a}\t{'<eps>' if lbl is EPSILON else lbl}\t{b}")
    return "\n".join(lines) + "\n"
