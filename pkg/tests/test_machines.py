import pytest

from uzstem.fsm import EPSILON, accepts, enumerate_language
from uzstem.inventory import InventoryError, load_inventory
from uzstem.machines import (
    STEM_GATE,
    STEM_LABEL,
    START,
    build_class_machine,
    build_graph,
    compose_main,
    legal_next_classes,
    load_morphotactics,
)


def test_class1_rtl_continuous_person(graph, lbl):
    rtl = graph.machines[1].rtl
    assert accepts(rtl, [lbl("siz", 1), lbl("yap", 1)])
    assert not accepts(rtl, [lbl("yap", 1), lbl("siz", 1)])


def test_class5_plural_possessive_and_greeting(graph, lbl):
    rtl = graph.machines[5].rtl
    assert accepts(rtl, [lbl("im", 5), lbl("lar", 5)])
    assert accepts(rtl, [lbl("lar", 5, "greeting"), lbl("m", 5)])
    assert not accepts(rtl, [lbl("m", 5), lbl("lar", 5, "greeting")])


def test_class7_language_is_single_prefixes(graph):
    lang = enumerate_language(graph.machines[7].rtl, 3)
    assert len(lang) == 7
    assert all(len(seq) == 1 for seq in lang)


def test_every_class_machine_covers_its_allomorphs(inv, graph):
    for cid, cm in graph.machines.items():
        surfaces = {graph.labels[l].allomorph for l in cm.ltr.labels}
        expected = {a for a in inv.allomorphs if a.class_id == cid}
        assert surfaces == expected, cid


def test_build_class_machine_rejects_unknown_class(inv):
    with pytest.raises(ValueError):
        build_class_machine(inv, 8)


def test_compose_traversals(graph, lbl):
    bajar = [lbl("mi", 1), lbl("ti", 1), lbl("yap", 1), lbl("ma", 2), lbl("il", 3), lbl("tir", 3), STEM_LABEL]
    assert accepts(graph.rtl, bajar)
    assert accepts(graph.rtl, [STEM_LABEL])
    assert accepts(graph.rtl, [lbl("di", 1), lbl("ma", 2), lbl("ol", 3), STEM_LABEL])


def test_compose_rejections(graph, lbl):
    ltr = graph.ltr
    # two prefixes
    assert not accepts(ltr, [lbl("ba", 7), lbl("ser", 7), STEM_LABEL])
    assert accepts(ltr, [lbl("ser", 7), STEM_LABEL])
    # greeting plural before possessive
    assert not accepts(ltr, [STEM_LABEL, lbl("lar", 5, "greeting"), lbl("m", 5)])
    assert accepts(ltr, [STEM_LABEL, lbl("m", 5), lbl("lar", 5, "greeting")])
    # derivational suffix between two tense/person suffixes
    assert not accepts(ltr, [STEM_LABEL, lbl("yap", 1), lbl("chi", 4), lbl("siz", 1)])
    assert accepts(ltr, [STEM_LABEL, lbl("yap", 1), lbl("siz", 1)])
    # nothing after the stem is not a prefix
    assert not accepts(ltr, [lbl("lar", 5), STEM_LABEL])


def test_rtl_main_equals_reversed_ltr_main(graph):
    forward = enumerate_language(graph.ltr, 3)
    assert enumerate_language(graph.rtl, 3) == {s[::-1] for s in forward}


def test_entrances_and_exits(graph):
    assert graph.entrances == {1, 5}
    assert graph.exits == {6, 7}


def test_legal_next_classes(graph):
    assert legal_next_classes(graph, START) == {1, 5}
    assert legal_next_classes(graph, 6) == {STEM_GATE}
    assert legal_next_classes(graph, 1) == {2}
    assert legal_next_classes(graph, 5) == {2, 4, 6}
    assert legal_next_classes(graph, STEM_GATE) == {7}
    assert legal_next_classes(graph, 7) == frozenset()


def _live_labels(nfa):
    fwd = {nfa.initial}
    changed = True
    while changed:
        changed = False
        for a, _, b in nfa.edges:
            if a in fwd and b not in fwd:
                fwd.add(b)
                changed = True
    back = set(nfa.finals)
    changed = True
    while changed:
        changed = False
        for a, _, b in nfa.edges:
            if b in back and a not in back:
                back.add(a)
                changed = True
    return {lbl for a, lbl, b in nfa.edges if lbl is not EPSILON and a in fwd and b in back}


def test_no_dead_affixes(inv, graph):
    live = {graph.labels[l].allomorph for l in _live_labels(graph.ltr) if l != STEM_LABEL}
    assert live == set(inv.allomorphs)


def test_compose_requires_all_classes(inv, graph):
    tactics = load_morphotactics(inv=inv)
    partial = {c: m for c, m in graph.machines.items() if c != 3}
    with pytest.raises(ValueError, match=r"\[3\]"):
        compose_main(partial, inv, tactics)


def test_bad_link_endpoint(tmp_path, inv):
    from uzstem.inventory import default_grammar_dir

    text = (default_grammar_dir() / "morphotactics.tsv").read_text(encoding="utf-8")
    bad = tmp_path / "morphotactics.tsv"
    bad.write_text(text + "link\t5:nowhere\tEND\n", encoding="utf-8")
    with pytest.raises(InventoryError, match="nowhere"):
        build_graph(inv, load_morphotactics(bad, inv))
    bad.write_text(text + "arc\t1\tt0\tt1\tzzz\n", encoding="utf-8")
    with pytest.raises(InventoryError, match="zzz"):
        load_morphotactics(bad, inv)


def test_graph_build_is_deterministic(inv):
    from uzstem.fsm import to_edge_list

    a = build_graph(load_inventory(), load_morphotactics())
    b = build_graph(load_inventory(), load_morphotactics())
    assert to_edge_list(a.rtl) == to_edge_list(b.rtl)
    assert a.node_ids == b.node_ids
