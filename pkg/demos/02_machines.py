# Class machines are written left to right, then reversed and determinized.
from uzstem.fsm import accepts, enumerate_language, to_edge_list
from uzstem.machines import START, STEM_GATE, STEM_LABEL, default_graph, legal_next_classes

graph = default_graph()

for cid, cm in sorted(graph.machines.items()):
    print(f"class {cid} {cm.name:<13} ltr {len(cm.ltr.states):>2} states  rtl {len(cm.rtl.states):>2} states")

# the prefix machine is tiny
print(to_edge_list(graph.machines[7].rtl))

def label(surface, cid):
    return next(l for l, info in graph.labels.items()
                if info.allomorph.surface == surface and info.allomorph.class_id == cid and info.role is None)

# bajar-tir-il-ma-yap-ti-mi, read from the end of the word
chain = [label(s, c) for s, c in [("mi", 1), ("ti", 1), ("yap", 1), ("ma", 2), ("il", 3), ("tir", 3)]]
print(accepts(graph.rtl, chain + [STEM_LABEL]))     # True
print(accepts(graph.rtl, chain[::-1] + [STEM_LABEL]))  # False, wrong order

# which classes may come next when reading right to left
print(sorted(legal_next_classes(graph, START)))
print(sorted(legal_next_classes(graph, 1)))
print(legal_next_classes(graph, 6) == {STEM_GATE})

# the rtl language is the ltr language read backwards
tp = graph.machines[1]
fwd = enumerate_language(tp.ltr, 3)
print(len(fwd), enumerate_language(tp.rtl, 3) == {s[::-1] for s in fwd})
