# Segmenting words and comparing against the brute-force oracle.
from uzstem import analyze, stem, strip_prefix
from uzstem.analyzer import AnalyzerConfig
from uzstem.inventory import load_inventory
from uzstem.machines import default_graph
from uzstem.oracle import WordSynthesizer, enumerate_segmentations_oracle

for w in ["bajartirilmayaptimi", "boryapsiz", "kitoblarim", "dadamlar", "dehqonchilik", "serhosil", "O‘chirgich!"]:
    best = analyze(w)[0]
    print(f"{w:<22} {best.segmented():<28}", [f"{m.surface}:{m.gloss}" for m in best.morphemes])

print(stem("kitoblarim"), stem("gul"), stem("xyz123"))
pre, rest = strip_prefix("barkamol")
print(pre.surface, rest, strip_prefix("bor"))

# olma is apple, or ol-ma "don't take": keep every reading
everything = AnalyzerConfig(emit_all=True, max_analyses=None)
ranked = analyze("olma", config=everything)
for a in ranked:
    print("  ", a.segmented(), [m.class_name for m in a.morphemes], a.score[:3])

inv, graph = load_inventory(), default_graph()
print(set(ranked) == enumerate_segmentations_oracle("olma", inv, graph, everything))

# synthesized words: made-up stem + a random legal affix chain
syn = WordSynthesizer(graph, seed=1)
for _ in range(8):
    word, true_stem, _ = syn.sample()
    print(f"{word:<16} built on {true_stem!r:<10} analyzed as {analyze(word)[0].segmented()}")
