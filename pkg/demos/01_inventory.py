# Walk through the affix inventory: classes, generic forms, allomorph expansion.
from uzstem.inventory import AFFIX_CLASSES, allomorphs_of_class, expand_generic, load_inventory

inv = load_inventory()
print(len(inv.entries), "affixes,", len(inv.allomorphs), "allomorphs")

for cid, (n_affix, n_allo) in sorted(inv.counts().items()):
    print(f"  {cid} {AFFIX_CLASSES[cid].name:<13} {n_affix:>3} {n_allo:>3}")

# capital letters stand for sound-harmony variants, parentheses for optional letters
for form in ["Gancha", "(i)ngiz", "Qaz", "moqliK", "(uv)chan"]:
    print(f"{form:>10} ->", expand_generic(form))

# prefixes, longest first (the order the stripper tries them)
print([a.surface for a in allomorphs_of_class(inv, 7)])

# one entry, all its surface variants
yap = inv.entry(1, "yap")
print(yap.key, yap.gloss, [a.id for a in inv.allomorphs_of(yap)])
