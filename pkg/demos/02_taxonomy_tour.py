"""Tour of the 91-class taxonomy of incident hyperarc pairs.

Two incident hyperarcs <T,H> and <T',H'> split their nodes into eight
regions; the pattern of region non-emptiness, up to exchanging the two
arcs, defines the class.  This script derives the table and classifies the
classic water-gas reaction pair.
"""

from dhglets import (
    Hyperarc,
    canonicalize,
    classify_pair,
    default_table,
    parse,
    region_pattern,
)

table = default_table()
print(f"number of classes: {len(table.class_to_canonical)}")
print("first five canonical patterns (bits b1..b8, b1 = H\\H'\\T'):")
for cls in range(1, 6):
    print(f"  class {cls}: {table.pattern_string(cls)}")

# FeO + H2 -> Fe + H2O   vs   C + H2O -> CO + H2
e = Hyperarc(frozenset({"FeO", "H2"}), frozenset({"Fe", "H2O"}))
ep = Hyperarc(frozenset({"C", "H2O"}), frozenset({"CO", "H2"}))
pattern = region_pattern(e, ep)
print(f"\nreaction pair region pattern: {tuple(pattern)}")
print(f"regions non-empty: {[i + 1 for i, b in enumerate(pattern) if b]}")
canon = canonicalize(pattern)
cls = table.pattern_to_class[canon.mask]
print(f"canonical pattern {canon.mask:08b} -> class {cls}")

# swapping the two arcs never changes the class
G = parse("a\tb\nb\tc")
assert classify_pair(G, 0, 1) == classify_pair(G, 1, 0)
print(f"\nchain pair ({{a}}->{{b}}, {{b}}->{{c}}) is class {classify_pair(G, 0, 1)}")
