"""Build a directed hypergraph from text, inspect it, and round-trip it.

The input format is one hyperarc per line: comma-separated tail labels, a
tab, comma-separated head labels, and an optional integer timestamp.
"""

from dhglets import parse, serialize

RAW = """\
# a tiny reaction network
FeO,H2\tFe,H2O\t100
C,H2O\tCO,H2\t140
CO,O2\tCO2\t180
CO,O2\tCO2\t200
H2,O2\tH2O\t220
"""

G = parse(RAW)
print(f"nodes: {G.num_nodes}, arcs: {G.num_arcs} (one duplicate line collapsed)")
print(f"node labels in interning order: {G.labels}")

stats = G.stats(with_line_graph=True)
print(f"total incidence sum(|tail|+|head|): {stats.total_incidence}")
print(f"incident pairs (line-graph size): {stats.line_graph_size}")

for i in range(G.num_arcs):
    arc = G.arcs[i]
    tail = sorted(G.labels[v] for v in arc.tail)
    head = sorted(G.labels[v] for v in arc.head)
    nbrs = sorted(G.neighbors(i))
    print(f"arc {i}: {tail} -> {head} @t={arc.timestamp}, neighbors {nbrs}")

print("\nserialized back out (labels sorted within each set):")
print(serialize(G))
