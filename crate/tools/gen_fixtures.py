#!/usr/bin/env python3
"""Regenerate the bundled graph6 fixtures under crates/critlab/data/.

Uses networkx as the reference graph6 codec. Run from the repo root:

    python3 tools/gen_fixtures.py
"""
import random

import networkx as nx

# Every isomorphism class on 0..7 vertices, reference graph6 encoding.
lines = [nx.to_graph6_bytes(g, header=False).decode().strip() for g in nx.graph_atlas_g()]
with open("crates/critlab/data/corpus_n7.g6", "w") as f:
    f.write("\n".join(lines) + "\n")
print(f"corpus_n7.g6: {len(lines)} lines")

# 10,000 random graphs, n in 0..=64, deterministic seed.
rng = random.Random(20250811)
out = []
for n in [0, 1, 2, 62, 63, 64]:
    out.append(nx.to_graph6_bytes(nx.empty_graph(n), header=False).decode().strip())
    out.append(nx.to_graph6_bytes(nx.complete_graph(n), header=False).decode().strip())
while len(out) < 10000:
    n = rng.randint(0, 64)
    g = nx.gnp_random_graph(n, rng.random(), seed=rng.randint(0, 2**31))
    out.append(nx.to_graph6_bytes(g, header=False).decode().strip())
with open("crates/critlab/data/roundtrip_10k.g6", "w") as f:
    f.write("\n".join(out) + "\n")
print(f"roundtrip_10k.g6: {len(out)} lines")
