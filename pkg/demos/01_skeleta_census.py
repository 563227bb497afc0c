"""Walk through the 1-skeleta: connected 4-regular multigraphs.

Every cellular fake surface of complexity t lives over such a graph with t
vertices.  The census below reproduces the published tables: counts by
number of self-loops and by shortest cycle length, for complexities 1..7.
"""

import time
from collections import Counter

from fakesurfaces.skeleta import (
    decimal_rep,
    enumerate_skeleta,
    skeleton_stats,
)
from fakesurfaces.pipeline import emit_table2, emit_table3

start = time.time()
for t in range(1, 8):
    ske = enumerate_skeleta(t)
    loops = Counter(skeleton_stats(s)["self_loops"] for s in ske)
    print(f"complexity {t}: {len(ske)} skeleta, self-loop counts {dict(sorted(loops.items()))}")
print(f"(enumerated in {time.time() - start:.1f}s)\n")

print("Skeleta by number of self-loops")
print(emit_table2(7))
print()
print("Skeleta by shortest cycle")
print(emit_table3(7))

print("\nThe complexity-3 skeleta in canonical order (decreasing decimal")
print("representation of the adjacency matrix):")
for s in enumerate_skeleta(3):
    print(f"  #{s.index}: {s.matrix}  D = {decimal_rep(s.matrix)}")

print("\nEdge labels follow the upper-right triangle; for skeleton #3 the")
print("loop is edge 1 and the triple bundle takes labels 4, 5, 6:")
s = enumerate_skeleta(3)[2]
for e, (tv, hv) in enumerate(s.edges):
    kind = "loop at vertex %d" % tv if tv == hv else f"vertex {tv} -> vertex {hv}"
    print(f"  edge {e + 1}: {kind}")
