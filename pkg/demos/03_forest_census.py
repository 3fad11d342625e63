# Listing the spanning in-forests of a small digraph and reading off q and f.
from importlib import resources

import forestmfpt as fm
from forestmfpt.cli import forest_dot

T = fm.load_chain(resources.files("forestmfpt") / "data" / "paper.chain")
g = fm.digraph_of(T)

for k in range(g.n):
    forests = fm.enumerate_in_forests(g, k)
    total = sum(f.weight for f in forests)
    print(f"{len(forests)} in-forests with {k} arcs, total weight {total:.6g}")

# Spanning converging trees: one root each
print("\nconverging trees:")
for f in fm.enumerate_in_forests(g, g.n - 1):
    (root,) = f.roots
    print(f"  root {root + 1}: arcs {[(a + 1, b + 1) for a, b in f.arcs]}, weight {f.weight:.6g}")

# Which 2-tree forests make up f_14? vertex 4 a root, vertex 1 in the other tree
print("\nforests counted in f_14:")
parts = [f for f in fm.enumerate_in_forests(g, g.n - 2) if 3 in f.roots and 0 not in f.tree(3)]
for f in parts:
    print(f"  arcs {[(a + 1, b + 1) for a, b in f.arcs]}, weight {f.weight:.6g}")
print("  sum:", sum(f.weight for f in parts))

q, f = fm.oracle_tree_and_two_tree(g)
print("\nq from enumeration:", q)
print("f from enumeration:\n", f)

# DOT for the first spanning tree; roots are drawn with a double circle
print()
print(forest_dot(fm.enumerate_in_forests(g, g.n - 1)[0], "T1"))
