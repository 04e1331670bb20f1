"""Trees: two rank definitions, the KB order, Ord, empirical dimension trees.

Run:  python3 demos/03_trees_and_ranks.py
"""

import asdimlab as al

t = al.tree_from_sequences([(1,), (2, 1)])
print("tree nodes:", sorted(t.nodes))
print("rank (recursive):   ", al.rank_recursive(t))
print("rank (leaf-strip):  ", al.rank_levels(t))

print("\nKB order sorts extensions before their prefixes:")
print([list(s) for s in al.kb_sorted(t.nodes)])

# Ord of a subset system equals the rank of its increasing-sequence tree.
m = al.ord_set_from([{1, 2}, {3}], ground=(1, 2, 3, 4, 5))
ta = al.ta_tree(m)
print("\nOrd of {{1,2},{3}} =", al.ord_set(m), " rank of its tree =",
      al.rank_recursive(ta))

# The canonical strictly increasing embedding witnesses rank monotonicity.
print("\ncanonical embed of (3,1,1):", al.canonical_increasing_embed((3, 1, 1)))
src = al.tree_from_sequences([(3, 1, 1), (2,), (2, 2)])
mapping, image = al.embed_tree(src)
print("is a t-embedding:", al.check_t_embedding(mapping, src, image))
print("rank(src) <= rank(image):",
      al.rank_recursive(src), "<=", al.rank_recursive(image))

# Empirical dimension tree: the infeasible demand sequences within caps.
line = al.interval_space(-6, 6)
cfg = al.EmpiricalTreeConfig(rmax=3, lmax=2, bound=2)
tree = al.empirical_dim_tree(line, cfg)
print(f"\nempirical tree of {line.label} at bound 2 (rmax 3, lmax 2):")
print("nodes:", sorted(tree.nodes))
print("rank:", al.rank_recursive(tree))

# The suffix trees at sibling roots grow with the root demand.
m2 = al.subtree_matrix(tree, (2,))
m3 = al.subtree_matrix(tree, (3,))
print("matrix at (2) contained in matrix at (3):", m2.nodes <= m3.nodes)
