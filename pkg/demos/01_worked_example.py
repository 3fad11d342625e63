# Worked example: a four-state chain, its forests, and its passage times.
#
# Run with:  python demos/01_worked_example.py
from importlib import resources

import numpy as np

import forestmfpt as fm

np.set_printoptions(precision=6, suppress=True)

chain_file = resources.files("forestmfpt") / "data" / "paper.chain"
T = fm.load_chain(chain_file)
print("transition matrix T:\n", T.entries)

# L = I - T is the Laplacian of the loop-free digraph of the chain
L = fm.laplacian(T)
print("\nLaplacian L:\n", L.entries)
print("\narcs of the digraph (1-indexed):")
for t, h, w in fm.digraph_of(T).arcs:
    print(f"  {t + 1} -> {h + 1}  weight {w}")

# The recurrence Q_{k+1} = sigma_{k+1} I - L Q_k produces the in-forest weights
acc = fm.forest_recurrence(L)
for k in range(T.n + 1):
    print(f"\nsigma_{k} = {acc.sigmas[k]:.6g}")
    print(f"Q_{k} =\n{acc.qs[k]}")

# Q_3 has identical rows: these are the converging-tree weights q
tw = fm.tree_weights(acc)
print("\nq  =", tw.q, " sum =", tw.sigma_tot)
print("pi =", fm.stationary_from_trees(tw))

# f_ij = Q_2[j, j] - Q_2[i, j]
ttw = fm.two_tree_weights(acc)
print("\nf =\n", ttw.f)

M = fm.mfpt_forest(tw, ttw)
print("\nmean first passage times (forest route):\n", M.m)

# The same matrix from the group inverse of L
pi, sharp, M_meyer = fm.meyer_analysis(T)
print("\ngroup inverse L#:\n", sharp.sharp)
print("\nmean first passage times (group inverse route):\n", M_meyer.m)
print("\nmax difference:", np.abs(M.m - M_meyer.m).max())

# With first passage allowed at step 0 the diagonal is zero
print("\nzero-diagonal convention:\n", fm.mfpt_forest(tw, ttw, "zero").m)
