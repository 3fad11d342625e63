# Three independent ways to get mean first passage times on random chains:
#   1. the forest recurrence
#   2. the Laplacian group inverse
#   3. brute-force enumeration of in-forests (small n only)
import numpy as np

import forestmfpt as fm

rng = np.random.default_rng(1)

print(" n  density  |M_forest - M_meyer|  |Q_k recurrence - enumeration|")
for n in range(2, 8):
    for density in (1.0, 0.6):
        T = fm.random_chain(rng, n, density=density)
        acc, tw, ttw, M = fm.forest_analysis(T)
        _, _, M_meyer = fm.meyer_analysis(T)
        oracle = fm.oracle_accumulator(fm.digraph_of(T))
        d_route = np.abs(M.m - M_meyer.m).max()
        d_oracle = np.abs(acc.qs - oracle.qs).max()
        print(f"{n:2d}  {density:7.1f}  {d_route:20.2e}  {d_oracle:30.2e}")

# First-step equations: m_ij = 1 + sum_k t_ik m_kj with m_jj = 0
T = fm.random_chain(rng, 6)
_, tw, ttw, _ = fm.forest_analysis(T)
Z = fm.mfpt_forest(tw, ttw, fm.Diagonal.ZERO).m
resid = 1 + T.entries @ Z - Z
np.fill_diagonal(resid, 0)
print("\nfirst-step residual on a 6-state chain:", np.abs(resid).max())
