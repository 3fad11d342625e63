# How the forest recurrence degrades with n.
#
# The recurrence is run exactly as stated, without rescaling. Tree weights
# shrink roughly like n^-(n-1) while intermediate Q_k are O(1), so the
# cancellations in the last steps cost relative accuracy as n grows.
import numpy as np

import forestmfpt as fm

rng = np.random.default_rng(0)
print("  n   max |M_forest - M_meyer| / |M_meyer|   max |Q_n|   |sigma_n|")
for n in (4, 8, 12, 16, 20, 25, 30, 40, 50):
    worst = 0.0
    resid_q = resid_s = 0.0
    for _ in range(5):
        T = fm.random_chain(rng, n)
        try:
            acc, _, _, M = fm.forest_analysis(T)
        except fm.ChainError as exc:
            print(f"{n:3d}   forest route failed: {exc}")
            break
        _, _, M_meyer = fm.meyer_analysis(T)
        worst = max(worst, np.max(np.abs(M.m - M_meyer.m) / M_meyer.m))
        resid_q = max(resid_q, np.abs(acc.qs[n]).max())
        resid_s = max(resid_s, abs(acc.sigmas[n]))
    else:
        print(f"{n:3d}   {worst:36.2e}   {resid_q:9.1e}   {resid_s:8.1e}")
