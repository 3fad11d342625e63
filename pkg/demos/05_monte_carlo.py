# Simulated first passage times against the analytic matrix.
from importlib import resources

import numpy as np

import forestmfpt as fm

np.set_printoptions(precision=3, suppress=True)

T = fm.load_chain(resources.files("forestmfpt") / "data" / "paper.chain")
M = fm.forest_analysis(T)[3].m

report = fm.estimate_mfpt(T, trials=100_000, seed=42)
print("analytic M:\n", M)
print("simulated M:\n", report.m_hat)
print("standard errors:\n", report.stderr)
print("z-scores:\n", report.z_scores(M))

# Diagonal samples are return times (at least one step), so they estimate 1/pi_j
print("\n1/pi:", 1 / fm.stationary_direct(T))

# Long-run visit frequencies approach pi
print("visit frequencies:", fm.estimate_stationary(T, 500_000, seed=1))
print("pi:               ", fm.stationary_direct(T))
