"""Confidence intervals from the m-out-of-n bootstrap.

The estimators converge at root-n rate but their limiting variance has no
usable closed form, so intervals come from subsampling: draw m = floor(
sqrt(n)) rows with replacement, recompute the statistic, and rescale the
replicate variance back to the full sample size. Everything is seeded, so
results reproduce bit-for-bit.

Run:  python3 demos/03_bootstrap_confidence.py
"""

from nncorr import (
    CopulaConfig,
    PipelineConfig,
    confidence_interval,
    estimate,
    gen_gaussian_copula,
    mn_bootstrap_pair,
    true_t,
)

rho, d, n = 0.5, 6, 300
truth = true_t(rho).value
config = PipelineConfig()

sample = gen_gaussian_copula(CopulaConfig(n=n, d=d, rho=rho, seed=42))
res = estimate(sample, config)
v_raw, v_corr = mn_bootstrap_pair(sample, config, b_reps=200, seed=0)

print(f"Cell rho={rho}, d={d}, n={n}; population value T = {truth:.4f}")
print(f"Subsample size m = {v_raw.m}, bootstrap replicates = {v_raw.b_reps}\n")

for label, point, v in (("raw", res.t_hat, v_raw), ("corrected", res.t_bc, v_corr)):
    lo, hi = confidence_interval(point, v, alpha=0.05)
    hit = "covers" if lo <= truth <= hi else "misses"
    print(f"  {label:<9} point = {point:.4f}   se = {v.se:.4f}   "
          f"95% CI = [{lo:.4f}, {hi:.4f}]   ({hit} the truth)")

# Coverage over repeated draws: the corrected interval should hit the truth
# about 95% of the time; the raw one loses coverage to bias in this cell.
reps = 40
hits_raw = hits_corr = 0
for r in range(reps):
    s = gen_gaussian_copula(CopulaConfig(n=n, d=d, rho=rho, seed=1000 + r))
    e = estimate(s, config)
    vr, vc = mn_bootstrap_pair(s, config, b_reps=100, seed=r)
    lo, hi = confidence_interval(e.t_hat, vr, 0.05)
    hits_raw += lo <= truth <= hi
    lo, hi = confidence_interval(e.t_bc, vc, 0.05)
    hits_corr += lo <= truth <= hi

print(f"\nEmpirical coverage over {reps} replications: "
      f"raw {hits_raw}/{reps}, corrected {hits_corr}/{reps}")
