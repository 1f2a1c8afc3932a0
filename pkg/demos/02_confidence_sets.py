"""Inner confidence sets: subsets of the identified set with high probability.

Sampling error makes the estimated set too large.  The inner confidence sets
shrink every interval so that, asymptotically, the whole estimated set lies
inside the true one with probability at least 1 - alpha.
"""

from ordinalq import CritValConfig, cs_between, cs_within_all, cs_within_fixed
from ordinalq.datasets import health_cdf

cfg = CritValConfig(draws=100000, seed=1)

for n in (1000, 30000, 10**6):
    high, low = health_cdf("high_edu_2006", n), health_cdf("low_edu_2006", n)
    cs, lim = cs_between(high, low, alpha=0.10, cfg=cfg)
    print(f"n = {n:>7}: 90% inner set {cs.render()}")
print("pointwise levels used:", f"alpha~ = {lim.tilde_alpha:.4f}, beta~ = {lim.tilde_beta:.4f}")

# Within-group comparisons need a crossing and larger samples.
x, y = health_cdf("poverty_2006", 10**5), health_cdf("poverty_2008", 10**5)
rect, lim = cs_within_fixed(x, y, 2, 4, alpha=0.10, cfg=cfg)
print("\npoverty, categories (2, 4):", rect.render())
if lim.empty_reason is not None:
    print("  empty because:", lim.empty_reason.value)
rects, _ = cs_within_all(x, y, alpha=0.10, cfg=cfg)
print("poverty, all pairs:", rects.render())
