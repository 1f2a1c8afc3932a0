"""Which latent quantiles can be ranked from ordinal health data?

Self-reported health is ordinal: poor < fair < good < very good < excellent.
Comparing two groups' ordinal CDFs tells us, under threshold assumptions,
for which quantile indices tau the latent health of one group is lower.
"""

from ordinalq import between_set, single_crossing, within_all_set, within_pair_sets
from ordinalq.datasets import health_cdf

high, low = health_cdf("high_edu_2006"), health_cdf("low_edu_2006")

# With Y's thresholds weakly below X's, F_X(j) < F_Y(j) identifies
# Q_X(tau) > Q_Y(tau) for every tau in (F_X(j), F_Y(j)].
print("high vs low education")
print("  F_X:", high.F)
print("  F_Y:", low.F)
print("  tau where the highly educated are healthier:", between_set(high, low).render())
print("  tau where they are less healthy:", between_set(low, high).render())

# Men in poverty, 2006 vs 2008: the CDFs cross once.
x, y = health_cdf("poverty_2006"), health_cdf("poverty_2008")
m = single_crossing(x, y)
print("\npoverty 2006 vs 2008: single crossing after category", m)

# Under a common threshold shift, a crossing identifies a ranking of
# interquantile ranges: Q_X(t2) - Q_X(t1) < Q_Y(t2) - Q_Y(t1).
t1, t2 = within_pair_sets(x, y, 2, 4)
print("  categories (2, 4): t1 in", t1.render(), "and t2 in", t2.render())
print("  so 2008 had the wider 70-16 interquantile range")
print("  all identified (t1, t2):", within_all_set(x, y).render())
