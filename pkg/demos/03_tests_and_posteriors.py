"""Frequentist tests and Bayesian posterior probabilities of dominance."""

from ordinalq import Event, PosteriorConfig, bayes_decision, posterior_prob, test_nonsd1, test_sc, test_sd1
from ordinalq.datasets import health_cdf, health_counts

white, black = health_cdf("white_2006"), health_cdf("black_2006")

# H0: white dominates Black.  Not rejecting is weak evidence.
rep = test_sd1(white, black, alpha=0.05)
# No moment is close to binding here, so nothing is selected and the
# critical value is infinite.
print(f"SD1 test: statistic {rep.statistic:.2f}, critical value {rep.critical_value:.2f}, reject={rep.reject}")

# H0: white does not dominate Black.  Rejecting is evidence of dominance.
rep = test_nonsd1(white, black, alpha=0.05)
print(f"non-SD1 test: largest t {rep.statistic:.2f} vs {rep.critical_value:.2f}, reject={rep.reject}")

# Single crossing between poverty years, then a clearly double-crossing pair.
rep = test_sc(health_cdf("poverty_2006"), health_cdf("poverty_2008"), alpha=0.05)
print("single-crossing test, poverty:", "reject" if rep.reject else "do not reject")
rep = test_sc(health_cdf("low_edu_2006"), health_cdf("high_edu_2006"), alpha=0.05)
print("single-crossing test, education:", "reject" if rep.reject else "do not reject")

# Dirichlet-multinomial posterior with a uniform prior.
p = posterior_prob(health_counts("white_2006"), health_counts("black_2006"), Event.SD1_XY, PosteriorConfig(seed=3))
print(f"\nPr(white dominates Black | data) = {p:.3f} -> {bayes_decision(p).value}")
p = posterior_prob([50, 50], [50, 50], Event.SD1_XY, PosteriorConfig(seed=3))
print(f"Pr(dominance) with identical binary data = {p:.3f} -> {bayes_decision(p).value}")
