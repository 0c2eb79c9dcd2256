"""Smallest singular value tails.

Two experiments: (1) the Gaussian benchmark, where
P(s_n <= eps n**(-1/2)) has the finite-n limit 1 - exp(-eps^2/2 - eps)
(~ eps for small eps); (2) a shifted sign matrix, whose tail curve
should be monotone and bounded by a linear envelope C * eps plus an
exponentially small term.
"""

import math

from rmtlab.ensembles import EnsembleSpec, EntryDistribution
from rmtlab.experiments import ExperimentConfig, run

gauss = ExperimentConfig(
    kind="smin-tail",
    spec=EnsembleSpec(n=100, dist=EntryDistribution("real-gaussian"),
                      master_seed=4),
    trials=2000, z=0.0, epsilon_grid=(0.05, 0.1, 0.2, 0.5))
s = run(gauss)
print("Gaussian n=100, z=0:")
print("  eps     p_hat    limit 1-exp(-eps^2/2-eps)")
for pt in s.stats["tail_curve"]:
    eps = pt["epsilon"]
    limit = 1.0 - math.exp(-eps * eps / 2.0 - eps)
    print(f"  {eps:.2f}   {pt['p_hat']:.4f}   {limit:.4f}")

signed = ExperimentConfig(
    kind="smin-tail",
    spec=EnsembleSpec(n=128, dist=EntryDistribution("complex-sign"),
                      master_seed=5),
    trials=2000, z=1.0 + 1.0j, epsilon_grid=(0.1, 0.2, 0.4, 0.8))
s = run(signed)
print("\ncomplex-sign n=128, z=1+i:")
c_fit = 0.0
for pt in s.stats["tail_curve"]:
    c_fit = max(c_fit, pt["p_hat"] / pt["epsilon"])
    print(f"  eps={pt['epsilon']:.2f}  p_hat={pt['p_hat']:.4f}  "
          f"CI [{pt['ci_lo']:.4f}, {pt['ci_hi']:.4f}]")
print(f"  smallest linear envelope: C = {c_fit:.3f}")
