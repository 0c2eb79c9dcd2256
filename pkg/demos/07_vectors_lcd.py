"""Vector geometry: compressibility, spread coordinates and the LCD.

Unit vectors split into sparse / compressible / incompressible; for
incompressible vectors a large set of coordinates has modulus of order
n**(-1/2) (the evenly-spread witness). The essential least common
denominator D_{alpha,tau}(v) is the smallest scaling t that puts almost
every coordinate of t*v within alpha of a nonzero integer; structured
vectors have small D, generic vectors have large or infinite D.
"""

import numpy as np

from rmtlab import vectors
from rmtlab.vectors import LcdParams, UnitVector

rng = np.random.default_rng(13)
n, gamma, rho = 64, 0.3, 0.3

for name, coords in (("basis vector e_1", np.eye(n)[0]),
                     ("spiked vector", np.r_[10.0, np.full(n - 1, 0.1)]),
                     ("gaussian vector", rng.standard_normal(n)
                      + 1j * rng.standard_normal(n))):
    b = UnitVector(coords)
    cls = vectors.classify(b, gamma, rho)
    print(f"{name:18s} -> {cls.value:15s} "
          f"dist-to-sparse = {vectors.distance_to_sparse(b, gamma):.4f}")

b = UnitVector(rng.standard_normal(n) + 1j * rng.standard_normal(n))
j, sigma1 = vectors.evenly_spread_witness(b, gamma, rho)
part = "real" if j == 1 else "imaginary"
print(f"\nwitness: {len(sigma1)} evenly-spread {part} coordinates "
      f"(guarantee {rho*rho*gamma*n/4:.1f})")

params = LcdParams(alpha=0.1, t_max=1e3)
print("\nessential LCD (alpha = 0.1, tau = 0):")
for label, v in (("(1, 1, 1)", np.ones(3)),
                 ("(0.5, 1)", np.array([0.5, 1.0])),
                 ("(1, sqrt 2)", np.array([1.0, np.sqrt(2.0)]))):
    d = vectors.lcd(v, params)
    print(f"  D{label:12s} = {d:.6f}")
print("rational ratios give small D; irrational ratios push D far out")
