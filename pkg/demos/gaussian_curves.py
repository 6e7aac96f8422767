"""Trace the Gaussian secrecy-capacity curves.

User 1's secure rate as a function of user 2's rate, for P1 = 100, P2 = 200,
N0 = 1 and growing wiretap-noise levels. Each point solves a max-min over the
private-power fraction alpha after pinning beta to the value that makes user
2's secure rate exactly R2.
"""

import numpy as np

from macwt import GaussianMacParams, gaussian_beta_star, gaussian_secrecy_curve
from macwt.regions import _beta_rate

for n1, n2 in ((1.0, 1.0), (4.0, 4.0), (16.0, 16.0)):
    params = GaussianMacParams(100.0, 200.0, 1.0, n1, n2)
    top = _beta_rate(params, 1.0)
    grid = np.linspace(0.0, top, 6)
    inner = gaussian_secrecy_curve(params, "inner", grid, 256)
    outer = gaussian_secrecy_curve(params, "outer", grid, 256)
    print(f"N1 = N2 = {n1:g}   (feasible R2 up to {top:.4f})")
    print("  R2        C_inner   C_outer   beta*")
    for (r2, ci), (_, co) in zip(inner.samples, outer.samples):
        bstar = gaussian_beta_star(r2, params)
        print(f"  {r2:.4f}    {ci:.4f}    {co:.4f}    {bstar:.6f}")
    print()

print("noisier wiretappers enlarge both bounds pointwise.")
