"""Walk through the binary-model rate regions.

The main channel is Y = X1 AND X2; eavesdroppers see Y through binary
symmetric channels. This script prints the secrecy boundaries for the
confidential-message model and both wiretap variants, and shows the collapse
to the plain multiple-access region when the eavesdroppers are pure noise.
"""

import numpy as np

from macwt import (
    binary_cm_secrecy,
    binary_entropy,
    binary_macwt_coop_secrecy,
    binary_macwt_noncoop_secrecy,
    frontier_sweep,
    inverse_binary_entropy,
)

p = inverse_binary_entropy(0.8)  # h(p) = 0.8
q = inverse_binary_entropy(0.6)  # h(q) = 0.6
print(f"confidential messages, h(p)=0.8 (p={p:.4f}), h(q)=0.6 (q={q:.4f})")

grid = np.linspace(0.0, 0.8, 9)
inner = binary_cm_secrecy(p, q, "inner")
outer = binary_cm_secrecy(p, q, "outer")
print("  R2     inner R1_max   outer R1_max")
rows_o = dict(frontier_sweep(outer, grid))
for r2, r1 in frontier_sweep(inner, grid):
    print(f"  {r2:.2f}   {r1:12.6f}   {rows_o[r2]:12.6f}")
for r2 in grid:
    if r2 not in dict(frontier_sweep(inner, grid)):
        print(f"  {r2:.2f}   {'infeasible':>12}   {rows_o.get(r2, 0.0):12.6f}")

print()
print("pure-noise eavesdroppers (p = q = 1/2) recover the MAC region:")
half = binary_cm_secrecy(0.5, 0.5, "inner")
for r2, r1 in frontier_sweep(half, [0.0, 0.25, 0.5, 0.75, 1.0]):
    print(f"  R2={r2:.2f}  R1_max={r1:.2f}  (min(1, 1-R2)={min(1.0, 1.0 - r2):.2f})")

print()
pw = 0.3
print(f"external wiretapper through BSC({pw}), h({pw}) = {binary_entropy(pw):.6f}")
coop = binary_macwt_coop_secrecy(pw)
noncoop = binary_macwt_noncoop_secrecy(pw, "inner")
for r2 in (0.0, 0.2, 0.4, 0.6, 0.8):
    rows_c = dict(frontier_sweep(coop, [r2]))
    rows_n = dict(frontier_sweep(noncoop, [r2]))
    c = f"{rows_c[r2]:.6f}" if r2 in rows_c else "infeasible"
    n = f"{rows_n[r2]:.6f}" if r2 in rows_n else "infeasible"
    print(f"  R2={r2:.1f}  cooperative R1_max={c}  independent R1_max={n}")
print("cooperation buys individual rate but the same secrecy sum h(p).")
