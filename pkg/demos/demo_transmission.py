"""Transmission of a single photon through the tunable bond.

Plots T(lam, k) versus lam for several wavevectors, showing the two
control regions: the bond-weakening side (-1 <= lam <= 0), where T rises
from 0 to 1 as the bond approaches the uniform value, and the
bond-strengthening side (lam >= 0), where an overstrong bond traps the
photon and T falls back to 0.
"""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ccaswitch import transmission

lams = np.arange(-1.0, 6.0, 0.01)
fig, ax = plt.subplots(figsize=(6, 4))
for k, label in [(0.01, "k = 0.01"), (math.pi / 8, "k = pi/8"),
                 (math.pi / 4, "k = pi/4"), (math.pi / 2, "k = pi/2")]:
    ax.plot(lams, [transmission(lam, k) for lam in lams], label=label)
ax.set_xlabel("lambda = (t' - t) / t")
ax.set_ylabel("transmission T")
ax.legend()
ax.set_title("Single-photon switch characteristic")
fig.tight_layout()
fig.savefig("transmission_vs_lambda.png", dpi=150)
print("wrote transmission_vs_lambda.png")

print("\nspecial points:")
for lam, k in [(0.0, math.pi / 4), (-1.0, math.pi / 2), (1.0, math.pi / 2)]:
    print(f"  T({lam:+.1f}, {k:.4f}) = {transmission(lam, k):.4f}")
