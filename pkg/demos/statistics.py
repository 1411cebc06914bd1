"""
Fluctuations, multiplicities and a Monte Carlo check
====================================================

The centroid of n particles scattered over a sphere of radius R0 spreads
as R0 / (2 sqrt(n)).  Multiplicities of the Einstein solid are exact
integers, and Boltzmann weights are normalised at working precision.
"""

import numpy as np
from mpmath import mp

from ftr.geometry import convolution_sup_error, fluctuation_split, mc_centroid
from ftr.numeric import Quantity, bundled
from ftr.statmech import EinsteinSolid, StateEnergies, boltzmann, entropy, multiplicity

# ordinary and extraordinary fluctuations recombine into the compound one
split = fluctuation_split(10**4, 10**8)
print("ordinary", split.ordinary.std, "extraordinary", split.extraordinary.std,
      "compound", mp.nstr(split.compound.std, 8))
print("convolution sup error:", convolution_sup_error(10**4, 10**8))

# Monte Carlo centroid, deterministic for a given seed
for n in (100, 1000, 10_000):
    r = mc_centroid(n, 2000, seed=7)
    print(f"n={n:6d} empirical {r.empirical_std:.6f} predicted {r.predicted_std:.6f} z={r.z:+.2f}")

# Einstein solid: two atoms, two quanta
omega = multiplicity(EinsteinSolid.from_atoms(2, 2))
modern = bundled("modern")
print("Omega =", omega, " S =", mp.nstr(entropy(omega, modern).magnitude, 6), "erg/K")

# Boltzmann weights over a few levels at 300 K
kT = modern["k_B"].magnitude * 300
levels = [Quantity.of(x * kT, "erg") for x in np.arange(5)]
p = boltzmann(StateEnergies.with_constants(levels, Quantity.of(300, "K"), modern))
print("p =", [mp.nstr(x, 4) for x in p])
