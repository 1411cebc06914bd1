"""
From two cosmic numbers to the constants of physics
===================================================

Start from the Einstein ratio R0/N and the nuclear range k, recover
(N, R0), then run the whole derivation chain on both bundled constant sets.
"""

from mpmath import mp

from ftr.chain import run_chain
from ftr.exclusion import sigma_from_M
from ftr.geometry import einstein_ratio, solve_cosmic_pair
from ftr.numeric import Quantity, bundled

modern = bundled("modern")
vintage = bundled("paper-era-1946")

# R0/N follows from G, m_h and c alone
ratio = einstein_ratio(vintage)
print("R0/N =", mp.nstr(ratio.to("cm"), 6), "cm")

# with k = 2 sigma the pair (N, R0) is fixed
frame = solve_cosmic_pair(ratio, Quantity.of("1.9e-13", "cm"))
print("N    =", mp.nstr(frame.N, 6))
print("R0   =", mp.nstr(frame.R0.to("cm"), 6), "cm")
print("sigma=", mp.nstr(frame.sigma.to("cm"), 6), "cm")

# sigma from the hydrogen mass, both constant sets
for cs in (vintage, modern):
    print(cs.provenance, "sigma from M:", mp.nstr(sigma_from_M(cs["m_h"], cs).to("cm"), 6), "cm")

# every derived row, with its verdict against the quoted value
for row in run_chain(modern):
    print(f"{row.name:28s} {mp.nstr(row.value, 6):>14s} {row.unit:16s} {row.verdict()}")
