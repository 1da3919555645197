"""Unit conventions and conversion constants, centralized.

Energies are in meV, electric fields in V/m, lengths in Angstrom, times in
seconds.  The electron charge never appears on its own: it enters only
through dipole energies e * r * E, absorbed into MEV_PER_ANGSTROM_V_PER_M.
"""

# e * (1 Angstrom) * (1 V/m), expressed in meV
MEV_PER_ANGSTROM_V_PER_M = 1e-7

# reduced Planck constant, meV * s
HBAR_MEV_S = 6.582119569e-13

# Planck constant, meV * s
PLANCK_MEV_S = 4.135667696e-12
