"""The holonomy is the adiabatic limit of real time evolution.

Drive the field around the octant triangle in total time T, propagate both
basepoint states of the lower doublet with the time-dependent Schrodinger
equation, strip the scalar dynamical phase, and compare the resulting 2x2
block with the Wilson loop.  As T grows the fidelity approaches 1 and the
band leakage dies away -- the geometric transport is all that remains.
"""

import numpy as np

from holostark import Drive, adiabatic_fidelity, make_spherical_triangle, material_lookup

ge_iso = material_lookup("Ge", "B").spherical()
octant = make_spherical_triangle(np.pi / 2, np.pi / 2, 1e6)

print("Octant triangle, quadratic isotropic model, lower (minus) doublet")
print(f"{'T (s)':>10} {'1 - fidelity':>14} {'band leakage':>14}")
for total_time, steps in ((5e-12, 20000), (5e-11, 20000), (5e-10, 30000),
                          (5e-9, 60000)):
    drive = Drive(path=octant, total_time=total_time, time_steps=steps)
    out = adiabatic_fidelity(drive, "quadratic", ge_iso, band="minus",
                             wl_steps=20000)
    print(f"{total_time:>10.0e} {1 - out.fidelity:>14.3e} {out.band_leakage:>14.3e}")

print("\nEvery decade of T buys roughly two decades of fidelity: the")
print("transport really is geometric, with O(1/T) dynamical corrections.")
