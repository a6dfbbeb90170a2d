"""Solve small max-cut instances and check them against the exact oracle.

The solver integrates the distributed second-harmonic phase dynamics from
random initial phases with a little noise, binarizes the final phases, and
keeps the best cut over seeded attempts.
"""
import numpy as np

import oimsim as oim

dyn = oim.DynamicsConfig(noise_amplitude=0.01)
icfg = oim.IntegratorConfig(dt=0.01, t_end=20.0, record_every=10)

print("frustrated unit triangle")
triangle = oim.MaxCutInstance(n=3, edges=((0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)))
result = oim.solve(triangle, attempts=20, dyn=dyn, icfg=icfg)
_, ground, degeneracy = oim.brute_force_ground_state(oim.ising_from_maxcut(triangle))
optimum = (triangle.total_weight - ground) / 2
print(f"  solver cut {result.cut:g} vs exact optimum {optimum:g} "
      f"(ground energy {ground:g}, {degeneracy} ground states)")
print(f"  spins {result.spins.spins.astype(int)}, lock fraction {result.lock_fraction:.2f}")

print()
print("seeded random instances, best of 20 attempts vs brute force")
print(f"  {'n':>3} {'density':>8} {'optimum':>8} {'solver':>7} {'match':>6}")
for i in range(8):
    n = 4 + i % 5
    g = oim.random_instance(n, density=0.8, weight_set="pm1", seed=100 + i)
    _, ground, _ = oim.brute_force_ground_state(oim.ising_from_maxcut(g))
    optimum = (g.total_weight - ground) / 2
    result = oim.solve(g, attempts=20, dyn=dyn, icfg=icfg)
    match = "yes" if abs(result.cut - optimum) < 1e-9 else "NO"
    print(f"  {n:>3} {0.8:>8.1f} {optimum:>8g} {result.cut:>7g} {match:>6}")
