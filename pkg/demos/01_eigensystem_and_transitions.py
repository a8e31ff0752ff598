"""Four levels of a spin-3/2: Hamiltonian, labeled eigensystem, transitions.

A spin-3/2 nucleus in a crystal electric-field gradient plus a weak
magnetic field has four non-degenerate levels.  This script builds the
static Hamiltonian, diagonalizes it both in closed form and numerically,
and lists the six transition frequencies a resonant pulse can address.
"""

import numpy as np

from vspin import (
    SpinParameters,
    build_static_hamiltonian,
    closed_form_eigensystem,
    diagonalize,
    spin_operators,
    transition_table,
)

np.set_printoptions(precision=6, suppress=True)

print("=== Spin operators (I = 3/2) ===")
ix, iy, iz = spin_operators()
print("Iz diagonal:", np.real(np.diag(iz)))
print("Casimir Ix^2+Iy^2+Iz^2 = I(I+1) = 15/4:",
      np.allclose(ix @ ix + iy @ iy + iz @ iz, 3.75 * np.eye(4)))

params = SpinParameters(omega0=0.1, omegaQ=1.0, eta=0.5)
print("\n=== Static Hamiltonian (omega0=0.1, omegaQ=1, eta=0.5) ===")
h = build_static_hamiltonian(params)
print(np.real(h))
print("The eta term couples only the (+3/2, -1/2) and (-3/2, +1/2) pairs,")
print("so the matrix splits into two 2x2 blocks around the diagonal.")

print("\n=== Labeled eigensystem ===")
e = closed_form_eigensystem(params)
for m in range(1, 5):
    print(f"level {m}: energy {e.energy(m):+.6f} rad/s")
print("labels descend in energy; regime_ok =", e.regime_ok)
print("mixing angles (alpha_plus, alpha_minus):",
      tuple(round(a, 6) for a in e.mixing_angles))

print("\nclosed form vs numerical diagonalization:")
num = diagonalize(build_static_hamiltonian(params), scale=params.omegaQ)
print("  max energy difference:", np.max(np.abs(e.energies - num.energies)))
overlaps = np.abs(np.sum(e.states.conj() * num.states, axis=0))
print("  state overlaps:", overlaps)

print("\n=== Transition table ===")
table = transition_table(e)
for m, n, omega in table.entries:
    print(f"Omega({m},{n}) = {omega:.6f} rad/s")
print("collisions:", table.collisions or "none")

print("\nA selectivity collision appears when two lines coincide, e.g. at")
print("omega0/omegaQ = (1 + eta^2/3)/2 the (1,2) and (2,4) lines overlap:")
eta = 0.6
clash = SpinParameters(omega0=(1 + eta**2 / 3) / 2, omegaQ=1.0, eta=eta)
clash_table = transition_table(closed_form_eigensystem(clash))
for pair_a, pair_b, delta in clash_table.collisions:
    print(f"  collision {pair_a} vs {pair_b}, |delta| = {delta:.2e}")
