"""Pseudo-pure input states by temporal averaging.

At laboratory temperatures the thermal state is almost maximally mixed.
Averaging three experiments whose inputs differ by population-permuting
pulse pairs produces a state of the form (alpha 1 + beta P44)/4: the
identity part is invisible to every unitary, so the dynamics is that of
the pure ground level |00>.
"""

import numpy as np

from vspin import (
    SpinParameters,
    ThermalSpec,
    averaging_propagators,
    closed_form_eigensystem,
    compile_cnot,
    high_temperature_coefficients,
    high_temperature_state,
    projector,
    pseudo_pure_reference,
    temporal_average,
    thermal_state,
)

np.set_printoptions(precision=8, suppress=True)

params = SpinParameters(omega0=0.1, omegaQ=1.0, eta=0.5)
e = closed_form_eigensystem(params)
spec = ThermalSpec(beta_scale=1e-4)

print("=== Thermal equilibrium (beta * hbar * omegaQ = 1e-4) ===")
rho_eq = thermal_state(e, spec)
print("populations:", np.real(np.diag(rho_eq)))
print("the ground level (label 4, lowest energy) is the most populated")

lam = high_temperature_coefficients(e, spec)
print("\nfirst-order coefficients lambda_m:", lam)
print("linearization error vs full exponential:",
      np.max(np.abs(rho_eq - high_temperature_state(e, spec))))

print("\n=== The permutation pulse pairs ===")
v1, v2 = averaging_propagators(e)
print("V1 = V(O12,pi) V(O23,pi) cycles populations 1 -> 2 -> 3 -> 1")
print("V2 = V(O23,pi) V(O12,pi) cycles them the other way; both fix level 4")
demo = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
print("populations after V1:", np.real(np.diag(v1 @ demo @ v1.conj().T)))
print("populations after V2:", np.real(np.diag(v2 @ demo @ v2.conj().T)))

print("\n=== Temporal average ===")
rho_pp, alpha, beta = temporal_average(high_temperature_state(e, spec), e)
print("averaged populations:", np.real(np.diag(rho_pp)))
print(f"alpha = {alpha:.12f} (expected 1 + mean(lambda_1..3))")
print(f"beta  = {beta:.3e}    (expected lambda_4 - mean(lambda_1..3))")
print("matches (alpha 1 + beta P44)/4:",
      np.max(np.abs(rho_pp - pseudo_pure_reference(alpha, beta))) < 1e-12)

print("\n=== Only the P44 part responds to pulses ===")
_, cnot = compile_cnot(e, params, "R")
evolved = cnot @ rho_pp @ cnot.conj().T
identity_part = (alpha / 4) * np.eye(4)
p44_part = (beta / 4) * (cnot @ projector(4, 4).matrix @ cnot.conj().T)
print("V rho V+ = (alpha/4) 1 + (beta/4) V P44 V+:",
      np.max(np.abs(evolved - identity_part - p44_part)) < 1e-12)
print("|00> is a CNOT fixed point, so the pseudo-pure state is unchanged:",
      np.max(np.abs(evolved - rho_pp)) < 1e-14)
