"""Two virtual qubits in one particle: rotations and CNOT from pulses.

The four levels map onto two-qubit bit strings (level 1 = |11> down to
level 4 = |00>).  Single-qubit rotations compile to one simultaneous
two-frequency pulse; a CNOT is a single pi pulse.  Every compiled unitary
is checked against the matrix exponential of its generator.
"""

import numpy as np

from vspin import (
    SpinParameters,
    closed_form_eigensystem,
    compile_cnot,
    compile_single_qubit_rotation,
    expm4,
    format_pulse_program,
    format_truth_table,
    level_to_bits,
    truth_table,
    virtual_spin_components,
)

np.set_printoptions(precision=4, suppress=True)

params = SpinParameters(omega0=0.1, omegaQ=1.0, eta=0.5)
e = closed_form_eigensystem(params)

print("=== Level <-> bit-string map (first bit = R, second = S) ===")
for m in range(1, 5):
    print(f"level {m} <-> |{level_to_bits(m)}>")

print("\n=== Virtual spin components ===")
comps = virtual_spin_components()
print("Rz embedded:", np.real(np.diag(comps["Rz"])))
print("R and S components commute:",
      np.max(np.abs(comps["Rx"] @ comps["Sy"] - comps["Sy"] @ comps["Rx"])) == 0.0)

print("\n=== Rotating spin S by pi/2 around Y ===")
prog, u = compile_single_qubit_rotation(e, params, "S", np.pi / 2, "Y")
print("pulse program:")
print(format_pulse_program(prog), end="")
ref = expm4(-1j * (np.pi / 2) * comps["Sy"])
print("compiled unitary equals exp(-i phi Sy):", np.max(np.abs(u - ref)) < 1e-12)

print("\n=== Rotating spin R leaves S alone ===")
_, ur = compile_single_qubit_rotation(e, params, "R", 1.2, "X")
worst = max(np.max(np.abs(ur @ comps["S" + a] - comps["S" + a] @ ur)) for a in "xyz")
print("max commutator with S components:", worst)

print("\n=== CNOT with R controlling S: one pi pulse on (1,2) ===")
prog, u = compile_cnot(e, params, "R")
print(format_pulse_program(prog), end="")
print(format_truth_table(truth_table(u)))
print("(the -1 is the two-level spinor sign; it is physical and kept)")

print("\n=== CNOT with S controlling R: one pi pulse on (1,3) ===")
prog, u = compile_cnot(e, params, "S")
print(format_pulse_program(prog), end="")
print(format_truth_table(truth_table(u)))

print("\n=== Composing gates ===")
_, flip_r = compile_single_qubit_rotation(e, params, "R", np.pi, "Y")
_, cnot_r = compile_cnot(e, params, "R")
circuit = cnot_r @ flip_r
print("R-flip then CNOT(R) acting on |00>:")
ket = np.zeros(4, dtype=complex)
ket[3] = 1.0  # level 4 = |00>
out = circuit @ ket
amplitudes = {level_to_bits(m): out[m - 1] for m in range(1, 5)}
for bits, amp in amplitudes.items():
    if abs(amp) > 1e-12:
        print(f"  |{bits}> amplitude {amp:+.4f}")
