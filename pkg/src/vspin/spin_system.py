"""Static spin-3/2 system: Hamiltonian, labeled eigensystem, transitions.

A nucleus with spin I = 3/2 sits in a constant magnetic field (Zeeman
angular frequency ``omega0``) and a crystal electric-field gradient
(quadrupole angular frequency ``omegaQ``, asymmetry ``eta``).  With hbar = 1
the static Hamiltonian in angular-frequency units is

    H0 = -omega0 * Iz + (omegaQ / 3) * (3 Iz^2 - I(I+1) + eta (Ix^2 - Iy^2))

expressed in the Iz eigenbasis |chi_m>, ordered m = +3/2, +1/2, -1/2, -3/2.
The asymmetry term couples only the pairs {+3/2, -1/2} and {-3/2, +1/2}
(Delta m = +-2), so H0 splits into two 2x2 blocks and diagonalizes in closed
form.  Eigenstates are labeled 1..4 in descending energy order; all pulse
and gate machinery downstream works with these labels only.

Conventions fixed here and relied on everywhere else:

* levels are labeled by descending energy (ties break by descending <Iz>,
  and true coincidences raise :class:`~vspin.errors.DegenerateSpectrum`);
* each eigenvector's largest-magnitude component is made real positive,
  which pins the phases of all drive matrix elements.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrum, NotHermitian

__all__ = [
    "SpinParameters",
    "EigenSystem",
    "TransitionTable",
    "spin_operators",
    "build_static_hamiltonian",
    "closed_form_eigensystem",
    "diagonalize",
    "transition_table",
]

# Magnetic quantum numbers in basis order (descending m).
_MAGNETIC_NUMBERS = np.array([1.5, 0.5, -0.5, -1.5])


@dataclass(frozen=True)
class SpinParameters:
    """Physical inputs of the model.

    omega0  Zeeman angular frequency, rad/s (>= 0)
    omegaQ  quadrupole angular frequency, rad/s (> 0)
    eta     field-gradient asymmetry, dimensionless (|eta| <= 1)
    gamma   gyromagnetic ratio, rad/(s * field-unit) (> 0)
    h_rf    RF field amplitude, field-unit (>= 0); 0 means pulses are
            treated as ideal flip-angle objects with no realizability checks
    """

    omega0: float
    omegaQ: float
    eta: float
    gamma: float = 1.0
    h_rf: float = 0.0

    def __post_init__(self):
        if not abs(self.eta) <= 1.0:
            raise ValueError(f"|eta| must be <= 1, got {self.eta}")
        if not self.omegaQ > 0.0:
            raise ValueError(f"omegaQ must be > 0, got {self.omegaQ}")
        if not self.omega0 >= 0.0:
            raise ValueError(f"omega0 must be >= 0, got {self.omega0}")
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if not self.h_rf >= 0.0:
            raise ValueError(f"h_rf must be >= 0, got {self.h_rf}")

    @property
    def zeeman_ratio(self):
        """C = omega0 / omegaQ."""
        return self.omega0 / self.omegaQ


@dataclass(frozen=True)
class EigenSystem:
    """Labeled eigensystem of a 4x4 Hermitian operator.

    energies       shape (4,), rad/s, descending: energies[0] is level 1
    states         shape (4, 4) complex; column j is level j+1 in the
                   construction (|chi>) basis, phase-fixed
    mixing_angles  (alpha_plus, alpha_minus) for closed-form systems,
                   defined by tan(alpha) = sqrt(3) [B + (1 +- 2c)] / eta
                   with c = omega0 / (2 omegaQ); None for systems produced
                   by numerical diagonalization
    regime_ok      True when the four levels are well resolved (minimum
                   gap exceeds 1e-6 * scale)
    scale          reference angular frequency for relative tolerances
                   (omegaQ when built from SpinParameters)
    """

    energies: np.ndarray
    states: np.ndarray
    mixing_angles: tuple | None
    regime_ok: bool
    scale: float

    def energy(self, m):
        """Energy of level m in 1..4."""
        return float(self.energies[m - 1])

    def state(self, m):
        """Eigenvector of level m in the |chi> basis."""
        return self.states[:, m - 1].copy()

    def to_eigen(self, operator):
        """Matrix elements <psi_m| A |psi_n> of a |chi>-basis operator."""
        a = np.asarray(operator, dtype=complex)
        return self.states.conj().T @ a @ self.states

    def from_eigen(self, operator):
        """Map an eigenbasis operator back to the |chi> basis."""
        a = np.asarray(operator, dtype=complex)
        return self.states @ a @ self.states.conj().T


def spin_operators():
    """Return (Ix, Iy, Iz) for I = 3/2 in the |chi> basis.

    Iz = diag(3/2, 1/2, -1/2, -3/2); Ix, Iy from the ladder operators
    I+|m> = sqrt(I(I+1) - m(m+1)) |m+1>.
    """
    m = _MAGNETIC_NUMBERS
    iz = np.diag(m).astype(complex)
    iplus = np.zeros((4, 4))
    for col in range(1, 4):
        iplus[col - 1, col] = np.sqrt(1.5 * 2.5 - m[col] * (m[col] + 1.0))
    ix = (iplus + iplus.T) / 2.0 + 0j
    iy = (iplus - iplus.T) / 2.0j
    return ix, iy, iz


def build_static_hamiltonian(p: SpinParameters) -> np.ndarray:
    """Static Hamiltonian -omega0 Iz + (omegaQ/3)[3 Iz^2 - 15/4 + eta (Ix^2 - Iy^2)].

    Returned in the |chi> basis, units rad/s (hbar = 1).  Only elements with
    Delta m in {0, +-2} are nonzero; the trace vanishes identically.
    """
    ix, iy, iz = spin_operators()
    quad = 3.0 * iz @ iz - (15.0 / 4.0) * np.eye(4) + p.eta * (ix @ ix - iy @ iy)
    return -p.omega0 * iz + (p.omegaQ / 3.0) * quad


def _fix_phases(states):
    """Make each column's largest-magnitude entry real positive (in place)."""
    for j in range(states.shape[1]):
        k = int(np.argmax(np.abs(states[:, j])))
        pivot = states[k, j]
        mag = abs(pivot)
        if mag > 0.0:
            states[:, j] *= pivot.conjugate() / mag
            # kill the residual imaginary dust on the pivot
            states[k, j] = states[k, j].real
    return states


def _label_order(energies, states):
    """Sort key: descending energy, then descending <Iz>."""
    _, _, iz = spin_operators()
    iz_exp = np.real(np.einsum("ij,ij->j", states.conj(), iz @ states))
    return sorted(range(len(energies)), key=lambda j: (-energies[j], -iz_exp[j]))


def _assemble(energies, states, mixing, scale, degeneracy_tol):
    order = _label_order(energies, states)
    energies = np.asarray([energies[j] for j in order], dtype=float)
    states = _fix_phases(np.stack([states[:, j] for j in order], axis=1).astype(complex))
    gaps = -np.diff(energies)
    if np.min(gaps) < degeneracy_tol * scale:
        raise DegenerateSpectrum(
            f"energy gap {np.min(gaps):.3e} below {degeneracy_tol:.1e} * scale;"
            " level labels are undefined",
            energies=energies,
        )
    regime_ok = bool(np.min(gaps) > 1e-6 * scale)
    return EigenSystem(
        energies=energies,
        states=states,
        mixing_angles=mixing,
        regime_ok=regime_ok,
        scale=float(scale),
    )


def closed_form_eigensystem(p: SpinParameters, degeneracy_tol=1e-9) -> EigenSystem:
    """Diagonalize the static Hamiltonian block-analytically.

    With c = omega0 / (2 omegaQ) and B+- = sqrt((1 +- 2c)^2 + eta^2/3) the
    block eigenvalues are omegaQ * (+-c +- B); the mixing angle of each 2x2
    block follows from atan2(eta/sqrt(3), B + (1 +- 2c)), which stays
    well-conditioned at eta = 0 where the blocks are already diagonal.

    Raises DegenerateSpectrum when two levels coincide within
    ``degeneracy_tol * omegaQ`` (for example omega0 = 0, eta = 0).
    """
    c = p.omega0 / (2.0 * p.omegaQ)
    eta_r = p.eta / np.sqrt(3.0)
    b_plus = np.hypot(1.0 + 2.0 * c, eta_r)
    b_minus = np.hypot(1.0 - 2.0 * c, eta_r)

    # Block {-3/2, +1/2}: basis indices (3, 1); half-difference 1 + 2c.
    theta_p = np.arctan2(eta_r, b_plus + (1.0 + 2.0 * c))
    # Block {+3/2, -1/2}: basis indices (0, 2); half-difference 1 - 2c.
    theta_m = np.arctan2(eta_r, b_minus + (1.0 - 2.0 * c))

    energies = p.omegaQ * np.array(
        [c + b_plus, c - b_plus, -c + b_minus, -c - b_minus]
    )
    states = np.zeros((4, 4))
    # upper/lower eigenvector of block {-3/2, +1/2}
    states[3, 0], states[1, 0] = np.cos(theta_p), np.sin(theta_p)
    states[3, 1], states[1, 1] = -np.sin(theta_p), np.cos(theta_p)
    # upper/lower eigenvector of block {+3/2, -1/2}
    states[0, 2], states[2, 2] = np.cos(theta_m), np.sin(theta_m)
    states[0, 3], states[2, 3] = -np.sin(theta_m), np.cos(theta_m)

    alpha = (np.pi / 2.0 - theta_p, np.pi / 2.0 - theta_m)
    return _assemble(energies, states.astype(complex), alpha, p.omegaQ, degeneracy_tol)


def diagonalize(hamiltonian, scale=None, degeneracy_tol=1e-9) -> EigenSystem:
    """Numerically diagonalize a Hermitian 4x4 operator.

    Applies the same label and phase conventions as the closed form, so the
    two routes can be compared state by state.  ``scale`` defaults to the
    largest absolute eigenvalue.
    """
    h = np.asarray(hamiltonian, dtype=complex)
    if h.shape != (4, 4):
        raise ValueError(f"expected a 4x4 operator, got shape {h.shape}")
    hnorm = max(np.max(np.abs(h)), np.finfo(float).tiny)
    if np.max(np.abs(h - h.conj().T)) > 1e-12 * hnorm:
        raise NotHermitian(
            f"max |H - H^dagger| = {np.max(np.abs(h - h.conj().T)):.3e} "
            f"exceeds 1e-12 * {hnorm:.3e}"
        )
    energies, states = np.linalg.eigh((h + h.conj().T) / 2.0)
    if scale is None:
        scale = max(np.max(np.abs(energies)), np.finfo(float).tiny)
    return _assemble(energies, states, None, scale, degeneracy_tol)


@dataclass(frozen=True)
class TransitionTable:
    """All level pairs with their transition angular frequencies.

    entries     six tuples (m, n, omega_mn) with m < n and omega_mn > 0
    collisions  pairs of transitions closer than ``margin``, as tuples
                ((m, n), (p, q), |delta omega|)
    margin      the separation threshold used, rad/s
    """

    entries: tuple
    collisions: tuple
    margin: float

    def frequency(self, m, n):
        """Omega_mn for a level pair (order-insensitive)."""
        a, b = (m, n) if m < n else (n, m)
        for mm, nn, omega in self.entries:
            if (mm, nn) == (a, b):
                return omega
        raise KeyError(f"no transition ({m}, {n})")


def transition_table(e: EigenSystem, selectivity_margin=None) -> TransitionTable:
    """Enumerate the six transition frequencies Omega_mn = eps_m - eps_n.

    Flags any two transitions whose frequencies differ by less than
    ``selectivity_margin`` (default 1e-6 * e.scale): a selective pulse
    cannot tell such lines apart.
    """
    if selectivity_margin is None:
        selectivity_margin = 1e-6 * e.scale
    entries = []
    for m in range(1, 5):
        for n in range(m + 1, 5):
            entries.append((m, n, float(e.energies[m - 1] - e.energies[n - 1])))
    collisions = []
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            delta = abs(entries[i][2] - entries[j][2])
            if delta < selectivity_margin:
                collisions.append(
                    (entries[i][:2], entries[j][:2], float(delta))
                )
    return TransitionTable(
        entries=tuple(entries),
        collisions=tuple(collisions),
        margin=float(selectivity_margin),
    )
