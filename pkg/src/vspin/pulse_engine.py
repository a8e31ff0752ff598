"""Rotating-wave propagators for transition-selective RF pulses.

A resonant pulse on the level pair (m, n), m < n (so eps_m > eps_n), with
phase phi and flip angle phi_y acts as identity on the two untouched levels
and rotates the driven two-level subspace:

    V_Y(Omega_mn; phi, phi_y) = P_kk + P_ll
                                + (P_mm + P_nn) cos(phi_y / 2)
                                + (P_nm e^{i phi} - P_mn e^{-i phi}) sin(phi_y / 2)

The X-axis version is the same operator with phi replaced by phi - pi/2.
The sin-term orientation is pinned so that (Omega_12, Y, phi = 0,
phi_y = pi) produces P_33 + P_44 + P_21 - P_12, the controlled-NOT form.

Two views of a pulse coexist:

* compiler view - the pulse is an ideal flip-angle object; any level pair
  may be addressed and no realizability checks run.  This is the view in
  which the gate algebra lives (params absent, or params.h_rf == 0).
* physics view - the pulse must actually be drivable: its transition needs
  a nonzero matrix element of the axis operator, and its Rabi rate
  gamma * h_rf * |element| must be small against the distance to every
  other transition frequency (selectivity).  Enabled by passing
  SpinParameters with h_rf > 0.

The split is forced by the level structure itself: the asymmetry term mixes
two fixed pairs of |chi> states, so in every parameter regime exactly two
of the six level pairs have identically vanishing Ix/Iy elements, yet their
ideal propagators are still perfectly well-defined matrices.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidState,
    SelectivityViolation,
    SemanticError,
    SharedLevel,
    ZeroMatrixElement,
)
from .operator_algebra import free_evolution
from .spin_system import EigenSystem, SpinParameters, spin_operators, transition_table

__all__ = [
    "PulseSpec",
    "PulseStep",
    "TwoFrequencyStep",
    "FreeEvolutionStep",
    "PulseProgram",
    "transition_matrix_element",
    "flip_angle",
    "single_frequency_propagator",
    "two_frequency_propagator",
    "program_propagator",
    "apply_pulse_program",
]

DRIVABLE_THRESHOLD = 1e-14
DEFAULT_SELECTIVITY_FACTOR = 1e3


def _normalize_transition(transition):
    m, n = (int(transition[0]), int(transition[1]))
    if m == n or not (1 <= m <= 4 and 1 <= n <= 4):
        raise ValueError(f"transition must be a pair of distinct levels in 1..4, got {transition}")
    return (m, n) if m < n else (n, m)


def _normalize_axis(axis):
    key = str(axis).upper()
    if key not in ("X", "Y"):
        raise ValueError(f"axis must be X or Y, got {axis!r}")
    return key


@dataclass(frozen=True)
class PulseSpec:
    """One transition-selective pulse.

    transition  level pair (m, n), stored with m < n
    axis        "X" or "Y" (RF field direction)
    phase       phi, radians
    flip        phi_y >= 0, radians, never wrapped (the overall sign flip
                at 2 pi is physical spinor behavior)
    amplitude   optional RF amplitude h_rf (field-unit) of a realization
    duration    optional pulse length (s) of a realization
    """

    transition: tuple
    axis: str = "Y"
    phase: float = 0.0
    flip: float = np.pi
    amplitude: float | None = None
    duration: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "transition", _normalize_transition(self.transition))
        object.__setattr__(self, "axis", _normalize_axis(self.axis))
        if not np.isfinite(self.phase):
            raise ValueError(f"phase must be finite, got {self.phase}")
        if not (np.isfinite(self.flip) and self.flip >= 0.0):
            raise ValueError(f"flip must be finite and >= 0, got {self.flip}")

    @classmethod
    def from_duration(cls, params, e, transition, axis="Y", phase=0.0, duration=0.0):
        """Build a pulse from the physics view (amplitude + duration)."""
        phi_y = flip_angle(params, e, transition, axis, duration)
        return cls(
            transition=transition,
            axis=axis,
            phase=phase,
            flip=phi_y,
            amplitude=params.h_rf,
            duration=float(duration),
        )


@dataclass(frozen=True)
class PulseStep:
    pulse: PulseSpec


@dataclass(frozen=True)
class TwoFrequencyStep:
    """Two simultaneous pulses on level-disjoint transitions."""

    a: PulseSpec
    b: PulseSpec

    def __post_init__(self):
        if set(self.a.transition) & set(self.b.transition):
            raise SharedLevel(
                f"simultaneous pulses share levels: {self.a.transition} and {self.b.transition}"
            )
        if self.a.axis != self.b.axis or self.a.phase != self.b.phase:
            raise ValueError("simultaneous pulses must share axis and phase")


@dataclass(frozen=True)
class FreeEvolutionStep:
    duration: float

    def __post_init__(self):
        if not np.isfinite(self.duration):
            raise ValueError(f"duration must be finite, got {self.duration}")


@dataclass(frozen=True)
class PulseProgram:
    """Ordered pulse steps with their physical context."""

    params: SpinParameters
    steps: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        for step in self.steps:
            if not isinstance(step, (PulseStep, TwoFrequencyStep, FreeEvolutionStep)):
                raise TypeError(f"unsupported program step {step!r}")


def transition_matrix_element(e: EigenSystem, transition, axis="Y"):
    """<psi_m| I_axis |psi_n> for the (lower-label, higher-label) pair."""
    m, n = _normalize_transition(transition)
    ix, iy, _ = spin_operators()
    op = {"X": ix, "Y": iy}[_normalize_axis(axis)]
    return complex(e.to_eigen(op)[m - 1, n - 1])


def flip_angle(p: SpinParameters, e: EigenSystem, transition, axis, duration):
    """phi_y = 2 * duration * gamma * h_rf * |<psi_n| I_axis |psi_m>|.

    Linear in duration and in h_rf.  Raises ZeroMatrixElement when the
    transition is forbidden (|element| < 1e-14): no duration can drive it.
    """
    if duration < 0.0:
        raise ValueError(f"duration must be >= 0, got {duration}")
    element = transition_matrix_element(e, transition, axis)
    if abs(element) < DRIVABLE_THRESHOLD:
        raise ZeroMatrixElement(
            f"transition {tuple(transition)} has |<I_{axis}>| = {abs(element):.2e}; undrivable"
        )
    return 2.0 * float(duration) * p.gamma * p.h_rf * abs(element)


def _check_physics(e, transition, axis, params, selectivity_factor):
    """Drivability and selectivity preconditions of a realized pulse."""
    m, n = transition
    element = transition_matrix_element(e, transition, axis)
    if abs(element) < DRIVABLE_THRESHOLD:
        raise ZeroMatrixElement(
            f"transition ({m}, {n}) has |<I_{axis}>| = {abs(element):.2e}; undrivable"
        )
    rabi = params.gamma * params.h_rf * abs(element)
    table = transition_table(e)
    omega = table.frequency(m, n)
    for mm, nn, other in table.entries:
        if (mm, nn) == (m, n):
            continue
        if abs(omega - other) <= selectivity_factor * rabi:
            raise SelectivityViolation(
                f"Omega({m},{n}) = {omega:.6g} is within {selectivity_factor:g} Rabi rates"
                f" ({selectivity_factor * rabi:.3g}) of Omega({mm},{nn}) = {other:.6g}"
            )


def single_frequency_propagator(
    e: EigenSystem,
    transition,
    axis="Y",
    phase=0.0,
    flip=np.pi,
    params: SpinParameters | None = None,
    selectivity_factor=DEFAULT_SELECTIVITY_FACTOR,
) -> np.ndarray:
    """Effective propagator of one selective pulse, in the eigenbasis.

    With params given and params.h_rf > 0, the physics-view checks run
    (ZeroMatrixElement, SelectivityViolation); otherwise the pulse is an
    ideal compiler-view object.
    """
    m, n = _normalize_transition(transition)
    axis = _normalize_axis(axis)
    if params is not None and params.h_rf > 0.0:
        _check_physics(e, (m, n), axis, params, selectivity_factor)
    phi = float(phase) if axis == "Y" else float(phase) - np.pi / 2.0
    half = float(flip) / 2.0
    v = np.eye(4, dtype=complex)
    v[m - 1, m - 1] = v[n - 1, n - 1] = np.cos(half)
    v[n - 1, m - 1] = np.exp(1j * phi) * np.sin(half)
    v[m - 1, n - 1] = -np.exp(-1j * phi) * np.sin(half)
    return v


def two_frequency_propagator(
    e: EigenSystem,
    pair_a,
    pair_b,
    axis="Y",
    phase=0.0,
    flip_a=np.pi,
    flip_b=np.pi,
    params: SpinParameters | None = None,
    selectivity_factor=DEFAULT_SELECTIVITY_FACTOR,
) -> np.ndarray:
    """Simultaneous excitation of two level-disjoint transitions.

    The factors commute, so this equals the product of the two
    single-frequency propagators in either order.
    """
    a = _normalize_transition(pair_a)
    b = _normalize_transition(pair_b)
    if set(a) & set(b):
        raise SharedLevel(f"simultaneous pulses share levels: {a} and {b}")
    va = single_frequency_propagator(e, a, axis, phase, flip_a, params, selectivity_factor)
    vb = single_frequency_propagator(e, b, axis, phase, flip_b, params, selectivity_factor)
    return va @ vb


def _pulse_duration(pulse: PulseSpec, params: SpinParameters, e: EigenSystem):
    """Wall-clock length of a pulse, from its realization or from h_rf."""
    if pulse.duration is not None:
        return float(pulse.duration)
    if params.h_rf <= 0.0:
        raise SemanticError(
            "free-evolution tracking needs pulse durations; give realizations"
            " or set h_rf > 0 so durations can be derived from flip angles"
        )
    element = transition_matrix_element(e, pulse.transition, pulse.axis)
    if abs(element) < DRIVABLE_THRESHOLD:
        raise ZeroMatrixElement(
            f"transition {pulse.transition} is undrivable; no duration exists"
        )
    return pulse.flip / (2.0 * params.gamma * params.h_rf * abs(element))


def _step_propagator(step, e, params, include_free_evolution, selectivity_factor):
    if isinstance(step, FreeEvolutionStep):
        return free_evolution(e, step.duration)
    if isinstance(step, PulseStep):
        p = step.pulse
        v = single_frequency_propagator(
            e, p.transition, p.axis, p.phase, p.flip, params, selectivity_factor
        )
        if include_free_evolution:
            v = free_evolution(e, _pulse_duration(p, params, e)) @ v
        return v
    if isinstance(step, TwoFrequencyStep):
        v = two_frequency_propagator(
            e,
            step.a.transition,
            step.b.transition,
            step.a.axis,
            step.a.phase,
            step.a.flip,
            step.b.flip,
            params,
            selectivity_factor,
        )
        if include_free_evolution:
            ta = _pulse_duration(step.a, params, e)
            tb = _pulse_duration(step.b, params, e)
            if abs(ta - tb) > 1e-9 * max(ta, tb, 1e-300):
                raise SemanticError(
                    f"simultaneous pulses imply different durations ({ta:.6g} vs {tb:.6g})"
                )
            v = free_evolution(e, ta) @ v
        return v
    raise TypeError(f"unsupported program step {step!r}")


def program_propagator(
    prog: PulseProgram,
    e: EigenSystem | None = None,
    include_free_evolution=False,
    selectivity_factor=DEFAULT_SELECTIVITY_FACTOR,
) -> np.ndarray:
    """Ordered product of all step propagators (later steps on the left)."""
    if e is None:
        from .spin_system import closed_form_eigensystem

        e = closed_form_eigensystem(prog.params)
    total = np.eye(4, dtype=complex)
    for step in prog.steps:
        total = _step_propagator(
            step, e, prog.params, include_free_evolution, selectivity_factor
        ) @ total
    return total


def _check_density_matrix(rho):
    r = np.asarray(rho, dtype=complex)
    if r.shape != (4, 4):
        raise InvalidState(f"density matrix must be 4x4, got shape {r.shape}")
    if np.max(np.abs(r - r.conj().T)) > 1e-12:
        raise InvalidState("density matrix is not Hermitian to 1e-12")
    if abs(np.trace(r).real - 1.0) > 1e-12 or abs(np.trace(r).imag) > 1e-12:
        raise InvalidState(f"density matrix trace is {np.trace(r):.15g}, expected 1")
    eigs = np.linalg.eigvalsh((r + r.conj().T) / 2.0)
    if np.min(eigs) < -1e-12:
        raise InvalidState(f"density matrix has eigenvalue {np.min(eigs):.3e} < -1e-12")
    return r


def apply_pulse_program(
    prog: PulseProgram,
    rho0,
    include_free_evolution=False,
    e: EigenSystem | None = None,
    selectivity_factor=DEFAULT_SELECTIVITY_FACTOR,
) -> np.ndarray:
    """rho_out = V rho0 V^dagger with V the full program propagator.

    rho0 is an eigenbasis density matrix (Hermitian, unit trace, PSD to
    1e-12).  Trace and purity are preserved because V is unitary.
    """
    rho = _check_density_matrix(rho0)
    v = program_propagator(prog, e, include_free_evolution, selectivity_factor)
    return v @ rho @ v.conj().T
