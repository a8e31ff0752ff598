"""Projective-operator algebra in the eigenbasis.

P_mn = |psi_m><psi_n| is the elementary matrix with a single 1 at row m,
column n once everything is written in the eigenbasis, and products obey
P_kl P_mn = delta_lm P_kn.  All pulse-level algebra downstream is carried
out in this representation; transformation to and from the |chi> basis
happens only at construction and display.
"""

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange
from .spin_system import EigenSystem

__all__ = [
    "Projector",
    "projector",
    "projector_product",
    "OperatorExpansion",
    "expand_in_eigenbasis",
    "free_evolution",
    "SelectionRules",
    "selection_rules",
]


def _check_level(*levels):
    for m in levels:
        if not (isinstance(m, (int, np.integer)) and 1 <= m <= 4):
            raise IndexOutOfRange(f"level index must be in 1..4, got {m!r}")


@dataclass(frozen=True)
class Projector:
    """|psi_m><psi_n| as an eigenbasis elementary matrix."""

    m: int
    n: int

    def __post_init__(self):
        _check_level(self.m, self.n)

    @property
    def matrix(self):
        p = np.zeros((4, 4), dtype=complex)
        p[self.m - 1, self.n - 1] = 1.0
        return p

    @property
    def adjoint(self):
        return Projector(self.n, self.m)


def projector(m, n) -> Projector:
    """P_mn with m, n in 1..4."""
    return Projector(int(m), int(n))


def projector_product(a: Projector, b: Projector) -> np.ndarray:
    """P_kl P_mn = delta_lm P_kn (zero matrix when l != m)."""
    if a.n != b.m:
        return np.zeros((4, 4), dtype=complex)
    return Projector(a.m, b.n).matrix


@dataclass(frozen=True)
class OperatorExpansion:
    """Coefficients c_mn = <psi_m| A |psi_n> of A = sum c_mn P_mn."""

    coefficients: np.ndarray

    def matrix_eigen(self):
        """sum c_mn P_mn; identical to the coefficient array itself."""
        return self.coefficients.copy()

    def matrix_lab(self, e: EigenSystem):
        """The same operator back in the |chi> basis."""
        return e.from_eigen(self.coefficients)


def expand_in_eigenbasis(operator, e: EigenSystem) -> OperatorExpansion:
    """Expand a |chi>-basis operator over the projectors P_mn."""
    return OperatorExpansion(coefficients=e.to_eigen(operator))


def free_evolution(e: EigenSystem, t) -> np.ndarray:
    """D(t) = sum_m P_mm exp(-i eps_m t), diagonal in the eigenbasis."""
    if not np.isfinite(t):
        raise ValueError(f"duration must be finite, got {t}")
    return np.diag(np.exp(-1j * e.energies * float(t)))


@dataclass(frozen=True)
class SelectionRules:
    """Eigenbasis matrix elements of a spin component with a nonzero mask."""

    elements: np.ndarray
    mask: np.ndarray
    threshold: float

    def allowed(self, m, n):
        _check_level(m, n)
        return bool(self.mask[m - 1, n - 1])


def selection_rules(e: EigenSystem, axis, threshold=1e-12) -> SelectionRules:
    """Which level pairs a given spin component connects.

    ``axis`` is "X", "Y" or "Z".  An element counts as nonzero when its
    magnitude exceeds ``threshold`` times the largest element.
    """
    from .spin_system import spin_operators

    ops = dict(zip("XYZ", spin_operators()))
    key = str(axis).upper()
    if key not in ops:
        raise ValueError(f"axis must be X, Y or Z, got {axis!r}")
    elements = e.to_eigen(ops[key])
    ref = max(np.max(np.abs(elements)), np.finfo(float).tiny)
    return SelectionRules(
        elements=elements,
        mask=np.abs(elements) > threshold * ref,
        threshold=float(threshold),
    )
