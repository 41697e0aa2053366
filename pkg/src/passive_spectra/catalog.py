"""Reference systems used by the tests, the README and the bundled data files."""

from __future__ import annotations

import numpy as np

from .model import PoleResidue, RationalFunction, Realization

__all__ = [
    "rc_ladder_z",
    "rc_ladder_y",
    "rc_ladder_pole_residue",
    "complex_sz_rational",
    "complex_sz_realization",
    "scalar_are",
    "decoupled_pair",
    "multi_agent_path",
]

SQRT2 = np.sqrt(2.0)


def rc_ladder_pole_residue() -> PoleResidue:
    """``1 + 2/(s+1) + 1/(s+3) = (s+2)(s+5)/((s+1)(s+3))``."""
    return PoleResidue(1.0, (-3.0, -1.0), (1.0, 2.0))


def rc_ladder_z() -> Realization:
    """Symmetric impedance realization, ``B = C^T``."""
    return Realization(np.diag([-1.0, -3.0]), [[SQRT2], [1.0]], [[SQRT2, 1.0]], [[1.0]])


def rc_ladder_y() -> Realization:
    """Symmetric admittance realization of the inverse, ``B = -C^T``."""
    return Realization([[-3.0, -SQRT2], [-SQRT2, -4.0]], [[SQRT2], [1.0]],
                       [[-SQRT2, -1.0]], [[1.0]])


def complex_sz_rational() -> RationalFunction:
    """``(s+1)(s+2)/((s+3)(s+4))``, whose spectral zeros are nonreal."""
    return RationalFunction.from_roots([-1.0, -2.0], [-3.0, -4.0])


def complex_sz_realization() -> Realization:
    return Realization(np.diag([-3.0, -4.0]), [[2.0], [-6.0]], [[1.0, 1.0]], [[1.0]])


def scalar_are() -> Realization:
    """``A=-1, B=C=sqrt(3), D=1``; ``K_max = 3``, ``K_min = 1/3``."""
    r3 = np.sqrt(3.0)
    return Realization([[-1.0]], [[r3]], [[r3]], [[1.0]])


def decoupled_pair(eta: float = 1.0) -> Realization:
    """diag(1 + 1/(s+3) + 1/(s+7), 1 + 1/(s+4) + 1/(s+8)) with ``D = eta I``."""
    A = np.diag([-3.0, -4.0, -7.0, -8.0])
    B = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
    return Realization(A, B, B.T, eta * np.eye(2))


def multi_agent_path(r_c: float = 1.0, c_c: float = 1.0, r_p: float = 10.0,
                     d: float = 0.1, eta: float = 1.0) -> Realization:
    """Four RC nodes on a path graph, current-driven at the two end nodes.

    Node voltages are the states.  ``d`` is the per-port feed-through.
    """
    g = 1.0 / (r_c * c_c)
    leak = 1.0 / (r_p * c_c)
    L = np.array([[1, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 1]], dtype=float)
    A = -g * L - leak * np.eye(4)
    B = np.zeros((4, 2))
    B[0, 0] = B[3, 1] = 1.0 / c_c
    C = np.zeros((2, 4))
    C[0, 0] = C[1, 3] = 1.0
    return Realization(A, B, C, eta * d * np.eye(2))
