"""Passivity Hamiltonian, spectral zeros and extremal ARE solutions.

The Riccati equation used throughout is::

    A^T K + K A + (K B - C^T) (D + D^T)^{-1} (B^T K - C) = 0

Its stabilizing (``K_min``) and antistabilizing (``K_max``) solutions come
from the stable and antistable invariant subspaces of the Hamiltonian.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    ImaginaryAxisError,
    NotPositiveDefiniteError,
    NotStrictlyPassiveError,
    NumericalError,
    SingularMatrixError,
)
from .linops import GUARD_BAND, cholesky, general_eig, stable_invariant_subspace, sym_eig
from .model import Realization, Spectrum

__all__ = [
    "Hamiltonian",
    "StoragePair",
    "PassivityReport",
    "hamiltonian",
    "spectral_zeros",
    "are_residual",
    "are_tolerance",
    "extremal_solutions",
    "minimal_solution",
    "energy",
    "is_strictly_passive",
]


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """``H = [[P, Q], [R, -P^T]]``."""

    matrix: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    R: np.ndarray

    @property
    def n(self) -> int:
        return self.P.shape[0]


@dataclass(frozen=True, eq=False)
class StoragePair:
    K_min: np.ndarray
    K_max: np.ndarray
    residual_min: float
    residual_max: float

    def ordering_gap(self) -> float:
        """Smallest eigenvalue of ``K_max - K_min`` (nonnegative when ordered)."""
        return float(sym_eig(self.K_max - self.K_min, tol=np.inf).eigenvalues[0])


def _sym_part_inverse(D: np.ndarray) -> np.ndarray:
    S = D + D.T
    if np.linalg.cond(S) > 1.0 / (S.shape[0] * np.finfo(float).eps):
        raise SingularMatrixError("D + D^T is singular")
    return np.linalg.inv(S)


def hamiltonian(R: Realization) -> Hamiltonian:
    """Passivity Hamiltonian of a realization with ``D + D^T`` invertible."""
    W = _sym_part_inverse(R.D)
    P = R.A - R.B @ W @ R.C
    Q = R.B @ W @ R.B.T
    Rb = -R.C.T @ W @ R.C
    return Hamiltonian(np.block([[P, Q], [Rb, -P.T]]), P, Q, Rb)


def spectral_zeros(R: Realization, guard: float = GUARD_BAND) -> Spectrum:
    """Eigenvalues of the Hamiltonian, i.e. all 2n spectral zeros.

    Raises
    ------
    ImaginaryAxisError
        When a spectral zero lies within ``guard * ||H||`` of the imaginary axis.
    """
    H = hamiltonian(R).matrix
    ev = general_eig(H)
    band = guard * max(np.linalg.norm(H, 2), np.finfo(float).tiny)
    re = ev.real_parts()
    if re.size and np.min(np.abs(re)) < band:
        raise ImaginaryAxisError("spectral zero on the imaginary axis; system is not strictly passive")
    return ev


def are_residual(R: Realization, K) -> float:
    """Frobenius norm of the Riccati left-hand side at ``K``."""
    K = np.atleast_2d(np.asarray(K, dtype=float))
    W = _sym_part_inverse(R.D)
    L = K @ R.B - R.C.T
    res = R.A.T @ K + K @ R.A + L @ W @ L.T
    return float(np.linalg.norm(res, "fro"))


def are_tolerance(R: Realization, K, rtol: float = 1e-8) -> float:
    """Residual threshold scaled by the problem size, ``rtol (1+||A||)(1+||K||)``."""
    return rtol * (1.0 + np.linalg.norm(R.A, 2)) * (1.0 + np.linalg.norm(K, 2))


def _graph(sub) -> np.ndarray:
    X, Y = sub.X, sub.Y
    K = np.linalg.solve(X.T, Y.T).T
    return (K + K.T) / 2


def extremal_solutions(R: Realization, guard: float = GUARD_BAND,
                       rtol: float = 1e-8) -> StoragePair:
    """Minimal and maximal solutions of the passivity ARE.

    ``K_min`` comes from the stable invariant subspace of the Hamiltonian and
    ``K_max`` from the antistable one.

    Raises
    ------
    ImaginaryAxisError
        Spectral zero on the imaginary axis.
    SingularMatrixError
        No graph subspace (non-minimal realization).
    NotStrictlyPassiveError
        A solution is not positive definite, ``K_min`` is not below
        ``K_max``, or a residual exceeds :func:`are_tolerance`.
    """
    H = hamiltonian(R).matrix
    band = guard * max(np.linalg.norm(H, 2), np.finfo(float).tiny)
    K_min = _graph(stable_invariant_subspace(H, "stable", guard=band))
    K_max = _graph(stable_invariant_subspace(H, "antistable", guard=band))
    pair = StoragePair(K_min, K_max, are_residual(R, K_min), are_residual(R, K_max))
    for name, K, res in (("K_min", K_min, pair.residual_min), ("K_max", K_max, pair.residual_max)):
        if not res <= are_tolerance(R, K, rtol):
            raise NumericalError(f"{name} residual {res:.3g} exceeds tolerance")
        try:
            cholesky(K, tol=np.inf)
        except NotPositiveDefiniteError as exc:
            raise NotStrictlyPassiveError(f"{name} is not positive definite") from exc
    scale = max(1.0, np.linalg.norm(K_max, 2))
    if pair.ordering_gap() < -rtol * scale:
        raise NotStrictlyPassiveError("K_min is not below K_max")
    return pair


def minimal_solution(R: Realization, guard: float = GUARD_BAND, rtol: float = 1e-8) -> np.ndarray:
    """``K_min`` alone, from the stable invariant subspace.

    ``K_max`` of a system is the inverse of ``K_min`` of its dual
    ``(A^T, C^T, B^T, D^T)``, which is the better-conditioned route when
    ``K_max`` is large.
    """
    H = hamiltonian(R).matrix
    band = guard * max(np.linalg.norm(H, 2), np.finfo(float).tiny)
    K = _graph(stable_invariant_subspace(H, "stable", guard=band))
    res = are_residual(R, K)
    if not res <= are_tolerance(R, K, rtol):
        raise NumericalError(f"K_min residual {res:.3g} exceeds tolerance")
    try:
        cholesky(K, tol=np.inf)
    except NotPositiveDefiniteError as exc:
        raise NotStrictlyPassiveError("K_min is not positive definite") from exc
    return K


def energy(K, a) -> float:
    """Quadratic storage ``a^T K a``."""
    a = np.atleast_1d(np.asarray(a, dtype=float))
    return float(a @ np.atleast_2d(K) @ a)


@dataclass(frozen=True, eq=False)
class PassivityReport:
    passive: bool
    reasons: tuple = ()
    storage: StoragePair | None = None

    def __bool__(self):
        return self.passive


def is_strictly_passive(R: Realization, guard: float = GUARD_BAND) -> PassivityReport:
    """Algebraic strict-passivity test.

    True iff ``D + D^T > 0``, no pole or (for invertible ``D``) system zero
    lies on or to the right of the imaginary-axis band, the Hamiltonian has no
    eigenvalue in the band, and both extremal ARE solutions exist and are
    positive definite.  Never raises on numerical grounds; failures are
    collected in ``reasons``.
    """
    reasons = []
    try:
        cholesky(R.D + R.D.T, tol=np.inf)
    except NotPositiveDefiniteError:
        reasons.append("D + D^T is not positive definite")
        return PassivityReport(False, tuple(reasons))

    scale_A = max(np.linalg.norm(R.A, 2), 1.0)
    poles = general_eig(R.A).real_parts()
    if poles.size and np.max(poles) > -guard * scale_A:
        reasons.append("pole on or right of the imaginary axis")
    if np.linalg.cond(R.D) < 1.0 / (R.m * np.finfo(float).eps):
        Az = R.A - R.B @ np.linalg.solve(R.D, R.C)
        zeros = general_eig(Az).real_parts()
        if zeros.size and np.max(zeros) > -guard * max(np.linalg.norm(Az, 2), 1.0):
            reasons.append("system zero on or right of the imaginary axis")
    if reasons:
        return PassivityReport(False, tuple(reasons))

    try:
        storage = extremal_solutions(R, guard=guard)
    except ImaginaryAxisError:
        return PassivityReport(False, ("Hamiltonian eigenvalue on the imaginary axis",))
    except (NumericalError, SingularMatrixError) as exc:
        return PassivityReport(False, (str(exc),))
    return PassivityReport(True, (), storage)
