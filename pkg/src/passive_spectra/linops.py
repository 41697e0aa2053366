"""Dense linear-algebra kernels with explicit contracts.

Backed by LAPACK through :mod:`scipy.linalg`.  Invariant subspaces come from
an ordered real Schur form, never from stacking eigenvectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .exceptions import (
    DimensionError,
    ImaginaryAxisError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    NumericalError,
    SingularMatrixError,
)
from .model import Spectrum

__all__ = [
    "GUARD_BAND",
    "EigenSym",
    "InvariantSubspace",
    "sym_eig",
    "cholesky",
    "is_spd",
    "sqrt_spd",
    "general_eig",
    "stable_invariant_subspace",
    "simultaneous_diagonalize",
    "SquareRootFactors",
    "square_root_factors",
]

# Relative half-width of the band around the imaginary axis treated as "on" it.
GUARD_BAND = 1e-8


@dataclass(frozen=True, eq=False)
class EigenSym:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True, eq=False)
class InvariantSubspace:
    """Basis ``[X; Y]`` with ``H [X; Y] = [X; Y] R``."""

    basis: np.ndarray
    restriction: np.ndarray
    eigenvalues: np.ndarray

    @property
    def X(self) -> np.ndarray:
        return self.basis[: self.basis.shape[1]]

    @property
    def Y(self) -> np.ndarray:
        return self.basis[self.basis.shape[1]:]


def _square(M, name="matrix"):
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {M.shape}")
    return M


def _check_symmetric(M, tol):
    scale = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
    if M.size and np.max(np.abs(M - M.T)) > tol * scale:
        raise NotSymmetricError("matrix is not symmetric")


def _fix_signs(Q):
    # deterministic eigenvector signs: largest-magnitude entry positive
    idx = np.argmax(np.abs(Q), axis=0)
    s = np.sign(Q[idx, np.arange(Q.shape[1])])
    s[s == 0] = 1.0
    return Q * s


def sym_eig(M, tol: float = 1e-9) -> EigenSym:
    """Ascending eigenvalues and orthonormal eigenvectors of a symmetric matrix."""
    M = _square(M)
    _check_symmetric(M, tol)
    w, Q = sla.eigh((M + M.T) / 2)
    return EigenSym(w, _fix_signs(Q))


def cholesky(M, tol: float = 1e-9) -> np.ndarray:
    """Upper-triangular ``R`` with ``M = R^T R``.

    Raises :class:`NotPositiveDefiniteError` when a pivot is not positive.
    """
    M = _square(M)
    _check_symmetric(M, tol)
    try:
        return sla.cholesky((M + M.T) / 2, lower=False)
    except sla.LinAlgError as exc:
        raise NotPositiveDefiniteError("matrix is not positive definite") from exc


def is_spd(M, tol: float = 1e-9) -> bool:
    try:
        cholesky(M, tol)
    except (NotPositiveDefiniteError, NotSymmetricError):
        return False
    return True


def sqrt_spd(M, tol: float = 1e-9) -> np.ndarray:
    """The unique symmetric positive definite square root."""
    M = _square(M)
    cholesky(M, tol)
    w, Q = sla.eigh((M + M.T) / 2)
    if np.any(w <= 0):
        raise NotPositiveDefiniteError("matrix is not positive definite")
    S = (Q * np.sqrt(w)) @ Q.T
    return (S + S.T) / 2


def general_eig(M) -> Spectrum:
    """All eigenvalues of a real square matrix."""
    M = _square(M)
    if not np.all(np.isfinite(M)):
        raise NumericalError("matrix has non-finite entries")
    try:
        w = sla.eigvals(M)
    except sla.LinAlgError as exc:
        raise NumericalError(f"eigenvalue iteration failed: {exc}") from exc
    return Spectrum(w)


def _guard(H) -> float:
    return GUARD_BAND * max(np.linalg.norm(H, 2), np.finfo(float).tiny)


def stable_invariant_subspace(H, half_plane: str = "stable",
                              guard: float | None = None) -> InvariantSubspace:
    """n-dimensional invariant subspace of a 2n x 2n matrix for one half-plane.

    Parameters
    ----------
    H : (2n, 2n) array_like
    half_plane : {"stable", "antistable"}
    guard : float, optional
        Absolute half-width of the imaginary-axis band.  Defaults to
        ``1e-8 * ||H||_2``.

    Raises
    ------
    ImaginaryAxisError
        Some eigenvalue lies within the guard band.
    SingularMatrixError
        ``X`` is singular, so no graph subspace exists.
    """
    H = _square(H, "H")
    if H.shape[0] % 2:
        raise DimensionError("H must have even dimension")
    if half_plane not in ("stable", "antistable"):
        raise ValueError("half_plane must be 'stable' or 'antistable'")
    n = H.shape[0] // 2
    band = _guard(H) if guard is None else guard

    w = general_eig(H).as_array()
    if np.any(np.abs(w.real) < band):
        raise ImaginaryAxisError(
            f"eigenvalue within {band:.3g} of the imaginary axis: min |Re| = "
            f"{np.min(np.abs(w.real)):.3g}")

    sort = "lhp" if half_plane == "stable" else "rhp"
    T, Z, sdim = sla.schur(H, output="real", sort=sort)
    if sdim != n:
        raise ImaginaryAxisError(
            f"{sdim} eigenvalues in the {half_plane} half-plane, expected {n}")
    basis = Z[:, :n]
    Rn = T[:n, :n]
    ev = sla.eigvals(Rn) if n else np.array([])
    X = basis[:n]
    if n and np.linalg.cond(X) > 1.0 / (n * np.finfo(float).eps):
        raise SingularMatrixError("X block of the invariant subspace is singular")
    return InvariantSubspace(basis=basis, restriction=Rn, eigenvalues=ev)


def simultaneous_diagonalize(Kmax, Kmin, tol: float = 1e-9):
    """Congruence ``T`` with ``T^T Kmax T = I`` and ``T^T Kmin T`` diagonal ascending.

    Returns
    -------
    T : ndarray
    lam : ndarray
        Diagonal of ``T^T Kmin T``, ascending.
    """
    Rc = cholesky(Kmax, tol)
    cholesky(Kmin, tol)
    S = sla.solve_triangular(Rc, np.eye(Rc.shape[0]), lower=False)
    P = S.T @ np.asarray(Kmin, dtype=float) @ S
    eig = sym_eig((P + P.T) / 2)
    return S @ eig.eigenvectors, eig.eigenvalues


@dataclass(frozen=True, eq=False)
class SquareRootFactors:
    """``Q = Lo Lo^T``, ``P = Lc Lc^T`` and ``Lo^T Lc = U diag(s) V^T``, ``s`` ascending."""

    Lo: np.ndarray
    Lc: np.ndarray
    U: np.ndarray
    s: np.ndarray
    V: np.ndarray


def square_root_factors(Q, P, tol: float = 1e-9) -> SquareRootFactors:
    """Square-root factors for balancing a pair transforming as
    ``T^T Q T`` and ``T^{-1} P T^{-T}``.

    ``s`` are the square roots of the eigenvalues of ``P Q``; no inverse of
    either matrix is formed.
    """
    Lo = cholesky(Q, tol).T
    Lc = cholesky(P, tol).T
    U, s, Vt = sla.svd(Lo.T @ Lc)
    order = np.argsort(s, kind="stable")
    V = Vt.T[:, order]
    sg = np.sign(V[np.argmax(np.abs(V), axis=0), np.arange(V.shape[1])])
    sg[sg == 0] = 1.0
    return SquareRootFactors(Lo, Lc, U[:, order] * sg, s[order], V * sg)
