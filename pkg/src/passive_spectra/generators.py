"""Random strictly passive test systems.

All generators take a :class:`numpy.random.Generator` so runs are
reproducible from a seed.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as sla

from .model import PoleResidue, RationalFunction, Realization

__all__ = [
    "random_zip_roots",
    "random_zip_rational",
    "zip_pole_residue",
    "random_symmetric_passive",
    "random_strictly_passive",
    "reference_pr_singular_values",
    "well_conditioned",
]


def _orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def random_zip_roots(rng: np.random.Generator, n: int, lo: float = 0.1, hi: float = 10.0,
                     zero_first: bool | None = None):
    """Interlaced negative poles and zeros, magnitudes log-uniform in ``[lo, hi]``.

    Returns ``(poles, zeros)`` ascending.  With ``zero_first`` the chain
    starts with a zero (``z_1 < p_1 < ...``), which is the RC impedance case.
    """
    if zero_first is None:
        zero_first = bool(rng.integers(2))
    mags = np.exp(rng.uniform(np.log(lo), np.log(hi), 2 * n))
    chain = np.sort(-mags)
    zeros, poles = (chain[0::2], chain[1::2]) if zero_first else (chain[1::2], chain[0::2])
    return poles, zeros


def zip_pole_residue(poles, zeros, gain: float = 1.0) -> PoleResidue:
    """Partial fractions of ``gain * prod(s - z) / prod(s - p)`` from the roots."""
    poles = np.asarray(poles, dtype=float)
    zeros = np.asarray(zeros, dtype=float)
    res = []
    for k, p in enumerate(poles):
        others = np.delete(poles, k)
        res.append(gain * np.prod(p - zeros) / np.prod(p - others))
    return PoleResidue(gain, tuple(poles), tuple(res))


def random_zip_rational(rng: np.random.Generator, n: int, **kw) -> tuple:
    """``(RationalFunction, PoleResidue)`` of one random ZIP function."""
    poles, zeros = random_zip_roots(rng, n, **kw)
    gain = float(np.exp(rng.uniform(np.log(0.5), np.log(2.0))))
    return RationalFunction.from_roots(zeros, poles, gain), zip_pole_residue(poles, zeros, gain)


def reference_pr_singular_values(R: Realization) -> np.ndarray:
    """PR singular values from scipy's Riccati solver, ascending.

    ``K_min`` solves the ARE for the system and ``K_max`` is the inverse of
    ``K_min`` for the dual.  Kept separate from the Hamiltonian code so it
    can screen test inputs without depending on it.
    """
    Rm = -(R.D + R.D.T)
    Z = np.zeros((R.n, R.n))
    K_min = sla.solve_continuous_are(R.A, R.B, Z, Rm, s=-R.C.T)
    K_dual = sla.solve_continuous_are(R.A.T, R.C.T, Z, Rm, s=-R.B)
    K_max_inv = (K_dual + K_dual.T) / 2
    # sigma^2 are the eigenvalues of K_min K_max^{-1}
    lam = sla.eigh((K_min + K_min.T) / 2, np.linalg.inv(K_max_inv), eigvals_only=True)
    return np.sqrt(np.abs(lam))


def well_conditioned(R: Realization, sigma_floor: float = 1e-5) -> bool:
    """True when every PR singular value is at least ``sigma_floor``.

    A state with a tiny PR singular value is close to uncontrollable or
    unobservable, and the extremal ARE solutions then have norms or
    condition numbers near ``1/sigma_floor**2``.
    """
    try:
        s = reference_pr_singular_values(R)
    except (np.linalg.LinAlgError, ValueError):
        return False
    return bool(s.size == 0 or (np.all(np.isfinite(s)) and s[0] >= sigma_floor))


def random_symmetric_passive(rng: np.random.Generator, n: int, m: int, sign: int = 1) -> Realization:
    """Strictly passive symmetric realization with ``B = sign * C^T``.

    ``A`` is symmetric with eigenvalues log-uniform in ``[-10, -0.1]``;
    ``D`` is symmetric positive definite.  For ``sign = -1`` the
    feed-through is scaled so that ``A + B D^{-1} B^T`` stays stable.
    """
    lam = -np.exp(rng.uniform(np.log(0.1), np.log(10.0), n))
    Q = _orthogonal(rng, n)
    A = (Q * lam) @ Q.T
    A = (A + A.T) / 2
    B = rng.standard_normal((n, m))
    L = rng.standard_normal((m, m))
    D = L @ L.T / m + 0.5 * np.eye(m)
    if sign < 0:
        # ||B D^{-1} B^T|| <= ||B||^2 / lambda_min(D) < |lambda_max(A)| / 2
        need = 2.0 * np.linalg.norm(B, 2) ** 2 / np.min(-lam)
        lmin = np.linalg.eigvalsh(D)[0]
        if lmin < need:
            D = D * (need / lmin)
    return Realization(A, B, sign * B.T, D)


def random_strictly_passive(rng: np.random.Generator, n: int, m: int) -> Realization:
    """Strictly passive realization built to satisfy the strict KYP inequality.

    With ``K > 0``, ``A^T K + K A = -Q`` and ``F = B^T K - C``, choosing
    ``D + D^T > F Q^{-1} F^T`` makes the KYP matrix negative definite.
    """
    G = rng.standard_normal((n, n))
    K = G @ G.T / n + 0.5 * np.eye(n)
    H = rng.standard_normal((n, n))
    Qm = H @ H.T / n + 0.5 * np.eye(n)
    S = rng.standard_normal((n, n))
    S = (S - S.T) / 2
    A = np.linalg.solve(K, -Qm / 2 + S)
    B = rng.standard_normal((n, m))
    F = 0.5 * rng.standard_normal((m, n))
    C = B.T @ K - F
    Dsym = F @ np.linalg.solve(Qm, F.T) + 0.5 * np.eye(m)
    W = rng.standard_normal((m, m))
    D = Dsym / 2 + 0.3 * (W - W.T) / 2
    return Realization(A, B, C, D)
