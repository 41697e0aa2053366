"""System zeros, pole/zero interlacing (ZIP) and spectral-zero sandwiches.

System zeros of a biproper square system are the poles of ``G(s)^{-1}``,
i.e. the eigenvalues of ``A - B D^{-1} C``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .exceptions import (
    DimensionError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    NumericalError,
    RepeatedPolesError,
    SingularMatrixError,
    ValidationError,
)
from .linops import GUARD_BAND, cholesky, general_eig, sym_eig
from .model import (
    SYMMETRY_TOL,
    OrderedReals,
    Realization,
    Spectrum,
    order_reals,
    validate_realization,
)
from .passivity import spectral_zeros

__all__ = [
    "Orientation",
    "InterlacingReport",
    "ZipCondition",
    "EtaScanRow",
    "EtaScan",
    "WeylReport",
    "ProductReport",
    "VERGE_RTOL",
    "STRICT_RTOL",
    "inverse_system",
    "system_poles",
    "system_zeros",
    "stable_spectral_zeros",
    "zip_check",
    "spectral_interlace_check",
    "zip_sufficient_condition",
    "eta_scan",
    "weyl_interlace_bounds",
    "product_eigen_bounds",
]

# Relative closeness at which a pole and a zero count as touching.
VERGE_RTOL = 1e-6
# Relative gap below which two eigenvalues are indistinguishable from rounding.
STRICT_RTOL = 1e-10


class Orientation(str, Enum):
    Z_BEFORE_P = "zip_z_before_p"
    P_BEFORE_Z = "zip_p_before_z"
    NONE = "none"


def _invertible_D(R: Realization) -> None:
    if np.linalg.cond(R.D) > 1.0 / (R.m * np.finfo(float).eps):
        raise SingularMatrixError("feed-through matrix D is singular")


def inverse_system(R: Realization) -> Realization:
    """Realization of ``G(s)^{-1}``.

    ``A_Y = A - B D^{-1} C``, ``B_Y = B D^{-1}``, ``C_Y = -D^{-1} C``,
    ``D_Y = D^{-1}``.
    """
    _invertible_D(R)
    Di = np.linalg.inv(R.D)
    return Realization(R.A - R.B @ Di @ R.C, R.B @ Di, -Di @ R.C, Di)


def system_poles(R: Realization) -> Spectrum:
    return general_eig(R.A)


def system_zeros(R: Realization) -> Spectrum:
    """Eigenvalues of ``A - B D^{-1} C``."""
    _invertible_D(R)
    return general_eig(R.A - R.B @ np.linalg.solve(R.D, R.C))


def stable_spectral_zeros(R: Realization, guard: float = GUARD_BAND) -> Spectrum:
    return Spectrum(spectral_zeros(R, guard).stable)


def _reals(xs, tol: float, what: str) -> OrderedReals:
    if isinstance(xs, OrderedReals):
        return xs
    if isinstance(xs, Spectrum):
        xs = xs.as_array()
    arr = np.asarray(list(xs), dtype=complex).ravel()
    scale = max(1.0, float(np.max(np.abs(arr)))) if arr.size else 1.0
    if arr.size and np.max(np.abs(arr.imag)) > tol * scale:
        raise ValidationError(f"{what} contain nonreal entries")
    return order_reals(arr.real)


@dataclass(frozen=True)
class InterlacingReport:
    """Outcome of a pole/zero (and optionally spectral-zero) interlacing check.

    ``orientation`` reflects strict ZIP only.  ``verge`` marks the boundary
    case where the non-strict chain holds with some pole touching a zero.
    ``margins`` are the consecutive gaps of the merged chain (ZIP part) or,
    when spectral zeros are present, per-index slacks
    ``min(mu_i - lower_i, upper_i - mu_i)``.
    """

    poles: OrderedReals
    zeros: OrderedReals
    orientation: Orientation
    strict: bool
    verge: bool
    chain_margins: tuple
    stable_spectral: Optional[OrderedReals] = None
    sandwich: tuple = ()
    margins: tuple = ()
    full_chain: Optional[bool] = None

    @property
    def status(self) -> str:
        if self.strict:
            return "interlaced"
        if self.verge:
            return "verge-of interlaced"
        return "not interlaced"

    @property
    def sandwich_holds(self) -> bool:
        return all(self.sandwich)

    @property
    def min_slack(self) -> Optional[float]:
        return min(self.margins) if self.margins else None


def _chain_gaps(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    chain = np.empty(2 * len(first))
    chain[0::2] = first
    chain[1::2] = second
    return np.diff(chain)


def zip_check(poles, zeros, tol: float = 1e-9, verge_rtol: float = VERGE_RTOL,
              strict_rtol: float = STRICT_RTOL) -> InterlacingReport:
    """Decide whether poles and zeros interlace strictly and in which order.

    ``z_1 < p_1 < z_2 < ... < z_n < p_n`` gives ``zip_z_before_p``;
    ``p_1 < z_1 < ... < p_n < z_n`` gives ``zip_p_before_z``.  A chain is
    strict when every gap exceeds ``strict_rtol * scale``; a non-strict
    chain is on the verge when no gap is below ``-verge_rtol * scale`` and
    some gap is within ``verge_rtol * scale`` of zero.
    """
    p = _reals(poles, tol, "poles")
    z = _reals(zeros, tol, "zeros")
    if len(p) != len(z):
        raise DimensionError(f"{len(p)} poles but {len(z)} zeros")
    pa, za = p.as_array(), z.as_array()
    scale = max(1.0, float(np.max(np.abs(np.concatenate([pa, za])))))
    eps = verge_rtol * scale
    floor = strict_rtol * scale

    gaps_zp = _chain_gaps(za, pa)
    gaps_pz = _chain_gaps(pa, za)
    if np.all(gaps_zp > floor):
        orient, gaps = Orientation.Z_BEFORE_P, gaps_zp
    elif np.all(gaps_pz > floor):
        orient, gaps = Orientation.P_BEFORE_Z, gaps_pz
    else:
        orient = Orientation.NONE
        gaps = gaps_zp if gaps_zp.min() >= gaps_pz.min() else gaps_pz
    strict = orient is not Orientation.NONE
    verge = (not strict) and bool(np.all(gaps >= -eps)) and bool(np.any(np.abs(gaps) <= eps))
    return InterlacingReport(poles=p, zeros=z, orientation=orient, strict=strict,
                             verge=verge, chain_margins=tuple(float(g) for g in gaps))


def _symmetric_sign(R: Realization, tol: float) -> int:
    cert = validate_realization(R, tol, check_rank=False)
    if not cert.is_symmetric:
        raise NotSymmetricError(f"realization is not state-space symmetric (defect {cert.defect:.3g})")
    return cert.sign


def _sym_eigvals(M) -> np.ndarray:
    return sym_eig((M + M.T) / 2, tol=np.inf).eigenvalues


def spectral_interlace_check(R: Realization, tol: float = 1e-8,
                             sym_tol: float = SYMMETRY_TOL) -> InterlacingReport:
    """Check that each stable spectral zero sits between its pole/zero pair.

    For ``B = C^T``: ``z_i <= mu_i <= p_i``; for ``B = -C^T``:
    ``p_i <= mu_i <= z_i``, index by index after ascending ordering.  When
    the poles and zeros interlace strictly, ``full_chain`` records whether
    the strict merged chain with the spectral zeros holds as well.

    Raises
    ------
    NotSymmetricError
    NumericalError
        If a spectral zero comes out nonreal, which theory rules out.
    """
    sign = _symmetric_sign(R, sym_tol)
    _invertible_D(R)
    poles = _sym_eigvals(R.A)
    zeros = _sym_eigvals(R.A - R.B @ np.linalg.solve(R.D, R.C))
    mu_all = spectral_zeros(R)
    scale = max(1.0, float(np.max(np.abs(mu_all.as_array()))))
    if mu_all.max_imag > tol * scale:
        raise NumericalError(
            f"nonreal spectral zero (|Im| = {mu_all.max_imag:.3g}) for a symmetric realization")
    mu = np.sort(mu_all.stable.real)

    lower, upper = (zeros, poles) if sign > 0 else (poles, zeros)
    slack = np.minimum(mu - lower, upper - mu)
    sandwich = tuple(bool(s >= -tol * scale) for s in slack)

    base = zip_check(poles, zeros, tol=tol)
    full = None
    if base.strict:
        chain = np.empty(3 * R.n)
        chain[0::3], chain[1::3], chain[2::3] = lower, mu, upper
        full = bool(np.all(np.diff(chain) > 0))
    return InterlacingReport(
        poles=base.poles, zeros=base.zeros, orientation=base.orientation,
        strict=base.strict, verge=base.verge, chain_margins=base.chain_margins,
        stable_spectral=order_reals(mu), sandwich=sandwich,
        margins=tuple(float(s) for s in slack), full_chain=full)


@dataclass(frozen=True)
class ZipCondition:
    nu_min: Optional[float]
    lambda_max: float
    condition: bool
    controllable: bool
    pbh_margin: float
    orientation: Orientation

    @property
    def implies_zip(self) -> bool:
        """Whether the sufficient condition certifies strict ZIP."""
        return self.condition and self.controllable


def _pbh_margin(A: np.ndarray, B: np.ndarray) -> float:
    Q = sym_eig((A + A.T) / 2, tol=np.inf).eigenvectors
    if B.size == 0 or not np.any(B):
        return 0.0
    return float(np.min(np.linalg.norm(B.T @ Q, axis=0)))


def zip_sufficient_condition(R: Realization, sym_tol: float = SYMMETRY_TOL,
                             repeat_rtol: float = 1e-8,
                             pbh_rtol: float = 1e-8) -> ZipCondition:
    """Pole-separation test ``nu_min > lambda_max(B D^{-1} B^T)``.

    Controllability is checked with the PBH test on the orthonormal
    eigenvectors of ``A`` and reported rather than raised, so the
    degenerate ``B = 0`` case still yields a report.

    Raises
    ------
    NotSymmetricError
    RepeatedPolesError
        Two poles closer than ``repeat_rtol * ||A||``.
    """
    sign = _symmetric_sign(R, sym_tol)
    _invertible_D(R)
    poles = order_reals(_sym_eigvals(R.A))
    scale = max(np.linalg.norm(R.A, 2), np.finfo(float).tiny)
    if poles.nu_min is not None and poles.nu_min <= repeat_rtol * scale:
        raise RepeatedPolesError(f"poles are repeated within {repeat_rtol * scale:.3g}")
    M = R.B @ np.linalg.solve(R.D, R.B.T)
    lam_max = float(_sym_eigvals(M)[-1])
    nu = poles.nu_min
    cond = True if nu is None else bool(nu > lam_max)
    margin = _pbh_margin(R.A, R.B)
    controllable = bool(margin > pbh_rtol * max(np.linalg.norm(R.B, 2), np.finfo(float).tiny))
    orient = Orientation.Z_BEFORE_P if sign > 0 else Orientation.P_BEFORE_Z
    return ZipCondition(nu, lam_max, cond, controllable, margin, orient)


@dataclass(frozen=True)
class EtaScanRow:
    eta: float
    zeros: OrderedReals
    stable_spectral: OrderedReals
    poles: OrderedReals
    zip: bool
    verge: bool
    full_interlace: bool
    sandwich: bool

    @property
    def status(self) -> str:
        if self.zip:
            return "interlaced"
        return "verge-of interlaced" if self.verge else "not interlaced"


@dataclass(frozen=True)
class EtaScan:
    rows: tuple
    threshold: Optional[float]


def _scan_row(R: Realization, D0: np.ndarray, eta: float) -> EtaScanRow:
    rep = spectral_interlace_check(R.with_feedthrough(eta * D0))
    return EtaScanRow(eta=float(eta), zeros=rep.zeros, stable_spectral=rep.stable_spectral,
                      poles=rep.poles, zip=rep.strict, verge=rep.verge,
                      full_interlace=bool(rep.full_chain), sandwich=rep.sandwich_holds)


def _zip_at(R, D0, eta) -> bool:
    Rz = R.with_feedthrough(eta * D0)
    return zip_check(_sym_eigvals(Rz.A),
                     _sym_eigvals(Rz.A - Rz.B @ np.linalg.solve(Rz.D, Rz.C))).strict


def _bisect(R, D0, lo: float, hi: float, rel_width: float) -> float:
    while (hi - lo) > rel_width * hi:
        mid = 0.5 * (lo + hi)
        if _zip_at(R, D0, mid):
            hi = mid
        else:
            lo = mid
    return hi


def eta_scan(R: Realization, D0=None, etas: Sequence[float] | None = None,
             bisect: tuple | None = None, rel_width: float = 1e-3,
             refine: bool = False) -> EtaScan:
    """Scale the feed-through as ``D = eta * D0`` and tabulate interlacing.

    Parameters
    ----------
    R : Realization
        Symmetric realization; its ``D`` is replaced at every ``eta``.
    D0 : array_like, optional
        Symmetric positive definite base feed-through, default ``R.D``.
    etas : sequence of float, optional
        Scaling factors to tabulate, in the given order.
    bisect : (lo, hi), optional
        Bracket for locating the ZIP threshold; ZIP must fail at ``lo`` and
        hold at ``hi``.
    refine : bool
        With ``etas`` only: bisect between the largest failing and smallest
        passing scanned values.

    Returns
    -------
    EtaScan
        ``threshold`` is the smallest ``eta`` found with strict ZIP, refined
        to relative width ``rel_width`` when bisecting, else ``None``.
    """
    D0 = R.D if D0 is None else np.atleast_2d(np.asarray(D0, dtype=float))
    if D0.shape != (R.m, R.m):
        raise DimensionError(f"D0 must be {R.m}x{R.m}")
    cholesky(D0)
    _symmetric_sign(R.with_feedthrough(D0), SYMMETRY_TOL)
    if etas is None and bisect is None:
        raise ValidationError("give a list of eta values or a bisection bracket")
    etas = [] if etas is None else [float(e) for e in etas]
    if any(e <= 0 for e in etas):
        raise ValidationError("eta values must be positive")

    rows = tuple(_scan_row(R, D0, e) for e in etas)
    threshold = None
    if bisect is not None:
        lo, hi = (float(b) for b in bisect)
        if not 0 < lo < hi:
            raise ValidationError("bisection bracket must satisfy 0 < lo < hi")
        if _zip_at(R, D0, lo) or not _zip_at(R, D0, hi):
            raise ValidationError("ZIP must fail at lo and hold at hi")
        threshold = _bisect(R, D0, lo, hi, rel_width)
    elif rows:
        passing = sorted(r.eta for r in rows if r.zip)
        if passing:
            threshold = passing[0]
            failing = [r.eta for r in rows if not r.zip and r.eta < threshold]
            if refine and failing:
                threshold = _bisect(R, D0, max(failing), threshold, rel_width)
    return EtaScan(rows, threshold)


@dataclass(frozen=True)
class WeylReport:
    lam_P: tuple
    lam_PM: tuple
    nu_min: Optional[float]
    lambda_max_M: float
    condition: bool
    interlaced: bool
    strict_expected: bool
    strict: bool


def weyl_interlace_bounds(P, M, tol: float = 1e-10) -> WeylReport:
    """Eigenvalue interlacing of ``P`` and ``P + M`` for singular PSD ``M``.

    Verifies ``lambda_i(P) <= lambda_i(P+M) <= lambda_{i+1}(P)`` (upper bound
    for ``i < n``) when ``lambda_max(M) <= nu_min(P)``.  Strictness is
    expected when ``M x != 0`` for every eigenvector ``x`` of ``P`` and the
    separation inequality is strict.
    """
    eP = sym_eig(P)
    eM = sym_eig(M)
    n = len(eP.eigenvalues)
    if eM.eigenvalues.shape[0] != n:
        raise DimensionError("P and M must have the same size")
    scale = max(1.0, float(np.max(np.abs(eP.eigenvalues))), float(np.max(np.abs(eM.eigenvalues))))
    if eM.eigenvalues[0] < -tol * scale:
        raise NotPositiveDefiniteError("M is not positive semidefinite")
    rank = int(np.sum(eM.eigenvalues > tol * scale))
    if rank >= n:
        raise ValidationError("M must be singular (rank < n)")
    lp = order_reals(eP.eigenvalues)
    if lp.nu_min is not None and lp.nu_min <= tol * scale:
        raise RepeatedPolesError("P has repeated eigenvalues")

    lpm = sym_eig(np.asarray(P, dtype=float) + np.asarray(M, dtype=float)).eigenvalues
    lam_max = float(eM.eigenvalues[-1])
    cond = lp.nu_min is None or lam_max <= lp.nu_min + tol * scale
    a = np.asarray(lp.values)
    lower_ok = np.all(lpm >= a - tol * scale)
    upper_ok = np.all(lpm[:-1] <= a[1:] + tol * scale)
    Mx = np.linalg.norm(np.asarray(M, dtype=float) @ eP.eigenvectors, axis=0)
    strict_expected = bool(np.all(Mx > tol * scale)
                           and (lp.nu_min is None or lam_max < lp.nu_min))
    strict = bool(np.all(lpm > a + tol * scale) and np.all(lpm[:-1] < a[1:] - tol * scale))
    return WeylReport(lam_P=lp.values, lam_PM=tuple(float(x) for x in lpm),
                      nu_min=lp.nu_min, lambda_max_M=lam_max, condition=bool(cond),
                      interlaced=bool(lower_ok and upper_ok), strict_expected=strict_expected,
                      strict=strict)


@dataclass(frozen=True)
class ProductReport:
    eigenvalues: tuple
    max_imag: float
    lower: tuple
    upper: tuple
    bounded: bool


def product_eigen_bounds(P, M, tol: float = 1e-9) -> ProductReport:
    """Eigenvalues of ``P (P + M)`` against ``lambda_i(P)^2`` and ``lambda_i(P+M)^2``.

    ``P`` must be positive definite and ``M`` positive semidefinite.
    """
    P = np.asarray(P, dtype=float)
    M = np.asarray(M, dtype=float)
    cholesky(P)
    lp = sym_eig(P).eigenvalues
    lq = sym_eig(P + M).eigenvalues
    w = general_eig(P @ (P + M)).as_array()
    scale = max(1.0, float(lq[-1] ** 2))
    vals = np.sort(w.real)
    lower, upper = lp ** 2, lq ** 2
    ok = bool(np.all(vals >= lower - tol * scale) and np.all(vals <= upper + tol * scale))
    return ProductReport(tuple(float(v) for v in vals), float(np.max(np.abs(w.imag))),
                         tuple(float(v) for v in lower), tuple(float(v) for v in upper), ok)
