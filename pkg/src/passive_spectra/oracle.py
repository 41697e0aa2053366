"""Polynomial cross-checks for SISO spectral zeros.

Spectral zeros of ``G = n/d`` are the roots of the even polynomial
``n(s) d(-s) + n(-s) d(s)``.  Roots are found in ``x = s^2`` from a
companion matrix, independently of the Hamiltonian route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .exceptions import ValidationError
from .model import RationalFunction, Spectrum

__all__ = [
    "EvenPolynomial",
    "VietaReport",
    "RealZeroReport",
    "szp_polynomial",
    "szp_roots",
    "companion_roots",
    "match_spectra",
    "vieta_checks",
    "real_zero_lemma_check",
]


@dataclass(frozen=True)
class EvenPolynomial:
    """Even polynomial stored by its even coefficients ``a_2n, a_2n-2, ..., a_0``."""

    coefficients: tuple

    @property
    def degree(self) -> int:
        return 2 * (len(self.coefficients) - 1)

    def full(self) -> np.ndarray:
        """Dense descending coefficients including the zero odd terms."""
        c = np.zeros(self.degree + 1)
        c[0::2] = self.coefficients
        return c

    def __call__(self, s):
        return np.polyval(self.full(), s)


def _reflect(c: np.ndarray) -> np.ndarray:
    # coefficients of p(-s) from those of p(s), descending powers
    powers = np.arange(len(c) - 1, -1, -1)
    return c * (-1.0) ** powers


def szp_polynomial(f: RationalFunction) -> EvenPolynomial:
    """``n(s) d(-s) + n(-s) d(s)`` with the odd coefficients cancelled."""
    if not isinstance(f, RationalFunction):
        raise ValidationError("szp_polynomial expects a RationalFunction")
    n = np.asarray(f.num, dtype=float)
    d = np.asarray(f.den, dtype=float)
    c = np.polyadd(np.polymul(n, _reflect(d)), np.polymul(_reflect(n), d))
    c = np.concatenate([np.zeros(2 * f.order + 1 - len(c)), c])
    odd = c[1::2]
    scale = max(1.0, float(np.max(np.abs(c))))
    if odd.size and np.max(np.abs(odd)) > 1e-12 * scale:
        raise ValidationError("odd coefficients failed to cancel")
    return EvenPolynomial(tuple(float(a) for a in c[0::2]))


def companion_roots(coeffs) -> np.ndarray:
    """Roots of a polynomial (descending coefficients) as eigenvalues of its companion matrix."""
    c = np.asarray(coeffs, dtype=float)
    if c.size == 0 or c[0] == 0:
        raise ValidationError("leading coefficient must be nonzero")
    k = c.size - 1
    if k == 0:
        return np.array([], dtype=complex)
    comp = np.zeros((k, k))
    comp[0, :] = -c[1:] / c[0]
    comp[1:, :-1] = np.eye(k - 1)
    return np.linalg.eigvals(comp).astype(complex)


def szp_roots(p: EvenPolynomial) -> Spectrum:
    """All 2n roots, via the degree-n polynomial in ``x = s^2`` and ``s = +-sqrt(x)``."""
    if not p.coefficients or p.coefficients[0] == 0:
        raise ValidationError("leading coefficient must be nonzero")
    x = companion_roots(p.coefficients)
    r = np.sqrt(x.astype(complex))
    r = np.where(r.real > 0, -r, r)  # stable representative
    return Spectrum(np.concatenate([r, -r]))


def match_spectra(a, b) -> float:
    """Largest relative deviation after optimally pairing two multisets.

    Pairing minimizes the total distance; each deviation is scaled by
    ``max(1, |b_k|)``.
    """
    a = np.asarray(a.as_array() if isinstance(a, Spectrum) else a, dtype=complex).ravel()
    b = np.asarray(b.as_array() if isinstance(b, Spectrum) else b, dtype=complex).ravel()
    if a.size != b.size:
        raise ValidationError(f"multisets differ in size ({a.size} vs {b.size})")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols] / np.maximum(1.0, np.abs(b[cols]))))


@dataclass(frozen=True)
class VietaReport:
    product: float
    product_expected: float
    sum_squares: float
    sum_squares_expected: float
    product_rel_err: float
    sum_squares_rel_err: float

    def holds(self, rtol: float = 1e-8) -> bool:
        return self.product_rel_err <= rtol and self.sum_squares_rel_err <= rtol


def _pair_sum(v: np.ndarray) -> float:
    return float((v.sum() ** 2 - (v ** 2).sum()) / 2)


def vieta_checks(f: RationalFunction, tol: float = 1e-9) -> VietaReport:
    """Product and sum-of-squares identities for the stable spectral zeros.

    ``|mu_1 ... mu_n| = sqrt(prod p * prod z)`` and
    ``sum mu_i^2 = sum p * sum z - sum_{i<k} p_i p_k - sum_{i<k} z_i z_k``.
    Requires real negative poles and zeros.
    """
    poles, zeros = f.poles(), f.zeros()
    allv = np.concatenate([poles, zeros])
    scale = max(1.0, float(np.max(np.abs(allv)))) if allv.size else 1.0
    if allv.size and (np.max(np.abs(allv.imag)) > tol * scale or np.max(allv.real) >= 0):
        raise ValidationError("vieta_checks needs real negative poles and zeros")
    p, z = poles.real, zeros.real
    mu = szp_roots(szp_polynomial(f)).stable
    prod = float(np.abs(np.prod(mu)))
    prod_exp = float(np.sqrt(np.prod(p) * np.prod(z)))
    ssq = float(np.sum(mu ** 2).real)
    ssq_exp = float(p.sum() * z.sum() - _pair_sum(p) - _pair_sum(z))

    def rel(a, b):
        return abs(a - b) / max(abs(b), np.finfo(float).tiny)

    return VietaReport(prod, prod_exp, ssq, ssq_exp, rel(prod, prod_exp), rel(ssq, ssq_exp))


@dataclass(frozen=True)
class RealZeroReport:
    zeros: tuple
    max_imag: float
    all_real: bool


def real_zero_lemma_check(p, q, tol: float = 1e-8) -> RealZeroReport:
    """Zeros of ``f(x) = sum_k q_k / (x^2 - p_k^2)`` for positive weights ``q_k``.

    The zeros are the roots of the cleared numerator
    ``sum_k q_k prod_{j != k} (x^2 - p_j^2)``.
    """
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    if p.shape != q.shape:
        raise ValidationError("p and q must have equal length")
    if np.any(q <= 0):
        raise ValidationError("weights q_k must be positive")
    num = np.zeros(1)
    for k in range(p.size):
        term = np.array([q[k]])
        for j in range(p.size):
            if j != k:
                term = np.polymul(term, [1.0, 0.0, -p[j] ** 2])
        num = np.polyadd(num, term)
    roots = companion_roots(num) if num.size > 1 else np.array([], dtype=complex)
    mi = float(np.max(np.abs(roots.imag))) if roots.size else 0.0
    return RealZeroReport(tuple(complex(r) for r in roots), mi, mi <= tol)
