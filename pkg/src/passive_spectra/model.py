"""Domain types: realizations, rational functions, pole/residue data, spectra.

All types are immutable values.  Arrays held by :class:`Realization` are
copied on construction and flagged read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .exceptions import DimensionError, RankDeficiencyError, ValidationError

__all__ = [
    "SYMMETRY_TOL",
    "Realization",
    "SymmetryCertificate",
    "RationalFunction",
    "PoleResidue",
    "Spectrum",
    "OrderedReals",
    "validate_realization",
    "order_reals",
    "numerical_rank",
]

SYMMETRY_TOL = 1e-9


def _frozen(a, ndim=2):
    arr = np.array(a, dtype=float, copy=True)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1 and ndim == 2:
        raise DimensionError("expected a 2-D matrix, got a 1-D array; "
                             "use [[...]] for row or column vectors")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Realization:
    """State-space quadruple ``(A, B, C, D)`` with a square transfer matrix.

    Scalars are accepted for 1x1 blocks.  Shapes are checked here; rank
    conditions are checked by :func:`validate_realization`.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        for name in "ABCD":
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        A, B, C, D = self.A, self.B, self.C, self.D
        n = A.shape[0]
        if A.shape != (n, n):
            raise DimensionError(f"A must be square, got {A.shape}")
        if B.shape[0] != n:
            raise DimensionError(f"B has {B.shape[0]} rows, A has {n}")
        m = B.shape[1]
        if C.shape != (m, n):
            raise DimensionError(f"C must be {m}x{n} (square transfer matrix), got {C.shape}")
        if D.shape != (m, m):
            raise DimensionError(f"D must be {m}x{m}, got {D.shape}")
        if not all(np.all(np.isfinite(M)) for M in (A, B, C, D)):
            raise ValidationError("realization contains non-finite entries")

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    @property
    def is_siso(self) -> bool:
        return self.m == 1

    def transfer(self, s: complex) -> np.ndarray:
        """Evaluate ``G(s) = C (sI - A)^{-1} B + D``."""
        M = s * np.eye(self.n) - self.A
        return self.C @ np.linalg.solve(M, self.B) + self.D

    def similarity(self, T, T_inv=None) -> "Realization":
        """Realization in coordinates ``x = T x_new``.

        ``T_inv`` may be supplied when a more accurate inverse is at hand.
        """
        T = np.asarray(T, dtype=float)
        Ti = np.linalg.inv(T) if T_inv is None else np.asarray(T_inv, dtype=float)
        return Realization(Ti @ self.A @ T, Ti @ self.B, self.C @ T, self.D)

    def with_feedthrough(self, D) -> "Realization":
        return Realization(self.A, self.B, self.C, D)

    def dual(self) -> "Realization":
        """Transposed realization ``(A^T, C^T, B^T, D^T)``."""
        return Realization(self.A.T, self.C.T, self.B.T, self.D.T)

    def to_rational(self) -> "RationalFunction":
        """Transfer function of a SISO realization with nonzero ``D``.

        Uses ``G(s) = D det(sI - A + B D^{-1} C) / det(sI - A)``.
        """
        if not self.is_siso:
            raise DimensionError("to_rational requires a SISO realization")
        d = float(self.D[0, 0])
        if d == 0.0:
            raise ValidationError("to_rational requires a biproper realization (D != 0)")
        den = np.poly(self.A) if self.n else np.array([1.0])
        num = d * (np.poly(self.A - self.B @ self.C / d) if self.n else np.array([1.0]))
        return RationalFunction(np.real(num), np.real(den))

    def __repr__(self):
        return f"Realization(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SymmetryCertificate:
    is_symmetric: bool
    sign: int
    defect: float


def numerical_rank(M: np.ndarray) -> int:
    """Rank with the singular-value threshold ``max(shape) * eps * sigma_max``."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > max(M.shape) * np.finfo(float).eps * s[0]))


def validate_realization(R: Realization, tol: float = SYMMETRY_TOL,
                         check_rank: bool = True) -> SymmetryCertificate:
    """Check structural assumptions and certify state-space symmetry.

    ``sign`` is +1 for ``B = C^T``, -1 for ``B = -C^T`` and 0 when neither
    holds within ``tol``.  ``defect`` is the largest elementwise deviation
    from symmetry, using whichever sign of ``B = +-C^T`` fits better.

    Raises
    ------
    DimensionError
        If ``n < m``.
    RankDeficiencyError
        If ``B`` lacks full column rank or ``C`` lacks full row rank.
    """
    if R.n < R.m:
        raise DimensionError(f"state dimension n={R.n} is smaller than port dimension m={R.m}")
    if check_rank:
        if numerical_rank(R.B) < R.m:
            raise RankDeficiencyError("B is not full column rank")
        if numerical_rank(R.C) < R.m:
            raise RankDeficiencyError("C is not full row rank")

    def maxabs(M):
        return float(np.max(np.abs(M))) if M.size else 0.0

    dA = maxabs(R.A - R.A.T)
    dD = maxabs(R.D - R.D.T)
    plus = maxabs(R.B - R.C.T)
    minus = maxabs(R.B + R.C.T)
    dB = min(plus, minus)
    defect = max(dA, dB, dD)
    if plus <= tol:
        sign = 1
    elif minus <= tol:
        sign = -1
    else:
        sign = 0
    return SymmetryCertificate(is_symmetric=bool(defect <= tol and sign != 0),
                               sign=sign, defect=defect)


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    return c[nz[0]:] if nz.size else np.zeros(1)


@dataclass(frozen=True)
class RationalFunction:
    """Biproper SISO transfer function ``n(s)/d(s)``, descending powers.

    The denominator is normalized monic on construction.
    """

    num: tuple
    den: tuple

    def __post_init__(self):
        num = _trim(np.atleast_1d(np.asarray(self.num, dtype=float)))
        den = _trim(np.atleast_1d(np.asarray(self.den, dtype=float)))
        if not (np.all(np.isfinite(num)) and np.all(np.isfinite(den))):
            raise ValidationError("non-finite coefficients")
        if den[0] == 0.0:
            raise ValidationError("zero denominator")
        if num[0] == 0.0 or len(num) != len(den):
            raise ValidationError("transfer function must be biproper "
                                  f"(deg num = deg den), got {len(num) - 1} and {len(den) - 1}")
        lead = den[0]
        object.__setattr__(self, "num", tuple(float(x) for x in num / lead))
        object.__setattr__(self, "den", tuple(float(x) for x in den / lead))

    @classmethod
    def from_roots(cls, zeros: Sequence[float], poles: Sequence[float],
                   gain: float = 1.0) -> "RationalFunction":
        return cls(gain * np.real(np.poly(zeros)), np.real(np.poly(poles)))

    @property
    def order(self) -> int:
        return len(self.den) - 1

    @property
    def gain(self) -> float:
        """High-frequency gain ``G(inf)``."""
        return self.num[0]

    def poles(self) -> np.ndarray:
        return np.roots(self.den) if self.order else np.array([])

    def zeros(self) -> np.ndarray:
        return np.roots(self.num) if self.order else np.array([])

    def __call__(self, s):
        return np.polyval(self.num, s) / np.polyval(self.den, s)


@dataclass(frozen=True)
class PoleResidue:
    """Partial-fraction form ``g_inf + sum_k g_k / (s - p_k)``.

    Poles are real, negative and strictly increasing; residues share one sign.
    """

    g_inf: float
    poles: tuple
    residues: tuple
    sign: int = field(default=0)

    def __post_init__(self):
        poles = tuple(float(p) for p in np.atleast_1d(self.poles))
        res = tuple(float(g) for g in np.atleast_1d(self.residues))
        if len(poles) != len(res):
            raise DimensionError("poles and residues differ in length")
        if not self.g_inf > 0:
            raise ValidationError("g_inf must be positive")
        if any(p >= 0 for p in poles):
            raise ValidationError("poles must be negative")
        if any(b <= a for a, b in zip(poles, poles[1:])):
            raise ValidationError("poles must be distinct and strictly increasing")
        if any(g == 0 for g in res):
            raise ValidationError("zero residue (pole-zero cancellation)")
        signs = {int(np.sign(g)) for g in res}
        if len(signs) > 1:
            raise ValidationError("residues must share one sign")
        sign = signs.pop() if signs else 1
        if self.sign not in (0, sign):
            raise ValidationError("declared sign disagrees with residues")
        object.__setattr__(self, "g_inf", float(self.g_inf))
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "residues", res)
        object.__setattr__(self, "sign", sign)

    @property
    def order(self) -> int:
        return len(self.poles)

    def __call__(self, s):
        return self.g_inf + sum(g / (s - p) for p, g in zip(self.poles, self.residues))

    def to_rational(self) -> RationalFunction:
        den = np.poly(self.poles) if self.poles else np.array([1.0])
        num = self.g_inf * den
        for k, (p, g) in enumerate(zip(self.poles, self.residues)):
            others = [q for j, q in enumerate(self.poles) if j != k]
            num = np.polyadd(num, g * np.poly(others) if others else np.array([g]))
        return RationalFunction(num, den)


@dataclass(frozen=True)
class Spectrum:
    """Multiset of eigenvalues sorted ascending by real, then imaginary part."""

    values: tuple

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex).ravel()
        order = np.lexsort((vals.imag, vals.real))
        object.__setattr__(self, "values", tuple(complex(v) for v in vals[order]))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=complex)

    @property
    def stable_indices(self) -> tuple:
        return tuple(i for i, v in enumerate(self.values) if v.real < 0)

    @property
    def antistable_indices(self) -> tuple:
        return tuple(i for i, v in enumerate(self.values) if v.real > 0)

    @property
    def stable(self) -> np.ndarray:
        return self.as_array()[list(self.stable_indices)]

    @property
    def antistable(self) -> np.ndarray:
        return self.as_array()[list(self.antistable_indices)]

    @property
    def max_imag(self) -> float:
        return float(np.max(np.abs(self.as_array().imag))) if self.values else 0.0

    def is_real(self, tol: float = 1e-8) -> bool:
        return self.max_imag <= tol

    def real_parts(self) -> np.ndarray:
        return self.as_array().real


@dataclass(frozen=True)
class OrderedReals:
    """Ascending reals with successive gaps ``diffs[i] = values[i+1] - values[i]``."""

    values: tuple
    diffs: tuple
    nu_min: Optional[float]
    nu_max: Optional[float]

    def __len__(self):
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)


def order_reals(xs) -> OrderedReals:
    """Sort ascending (stable on ties) and record successive gaps.

    ``nu_min``/``nu_max`` are ``None`` for a singleton.
    """
    if isinstance(xs, OrderedReals):
        xs = xs.values
    arr = np.asarray(list(xs), dtype=float).ravel()
    if arr.size == 0:
        raise ValidationError("order_reals needs at least one value")
    arr = arr[np.argsort(arr, kind="stable")]
    diffs = np.diff(arr)
    return OrderedReals(
        values=tuple(float(v) for v in arr),
        diffs=tuple(float(d) for d in diffs),
        nu_min=float(diffs.min()) if diffs.size else None,
        nu_max=float(diffs.max()) if diffs.size else None,
    )
