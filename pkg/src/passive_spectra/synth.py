"""Symmetric realizations from pole/residue data and Foster RC/RL synthesis."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import NotZipError, ValidationError
from .model import PoleResidue, RationalFunction, Realization

__all__ = [
    "NetworkKind",
    "FosterNetwork",
    "pole_residue_from_rational",
    "symmetric_from_pole_residue",
    "realize",
    "foster1_rc",
    "foster2_rl",
    "netlist",
]


def _real_distinct_poles(f: RationalFunction, tol: float) -> np.ndarray:
    poles = f.poles()
    scale = max(1.0, float(np.max(np.abs(poles)))) if poles.size else 1.0
    if poles.size and np.max(np.abs(poles.imag)) > tol * scale:
        raise NotZipError("transfer function has nonreal poles")
    poles = np.sort(poles.real)
    if poles.size > 1 and np.min(np.diff(poles)) <= tol * scale:
        raise NotZipError("transfer function has repeated poles")
    return poles


def _residues(f: RationalFunction, poles: np.ndarray) -> np.ndarray:
    dden = np.polyder(np.asarray(f.den))
    return np.array([np.polyval(f.num, p) / np.polyval(dden, p) for p in poles])


def pole_residue_from_rational(f: RationalFunction, tol: float = 1e-9) -> PoleResidue:
    """Partial fractions ``g_inf + sum g_k/(s - p_k)`` of a ZIP function.

    Raises
    ------
    NotZipError
        Nonreal, repeated or nonnegative poles, a vanishing residue, or
        residues of mixed sign.
    """
    poles = _real_distinct_poles(f, tol)
    if poles.size and poles[-1] >= 0:
        raise NotZipError("poles must be negative")
    g = _residues(f, poles)
    scale = max(1.0, float(np.max(np.abs(g)))) if g.size else 1.0
    if g.size and np.min(np.abs(g)) <= tol * scale:
        raise NotZipError("vanishing residue: pole-zero cancellation")
    if g.size and not (np.all(g > 0) or np.all(g < 0)):
        raise NotZipError("residues have mixed signs")
    if f.gain <= 0:
        raise NotZipError("high-frequency gain must be positive")
    return PoleResidue(f.gain, tuple(poles), tuple(g))


def symmetric_from_pole_residue(pr: PoleResidue) -> Realization:
    """``A = diag(p)``, ``B = sqrt|g|``, ``C = sign * B^T``, ``D = g_inf``."""
    n = pr.order
    b = np.sqrt(np.abs(np.asarray(pr.residues, dtype=float))).reshape(n, 1)
    return Realization(np.diag(pr.poles).reshape(n, n), b, pr.sign * b.T, [[pr.g_inf]])


def realize(f: RationalFunction, tol: float = 1e-9) -> Realization:
    """State-space realization of a SISO biproper function.

    Symmetric when the function has ZIP structure; otherwise diagonal with
    ``C = [1 ... 1]`` for real distinct poles, else controllable canonical.
    """
    try:
        return symmetric_from_pole_residue(pole_residue_from_rational(f, tol))
    except (NotZipError, ValidationError):
        pass
    n = f.order
    try:
        poles = _real_distinct_poles(f, tol)
        g = _residues(f, poles)
        return Realization(np.diag(poles).reshape(n, n), g.reshape(n, 1), np.ones((1, n)),
                           [[f.gain]])
    except NotZipError:
        pass
    den = np.asarray(f.den)
    num = np.asarray(f.num)
    rem = num - f.gain * den  # strictly proper part numerator, degree < n
    A = np.zeros((n, n))
    A[0, :] = -den[1:]
    A[1:, :-1] = np.eye(n - 1)
    B = np.zeros((n, 1))
    B[0, 0] = 1.0
    C = rem[1:].reshape(1, n)
    return Realization(A, B, C, [[f.gain]])


class NetworkKind(str, Enum):
    RC_FOSTER_I = "RC_FosterI"
    RL_FOSTER_II = "RL_FosterII"


@dataclass(frozen=True)
class FosterNetwork:
    """One-port Foster network.

    ``RC_FosterI``: series resistor ``resistor`` followed by a chain of
    parallel (R_k, C_k) cells, realizing an impedance.
    ``RL_FosterII``: shunt resistor ``resistor`` in parallel with series
    (R_k, L_k) branches, realizing an admittance.
    """

    kind: NetworkKind
    resistor: float
    branches: tuple

    def __post_init__(self):
        vals = [self.resistor] + [v for br in self.branches for v in br]
        if not all(v > 0 for v in vals):
            raise ValidationError("element values must be positive")

    def __call__(self, s):
        """Driving-point impedance (Foster-I) or admittance (Foster-II)."""
        if self.kind is NetworkKind.RC_FOSTER_I:
            return self.resistor + sum(1.0 / (1.0 / R + s * C) for R, C in self.branches)
        return 1.0 / self.resistor + sum(1.0 / (R + s * L) for R, L in self.branches)

    def to_rational(self) -> RationalFunction:
        """Driving-point function assembled by exact polynomial arithmetic."""
        num = np.array([1.0])
        den = np.array([1.0])
        if self.kind is NetworkKind.RC_FOSTER_I:
            num = np.array([self.resistor])
            terms = [(np.array([R]), np.array([R * C, 1.0])) for R, C in self.branches]
        else:
            num = np.array([1.0 / self.resistor])
            terms = [(np.array([1.0]), np.array([L, R])) for R, L in self.branches]
        for tn, td in terms:
            num = np.polyadd(np.polymul(num, td), np.polymul(tn, den))
            den = np.polymul(den, td)
        return RationalFunction(num, den)


def _require_positive(pr: PoleResidue):
    if pr.sign < 0:
        raise NotZipError("Foster synthesis requires positive residues")


def foster1_rc(pr: PoleResidue) -> FosterNetwork:
    """RC impedance: series ``g_inf`` plus cells ``C_k = 1/g_k``, ``R_k = g_k/(-p_k)``."""
    _require_positive(pr)
    cells = tuple((g / -p, 1.0 / g) for p, g in zip(pr.poles, pr.residues))
    return FosterNetwork(NetworkKind.RC_FOSTER_I, pr.g_inf, cells)


def foster2_rl(pr: PoleResidue) -> FosterNetwork:
    """RL admittance: shunt ``1/g_inf`` plus branches ``L_k = 1/g_k``, ``R_k = -p_k/g_k``."""
    _require_positive(pr)
    branches = tuple((-p / g, 1.0 / g) for p, g in zip(pr.poles, pr.residues))
    return FosterNetwork(NetworkKind.RL_FOSTER_II, 1.0 / pr.g_inf, branches)


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def netlist(net: FosterNetwork) -> str:
    """SPICE-style two-terminal element list between nodes ``in`` and ``0``.

    One element per line, values in ohm/farad/henry with 12 significant
    digits, ordered by branch index.
    """
    lines = []
    k = len(net.branches)
    if net.kind is NetworkKind.RC_FOSTER_I:
        chain = ["in"] + [f"n{i}" for i in range(1, k + 1)] + ["0"]
        lines.append(f"R0 {chain[0]} {chain[1]} {_fmt(net.resistor)}")
        for i, (R, C) in enumerate(net.branches, start=1):
            a, b = chain[i], chain[i + 1]
            lines.append(f"R{i} {a} {b} {_fmt(R)}")
            lines.append(f"C{i} {a} {b} {_fmt(C)}")
    else:
        lines.append(f"R0 in 0 {_fmt(net.resistor)}")
        for i, (R, L) in enumerate(net.branches, start=1):
            lines.append(f"R{i} in m{i} {_fmt(R)}")
            lines.append(f"L{i} m{i} 0 {_fmt(L)}")
    return "\n".join(lines) + "\n"
