"""Positive-real balancing and the two quasi-balanced forms.

State transforms follow ``x = T x_new``, so storage matrices transform by
congruence ``K_new = T^T K T``.

Forms
-----
``pr``
    ``K_min = K_max^{-1} = diag(sigma)``, ``0 < sigma <= 1``.
``quasi1``
    ``K_max = I``, ``K_min = diag(sigma_plus)``, ``0 < sigma_plus <= 1``.
``quasi2``
    ``K_min = I``, ``K_max = diag(sigma_minus)``, ``sigma_minus >= 1``.

The singular values satisfy ``sigma = sqrt(sigma_plus) = 1/sqrt(sigma_minus)``
as ascending multisets.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import (
    NotPositiveDefiniteError,
    NotStrictlyPassiveError,
    NotSymmetricError,
    ValidationError,
)
from .linops import SquareRootFactors, square_root_factors
from .model import SYMMETRY_TOL, Realization, validate_realization
from .passivity import (
    StoragePair,
    are_residual,
    are_tolerance,
    extremal_solutions,
    minimal_solution,
)

__all__ = [
    "Form",
    "BalancedRealization",
    "SingularValueReport",
    "SymmetricBalanceReport",
    "pr_balance",
    "quasi_balance_form1",
    "quasi_balance_form2",
    "form1_to_form2",
    "form2_to_form1",
    "form_defect",
    "recomputed_storage",
    "singular_value_relations",
    "check_symmetric_implies_balanced",
]


class Form(str, Enum):
    PR = "pr"
    QUASI_I = "quasi1"
    QUASI_II = "quasi2"


@dataclass(frozen=True, eq=False)
class BalancedRealization:
    realization: Realization
    form: Form
    sigma: np.ndarray
    T: np.ndarray


def _factors(R: Realization, storage: StoragePair | None) -> SquareRootFactors:
    # K_max^{-1} is the K_min of the dual system; using it avoids inverting K_max
    if storage is None:
        Q = minimal_solution(R)
        P = minimal_solution(R.dual())
    else:
        Q = storage.K_min
        P = np.linalg.inv(storage.K_max)
        P = (P + P.T) / 2
    try:
        return square_root_factors(Q, P, tol=np.inf)
    except NotPositiveDefiniteError as exc:
        raise NotStrictlyPassiveError("storage matrix is not positive definite") from exc


def _balanced(R, f: SquareRootFactors, form: Form, power: float) -> BalancedRealization:
    # T = Lc V diag(s)^-power, T^{-1} = diag(s)^(power-1) U^T Lo^T
    T = (f.Lc @ f.V) * f.s ** -power
    T_inv = (f.s ** (power - 1))[:, None] * (f.U.T @ f.Lo.T)
    sigma = {Form.PR: f.s, Form.QUASI_I: f.s ** 2, Form.QUASI_II: f.s ** -2}[form]
    if form is Form.QUASI_II:
        order = np.argsort(sigma, kind="stable")
        T, T_inv, sigma = T[:, order], T_inv[order], sigma[order]
    return BalancedRealization(R.similarity(T, T_inv), form, sigma, T)


def pr_balance(R: Realization, storage: StoragePair | None = None) -> BalancedRealization:
    """Positive-real balanced realization with ascending ``sigma``.

    Computed by the square-root method: with ``K_min = Lo Lo^T`` and
    ``K_max^{-1} = Lc Lc^T``, ``sigma`` are the singular values of ``Lo^T Lc``.
    """
    return _balanced(R, _factors(R, storage), Form.PR, 0.5)


def quasi_balance_form1(R: Realization, storage: StoragePair | None = None) -> BalancedRealization:
    """Form-I: ``K_max = I`` and ``K_min = diag(sigma_plus)`` ascending."""
    return _balanced(R, _factors(R, storage), Form.QUASI_I, 0.0)


def quasi_balance_form2(R: Realization, storage: StoragePair | None = None) -> BalancedRealization:
    """Form-II: ``K_min = I`` and ``K_max = diag(sigma_minus)`` ascending."""
    return _balanced(R, _factors(R, storage), Form.QUASI_II, 1.0)


def _swap_forms(B: BalancedRealization, source: Form, target: Form) -> BalancedRealization:
    if B.form is not source:
        raise ValidationError(f"expected a {source.value} realization, got {B.form.value}")
    sig = np.asarray(B.sigma, dtype=float)
    new_sigma = 1.0 / sig
    order = np.argsort(new_sigma, kind="stable")
    # scale each state, then permute so the new diagonal is ascending
    step = np.diag(sig ** -0.5)[:, order]
    step_inv = np.diag(sig ** 0.5)[order, :]
    return BalancedRealization(B.realization.similarity(step, step_inv), target,
                               new_sigma[order], B.T @ step)


def form1_to_form2(B1: BalancedRealization) -> BalancedRealization:
    """Rescale a Form-I realization by ``diag(sigma_plus)^{-1/2}`` into Form-II."""
    return _swap_forms(B1, Form.QUASI_I, Form.QUASI_II)


def form2_to_form1(B2: BalancedRealization) -> BalancedRealization:
    return _swap_forms(B2, Form.QUASI_II, Form.QUASI_I)


def _targets(B: BalancedRealization):
    # claimed K_min and K_max^{-1}
    d = np.diag(B.sigma)
    eye = np.eye(len(B.sigma))
    if B.form is Form.PR:
        return d, d
    if B.form is Form.QUASI_I:
        return d, eye
    return eye, np.diag(1.0 / B.sigma)


def recomputed_storage(B: BalancedRealization):
    """``(K_min, K_max^{-1})`` of a balanced realization, solved afresh.

    ``K_max^{-1}`` is taken as ``K_min`` of the dual system.
    """
    return minimal_solution(B.realization), minimal_solution(B.realization.dual())


def form_defect(B: BalancedRealization, recomputed=None) -> float:
    """Largest entrywise deviation of ``K_min`` and ``K_max^{-1}`` from the claimed form.

    Both targets have entries in ``[0, 1]``, so the deviation is absolute.
    """
    Q, P = recomputed if recomputed is not None else recomputed_storage(B)
    tq, tp = _targets(B)
    return float(max(np.max(np.abs(Q - tq)), np.max(np.abs(P - tp))))


@dataclass(frozen=True, eq=False)
class SingularValueReport:
    """Singular values read back from freshly recomputed storage matrices.

    ``sigma`` is ``diag(K_min)`` of the PR-balanced realization,
    ``sigma_plus`` is ``diag(K_min)`` of Form-I and ``sigma_minus`` is
    ``1/diag(K_max^{-1})`` of Form-II, all sorted ascending.
    """

    sigma: np.ndarray
    sigma_plus: np.ndarray
    sigma_minus: np.ndarray
    sqrt_sigma_plus: np.ndarray
    inv_sqrt_sigma_minus: np.ndarray
    max_deviation: float
    form_defects: tuple = ()

    def holds(self, tol: float = 1e-8) -> bool:
        return self.max_deviation <= tol


def singular_value_relations(R: Realization) -> SingularValueReport:
    """Compare ``sigma``, ``sqrt(sigma_plus)`` and ``1/sqrt(sigma_minus)``.

    Each balanced realization has its storage recomputed from its own
    Hamiltonian, so the three lists are obtained independently of the
    transforms that produced them.
    """
    f = _factors(R, None)
    forms = [_balanced(R, f, form, p) for form, p in
             ((Form.PR, 0.5), (Form.QUASI_I, 0.0), (Form.QUASI_II, 1.0))]
    pr, q1, q2 = (recomputed_storage(b) for b in forms)
    s = np.sort(np.diag(pr[0]))
    sp = np.sort(np.diag(q1[0]))
    sm = np.sort(1.0 / np.diag(q2[1]))
    a = np.sort(np.sqrt(sp))
    b = np.sort(1.0 / np.sqrt(sm))
    dev = float(max(np.max(np.abs(s - a)), np.max(np.abs(s - b)))) if s.size else 0.0
    defects = tuple(form_defect(b, k) for b, k in zip(forms, (pr, q1, q2)))
    return SingularValueReport(s, sp, sm, a, b, dev, defects)


@dataclass(frozen=True, eq=False)
class SymmetricBalanceReport:
    balanced: bool
    product_defect: float
    inverse_residual_max: float
    inverse_residual_min: float
    storage: StoragePair


def check_symmetric_implies_balanced(R: Realization, tol: float = 1e-8,
                                     sym_tol: float = SYMMETRY_TOL) -> SymmetricBalanceReport:
    """Verify ``K_max K_min = I`` and that ``K^{-1}`` also solves the ARE.

    Raises
    ------
    NotSymmetricError
        The realization is not state-space symmetric.
    """
    cert = validate_realization(R, sym_tol)
    if not cert.is_symmetric:
        raise NotSymmetricError(f"realization is not symmetric (defect {cert.defect:.3g})")
    st = extremal_solutions(R)
    prod = float(np.linalg.norm(st.K_max @ st.K_min - np.eye(R.n), 2))
    inv_max = np.linalg.inv(st.K_max)
    inv_min = np.linalg.inv(st.K_min)
    r_max = are_residual(R, (inv_max + inv_max.T) / 2)
    r_min = are_residual(R, (inv_min + inv_min.T) / 2)
    ok = (prod <= tol
          and r_max <= are_tolerance(R, inv_max, tol)
          and r_min <= are_tolerance(R, inv_min, tol))
    return SymmetricBalanceReport(bool(ok), prod, r_max, r_min, st)
