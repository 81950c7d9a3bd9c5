"""Realization formulas: from colligation to function and back.

A valid colligation (a, beta, gamma, D; U, R) realizes

    f(s) = a + < s_{U,R} u(s), beta >,    u(s) = (1 - D s_{U,R})^{-1} gamma,

and f then satisfies the model identity

    1 - conj(f(t)) f(s) = < (1 - t_{U,R}* s_{U,R}) u(s), u(t) >

for all s, t in r.G, which in particular bounds |f| by 1.  Conversely,
:func:`realization_from_model` recovers a colligation from any model
(u_eval, f_eval) satisfying that identity, by completing the partial
isometry that sends [1; s_{U,R} u(s)] to [f(s); u(s)] across a family of
sample points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .colligation import Colligation, ROperator, s_T, s_UR, validate_colligation
from .domains import Point2, check_r, in_rG, sample_rG
from .errors import GramianMismatch, InvalidParams, NotInvertible, OutsideDomain

Evaluator = Callable[[Sequence[complex]], np.ndarray]
ScalarEvaluator = Callable[[Sequence[complex]], complex]


@dataclass(eq=False, frozen=True)
class GrModel:
    """A function on r.G presented through a model map into C^dim.

    ``u_eval`` and ``f_eval`` must jointly satisfy the model identity with
    respect to the fraction built from (U, R); nothing is checked at
    construction, :func:`realization_from_model` verifies before it builds.
    """

    dim: int
    U: np.ndarray
    R: ROperator
    u_eval: Evaluator
    f_eval: ScalarEvaluator


def eval_u(c: Colligation, s) -> np.ndarray:
    """The model map u(s) = (1 - D s_{U,R})^{-1} gamma of a colligation."""
    frac = s_UR(s, c.U, c.R)
    eye = np.eye(c.dim)
    try:
        return np.linalg.solve(eye - c.D @ frac, c.gamma)
    except np.linalg.LinAlgError as exc:  # ||D s_{U,R}|| < 1 in-domain
        raise NotInvertible(f"1 - D s_UR singular at {tuple(s)}") from exc


def eval_f(c: Colligation, s) -> complex:
    """The realized function a + <s_{U,R} u(s), beta>."""
    frac = s_UR(s, c.U, c.R)
    return c.a + complex(np.vdot(c.beta, frac @ eval_u(c, s)))


def model_residual(c: Colligation, s, t) -> float:
    """Defect of the model identity at the ordered pair (s, t)."""
    frac_s = s_UR(s, c.U, c.R)
    frac_t = s_UR(t, c.U, c.R)
    u_s = eval_u(c, s)
    u_t = eval_u(c, t)
    f_s = eval_f(c, s)
    f_t = eval_f(c, t)
    eye = np.eye(c.dim)
    lhs = 1.0 - f_t.conjugate() * f_s
    rhs = np.vdot(u_t, (eye - frac_t.conj().T @ frac_s) @ u_s)
    return abs(lhs - rhs)


@dataclass(frozen=True)
class CertReport:
    n: int
    seed: int
    max_abs_f: float
    max_diag_residual: float
    passed: bool


def schur_certify(
    c: Colligation,
    n: int,
    seed: int,
    tol: float = 1e-12,
    residual_tol: float = 1e-9,
) -> CertReport:
    """Sample r.G and certify |f| <= 1 + tol and the diagonal model identity.

    With n = 0 the report passes vacuously.
    """
    max_abs = 0.0
    max_diag = 0.0
    for s in sample_rG(n, c.r, seed):
        max_abs = max(max_abs, abs(eval_f(c, s)))
        max_diag = max(max_diag, model_residual(c, s, s))
    passed = (max_abs <= 1.0 + tol) and (max_diag <= residual_tol)
    return CertReport(
        n=n, seed=seed, max_abs_f=max_abs, max_diag_residual=max_diag, passed=passed
    )


def realization_from_model(
    m: GrModel, sample_pts: Sequence[Point2], tol: float = 1e-10
) -> Colligation:
    """Extract a colligation whose realized function matches the model.

    The families [1; s_{U,R} u(s_i)] and [f(s_i); u(s_i)] in C (+) C^dim
    have equal Gramians exactly when the model identity holds on all sample
    pairs, so the identity is verified first (GramianMismatch carries the
    worst pair residual on failure).  The partial isometry between the
    families is then completed to a unitary on C^{1+dim} and the blocks are
    read off.  Sampling enough points in general position (in practice
    4 (dim + 1) suffices) saturates the span, and no enlargement of the
    state space is ever needed at finite dimension.
    """
    pts = list(sample_pts)
    if not pts:
        raise InvalidParams("at least one sample point is required")
    fracs = [s_UR(s, m.U, m.R) for s in pts]
    us = [linalg.as_vector(m.u_eval(s), "u(s)") for s in pts]
    fs = [complex(m.f_eval(s)) for s in pts]
    eye = np.eye(m.dim)
    worst = 0.0
    for i in range(len(pts)):
        for j in range(len(pts)):
            lhs = 1.0 - fs[i].conjugate() * fs[j]
            rhs = np.vdot(us[i], (eye - fracs[i].conj().T @ fracs[j]) @ us[j])
            worst = max(worst, abs(lhs - rhs))
    if worst > tol:
        raise GramianMismatch(
            f"model identity fails on sample pairs: residual {worst:.3e} > {tol:.1e}",
            residual=worst,
        )
    a_fam = np.column_stack(
        [np.concatenate([[1.0 + 0.0j], frac @ u]) for frac, u in zip(fracs, us)]
    )
    b_fam = np.column_stack(
        [np.concatenate([[f], u]) for f, u in zip(fs, us)]
    )
    isom = linalg.isometry_from_gramians(a_fam, b_fam, tol)
    big_l = linalg.unitary_extension(isom, 1 + m.dim)
    return Colligation(
        r=m.R.r,
        split=m.R.split,
        a=big_l[0, 0],
        beta=big_l[0, 1:].conj().copy(),
        gamma=big_l[1:, 0].copy(),
        D=big_l[1:, 1:].copy(),
        U=m.U,
    )


def scaled_model_residual(
    T: np.ndarray,
    v_eval: Evaluator,
    f_eval: ScalarEvaluator,
    s,
    t,
    r: float,
) -> float:
    """Defect of the scaled model identity carried over from G by the scaling map.

    Given a contraction T on the model space and X = T / r, measures

        |1 - conj(f(t)) f(s) - <(1 - r^{-2} t_X* s_X) v(s), v(t)>|

    at a pair of points of r.G.  The pairing is stated so that the point in
    the linear slot of the kernel (s) is the argument of the unconjugated f.
    """
    check_r(r)
    if not in_rG(s, r, margin=0.0):
        raise OutsideDomain(f"first point {tuple(s)} is not in r.G")
    if not in_rG(t, r, margin=0.0):
        raise OutsideDomain(f"second point {tuple(t)} is not in r.G")
    x = linalg._as_square(np.asarray(T, dtype=complex) / r, "X")
    frac_s = s_T(s, x)
    frac_t = s_T(t, x)
    eye = np.eye(x.shape[0])
    v_s = linalg.as_vector(v_eval(s), "v(s)")
    v_t = linalg.as_vector(v_eval(t), "v(t)")
    lhs = 1.0 - complex(f_eval(t)).conjugate() * complex(f_eval(s))
    rhs = np.vdot(v_t, (eye - frac_t.conj().T @ frac_s / (r * r)) @ v_s)
    return abs(lhs - rhs)


@dataclass(eq=False, frozen=True)
class RealizedFunction:
    """A colligation frozen together with the guarantee that it validates.

    Construction runs :func:`validate_colligation` at 1e-8 and refuses
    defective input, so instances can be passed around as certified
    Schur-class functions and called directly.
    """

    colligation: Colligation

    def __post_init__(self):
        report = validate_colligation(self.colligation, tol=1e-8)
        if not report.passed:
            worst = max(report.checks, key=lambda ch: ch.residual)
            raise InvalidParams(
                f"colligation fails validation: {worst.name} residual {worst.residual:.3e}"
            )

    @property
    def r(self) -> float:
        return self.colligation.r

    def __call__(self, s) -> complex:
        return eval_f(self.colligation, s)
