import numpy as np
import pytest

from skewbidisc import domains
from skewbidisc.colligation import SubspaceSplit, build_R
from skewbidisc.errors import InvalidParams, OutsideDomain, ShapeMismatch
from skewbidisc.kernels import (
    KernelContext,
    bidisc_model_residual,
    factorization_residual,
    hermitian_symmetry_residual,
    kernel_Y,
    kernel_Z,
    substitution_residual,
)
from skewbidisc.linalg import haar_unitary


@pytest.fixture
def ctx():
    R = build_R(SubspaceSplit(1, 2), 0.5)
    return KernelContext(U=haar_unitary(3, 42), R=R)


def test_context_rejects_mismatched_shapes():
    R = build_R(SubspaceSplit(1, 1), 0.5)
    with pytest.raises(ShapeMismatch):
        KernelContext(U=np.eye(3, dtype=complex), R=R)


def test_context_rejects_nonunitary():
    R = build_R(SubspaceSplit(1, 1), 0.5)
    with pytest.raises(InvalidParams):
        KernelContext(U=1.5 * np.eye(2, dtype=complex), R=R)


def test_kernels_at_origin(ctx):
    np.testing.assert_allclose(kernel_Y(ctx, (0.0, 0.0), (0.0, 0.0)), 2 * np.eye(3), atol=1e-14)
    np.testing.assert_allclose(kernel_Z(ctx, (0.0, 0.0), (0.0, 0.0)), 2 * np.eye(3), atol=1e-14)


def test_substitution_identity(ctx):
    pts = domains.sample_skew_bidisc(80, ctx.r, seed=6)
    worst = max(
        substitution_residual(ctx, lam, mu) for lam, mu in zip(pts[:40], pts[40:])
    )
    assert worst < 1e-12


def test_factorization_identity(ctx):
    pts = domains.sample_rG(80, ctx.r, seed=7)
    worst = max(
        factorization_residual(ctx, s, t) for s, t in zip(pts[:40], pts[40:])
    )
    assert worst < 1e-12


def test_hermitian_symmetry(ctx):
    pts = domains.sample_rG(40, ctx.r, seed=8)
    worst = max(
        hermitian_symmetry_residual(ctx, s, t) for s, t in zip(pts[:20], pts[20:])
    )
    assert worst < 1e-13


def test_diagonal_Y_is_positive(ctx):
    # On the diagonal the factorized form shows Y(s,s) >= 0.
    for s in domains.sample_rG(30, ctx.r, seed=9):
        Y = kernel_Y(ctx, s, s)
        eigs = np.linalg.eigvalsh(0.5 * (Y + Y.conj().T))
        assert eigs.min() > -1e-12


def test_kernel_domain_guards(ctx):
    r = ctx.r
    with pytest.raises(OutsideDomain):
        kernel_Y(ctx, (2 * r, r * r), (0.0, 0.0))
    with pytest.raises(OutsideDomain):
        kernel_Z(ctx, (r, 1.0), (0.0, 0.0))


def _lambda12_maps():
    u1 = lambda lam: np.array([1.0 + 0.0j])
    u2 = lambda lam: np.array([lam[0]], dtype=complex)
    phi = lambda lam: lam[0] * lam[1]
    return u1, u2, phi


def test_bidisc_model_residual_for_product_function():
    # u1 = 1, u2 = lam1 and phi = lam1 lam2 satisfy the two-variable model
    # identity exactly, so the residual is pure roundoff.
    u1, u2, phi = _lambda12_maps()
    r = 0.5
    pts = domains.sample_skew_bidisc(40, r, seed=10)
    pts = [(lam[0] / r, lam[1]) for lam in pts]  # stretch onto the full bidisc
    worst = max(
        bidisc_model_residual(u1, u2, phi, lam, mu)
        for lam, mu in zip(pts[:20], pts[20:])
    )
    assert worst < 1e-13


def test_bidisc_model_residual_detects_wrong_function():
    u1, u2, _ = _lambda12_maps()
    wrong = lambda lam: lam[0]
    res = bidisc_model_residual(u1, u2, wrong, (0.3, 0.4), (0.1, -0.2))
    assert res > 1e-3


def test_bidisc_model_residual_domain_guard():
    u1, u2, phi = _lambda12_maps()
    with pytest.raises(OutsideDomain):
        bidisc_model_residual(u1, u2, phi, (1.2, 0.0), (0.0, 0.0))
