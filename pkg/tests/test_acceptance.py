"""End-to-end acceptance campaign.

Nine criteria, each with a fixed seed, sample budget, and tolerance.  Every
test prints a single [acceptance] line so the verdicts can be grepped out
of the pytest log, then asserts.  Tolerances here are contractual: they must
not be loosened to accommodate a regression.
"""

import numpy as np
import pytest

from skewbidisc import domains
from skewbidisc.catalog import (
    RankOneParams,
    named_params,
    rank_one_build,
    random_params,
    validate_params,
)
from skewbidisc.colligation import (
    Colligation,
    SubspaceSplit,
    build_R,
    random_colligation,
    s_T,
    s_UR,
    s_UR_bound,
    validate_colligation,
)
from skewbidisc.errors import GramianMismatch, InvalidParams
from skewbidisc.kernels import (
    KernelContext,
    factorization_residual,
    kernel_Z,
    substitution_residual,
)
from skewbidisc.linalg import haar_unitary, spectral_norm
from skewbidisc.realization import eval_f, model_residual, realization_from_model
from skewbidisc.synthesis import (
    BidiscModelSpec,
    PolyVectorMap,
    ScalarPoly,
    eval_u_model,
    eval_w,
    model_f_eval,
    synthesis_sample_points,
    synthesize,
    wrap_as_GrModel,
)

R_VALUES = (0.25, 0.5, 0.9)
SPLITS = (SubspaceSplit(1, 1), SubspaceSplit(2, 3))


def _verdict(number: int, name: str, ok: bool, detail: str = "") -> None:
    tail = f" ({detail})" if detail else ""
    print(f"[acceptance] criterion {number} ({name}): {'PASS' if ok else 'FAIL'}{tail}")


def _campaign_colligations():
    out = []
    for name in ("upsilon", "magic", "blend", "rank-one"):
        colligation, _ = rank_one_build(named_params(name, 0.5, seed=40))
        out.append((name, colligation))
    for i, split in enumerate((SubspaceSplit(1, 1), SubspaceSplit(1, 2), SubspaceSplit(2, 2))):
        out.append((f"random-{i}", random_colligation(split, 0.5, seed=101 + i)))
    return out


def _lambda12_spec(r=0.5):
    return BidiscModelSpec(
        r=r,
        d1=1,
        d2=1,
        u1=PolyVectorMap(dim=1, terms=(((0, 0), np.array([1.0])),)),
        u2=PolyVectorMap(dim=1, terms=(((1, 0), np.array([1.0])),)),
        F=ScalarPoly((((1, 1), 1.0 + 0j),)),
    )


def test_criterion_1_contraction_bound():
    worst_norm = 0.0
    worst_slack = -np.inf
    seed = 1000
    for r in R_VALUES:
        for split in SPLITS:
            R = build_R(split, r)
            pts = domains.sample_rG(1000, r, seed)
            bounds = [s_UR_bound(s, r) for s in pts]
            for k in range(5):
                U = haar_unitary(split.total, seed + 10 + k)
                for s, bound in zip(pts, bounds):
                    norm = spectral_norm(s_UR(s, U, R))
                    worst_norm = max(worst_norm, norm)
                    worst_slack = max(worst_slack, norm - bound)
            seed += 1
    ok = worst_norm < 1.0 and worst_slack <= 1e-10
    _verdict(1, "fraction contraction bound", ok,
             f"max norm {worst_norm:.6f}, max excess over bound {worst_slack:.2e}")
    assert ok


def test_criterion_2_kernel_factorization():
    worst = 0.0
    seed = 2000
    for r in R_VALUES:
        for split in SPLITS:
            ctx = KernelContext(haar_unitary(split.total, seed), build_R(split, r))
            pts = domains.sample_rG(200, r, seed + 1)
            for s, t in zip(pts[:100], pts[100:]):
                worst = max(worst, factorization_residual(ctx, s, t))
            seed += 2
    ok = worst < 1e-10
    _verdict(2, "kernel factorization", ok, f"max residual {worst:.2e}")
    assert ok


def test_criterion_3_kernel_substitution():
    worst = 0.0
    seed = 3000
    for r in R_VALUES:
        for split in SPLITS:
            ctx = KernelContext(haar_unitary(split.total, seed), build_R(split, r))
            pts = domains.sample_skew_bidisc(200, r, seed + 1)
            for lam, mu in zip(pts[:100], pts[100:]):
                worst = max(worst, substitution_residual(ctx, lam, mu))
            seed += 2
    ok = worst < 1e-10
    _verdict(3, "kernel substitution", ok, f"max residual {worst:.2e}")
    assert ok


def test_criterion_4_model_identity_grid():
    worst = 0.0
    for label, c in _campaign_colligations():
        pts = domains.sample_rG(20, c.r, seed=4000)
        local = max(model_residual(c, s, t) for s in pts for t in pts)
        worst = max(worst, local)
    ok = worst < 1e-9
    _verdict(4, "model identity on pair grids", ok, f"max residual {worst:.2e}")
    assert ok


def test_criterion_5_schur_bound():
    worst = 0.0
    for label, c in _campaign_colligations():
        for s in domains.sample_rG(1000, c.r, seed=5000):
            worst = max(worst, abs(eval_f(c, s)))
    ok = worst <= 1.0 + 1e-12
    _verdict(5, "schur bound", ok, f"max |f| = {worst:.15f}")
    assert ok


def test_criterion_6_closed_form_crosscheck():
    worst_gap = 0.0
    for name in ("upsilon", "magic", "blend", "rank-one"):
        colligation, closed = rank_one_build(named_params(name, 0.5, seed=60))
        for s in domains.sample_rG(500, 0.5, seed=61):
            worst_gap = max(worst_gap, abs(closed(s) - eval_f(colligation, s)))
    omega = np.exp(2.2j)
    worst_ups = 0.0
    for r in R_VALUES:
        for s in domains.sample_rG(500, r, seed=62):
            direct = domains.upsilon(omega, r, s)
            via_phi = domains.mobius_phi(omega / r, s) / r
            worst_ups = max(worst_ups, abs(direct - via_phi))
    ok = worst_gap < 1e-10 and worst_ups <= 1e-12
    _verdict(6, "closed-form crosscheck", ok,
             f"max dual-path gap {worst_gap:.2e}, max scaled-fraction gap {worst_ups:.2e}")
    assert ok


def test_criterion_7_synthesis_pipeline():
    r = 0.5
    model = synthesize(_lambda12_spec(r), synthesis_sample_points(12, r))
    gram = model.residual_report["gramian_residual"]

    grid = domains.sample_skew_bidisc(20, r, seed=70)
    w_sym = max(
        float(np.linalg.norm(eval_w(model, domains.sigma(lam, r)) - eval_w(model, lam)))
        for lam in grid
    )

    pts10 = domains.sample_skew_bidisc(10, r, seed=71)
    ctx = KernelContext(model.U, model.R)
    ws = [eval_w(model, lam) for lam in pts10]
    fvals = [model.spec.F.eval(lam) for lam in pts10]
    kernel_res = 0.0
    for i, lam in enumerate(pts10):
        for j, mu in enumerate(pts10):
            lhs = 1.0 - complex(fvals[j]).conjugate() * complex(fvals[i])
            rhs = np.vdot(ws[j], kernel_Z(ctx, lam, mu) @ ws[i])
            kernel_res = max(kernel_res, abs(lhs - rhs))

    pts12 = domains.sample_rG(12, r, seed=72)
    fracs = [s_UR(s, model.U, model.R) for s in pts12]
    us = [eval_u_model(model, s) for s in pts12]
    fs = [model_f_eval(model, s) for s in pts12]
    eye = np.eye(model.dim)
    model_res = 0.0
    for i in range(12):
        for j in range(12):
            lhs = 1.0 - fs[j].conjugate() * fs[i]
            rhs = np.vdot(us[j], (eye - fracs[j].conj().T @ fracs[i]) @ us[i])
            model_res = max(model_res, abs(lhs - rhs))

    extracted = realization_from_model(wrap_as_GrModel(model), pts12, tol=1e-8)
    l_unitary = validate_colligation(extracted, tol=1e-8).max_residual
    reproduce = max(
        abs(eval_f(extracted, s) - s[1] / r)
        for s in domains.sample_rG(200, r, seed=73)
    )

    ok = (
        gram < 1e-10
        and w_sym < 1e-9
        and kernel_res < 1e-9
        and model_res < 1e-8
        and reproduce < 1e-8
        and l_unitary < 1e-8
    )
    _verdict(7, "synthesis pipeline", ok,
             f"gram {gram:.1e}, w-sym {w_sym:.1e}, kernel {kernel_res:.1e}, "
             f"model {model_res:.1e}, reproduce {reproduce:.1e}, L {l_unitary:.1e}")
    assert ok


def test_criterion_8_fraction_bridges():
    r = 0.5
    split = SubspaceSplit(2, 3)
    R = build_R(split, r)
    U = haar_unitary(split.total, 80)
    rinv = R.inv_matrix

    bridge_a = 0.0
    for s in domains.sample_rG(200, r, seed=81):
        lhs = s_UR(s, U, R)
        rhs = s_T(s, rinv @ U) @ rinv
        bridge_a = max(bridge_a, spectral_norm(lhs - rhs))

    T = 0.8 * haar_unitary(4, 82)
    bridge_b = 0.0
    discs = domains.sample_disc(400, seed=83)
    for z1, z2 in zip(discs[:200], discs[200:]):
        q = domains.pi_map((z1, z2))
        lhs = s_T(q, T)
        rhs = s_T(domains.scale_psi(q, r), T / r) / r
        bridge_b = max(bridge_b, spectral_norm(lhs - rhs))

    M = U @ rinv
    eye = np.eye(split.total)
    commute = 0.0
    for lam in domains.sample_skew_bidisc(200, r, seed=84):
        l1, l2 = lam
        res = np.linalg.solve(eye - l1 * M, eye - r * l2 * M)
        swapped = (eye - r * l2 * M) @ np.linalg.inv(eye - l1 * M)
        commute = max(commute, spectral_norm(res - swapped))

    ok = bridge_a < 1e-11 and bridge_b < 1e-11 and commute < 1e-10
    _verdict(8, "fraction bridges", ok,
             f"scaled form {bridge_a:.2e}, transport {bridge_b:.2e}, commutation {commute:.2e}")
    assert ok


def test_criterion_9_negative_controls():
    caught_asymmetric = False
    try:
        bad_spec = BidiscModelSpec(
            r=0.5,
            d1=1,
            d2=1,
            u1=PolyVectorMap(dim=1, terms=(((0, 0), np.array([1.0])),)),
            u2=PolyVectorMap(dim=1, terms=(((1, 0), np.array([1.0])),)),
            F=ScalarPoly((((1, 0), 1.0 + 0j),)),
        )
        synthesize(bad_spec, synthesis_sample_points(8, 0.5))
    except GramianMismatch:
        caught_asymmetric = True

    caught_params = False
    good = random_params(0.5, seed=90)
    try:
        validate_params(
            RankOneParams(
                r=good.r,
                omega1=good.omega1,
                omega2=good.omega2,
                gamma=good.gamma,
                beta=good.beta,
                u=1.01 * good.u,
                v=good.v,
            )
        )
    except InvalidParams:
        caught_params = True

    defective = Colligation(
        r=good.r,
        split=SubspaceSplit(1, 1),
        a=0.0,
        beta=good.beta,
        gamma=good.gamma,
        D=np.outer(1.01 * good.u, good.v.conj()),
        U=np.diag([good.omega1, good.omega2]),
    )
    defective_rejected = not validate_colligation(defective).passed

    boundary_rejected = all(
        not domains.in_rG((2 * r, r * r), r) for r in R_VALUES
    )

    ok = caught_asymmetric and caught_params and defective_rejected and boundary_rejected
    _verdict(9, "negative controls", ok,
             f"asymmetric spec {caught_asymmetric}, bad params {caught_params}, "
             f"defective colligation {defective_rejected}, boundary point {boundary_rejected}")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-s"]))
