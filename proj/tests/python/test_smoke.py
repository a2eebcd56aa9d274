"""Smoke tests for the pybethe module: one probe per exposed operation."""

import math

import pybethe as pb

SQRT2 = math.sqrt(2.0)


def rank_one(v):
    p = pb.Potential()
    p.set(0, 1, v)
    return p


def test_potential_basics():
    p = rank_one(2.0)
    assert len(p) == 1
    assert p.support_depth() == 0
    assert p.at(0, 1) == 2.0
    p.set(2, 3, -1.25)
    assert len(p) == 2
    assert p.support_depth() == 2
    p.set(2, 3, 0.0)  # zero erases
    assert len(p) == 1

    r = pb.Potential.radial([1.5, 0.8, 0.4])
    assert r.is_radial()
    assert len(r) == 7
    assert r.at(2, 4) == 0.4


def test_random_ball_reproducible():
    a = pb.Potential.random_ball(9, 3, 2.0)
    b = pb.Potential.random_ball(9, 3, 2.0)
    assert a.canonical_key() == b.canonical_key()
    assert len(a) == 15
    c = pb.Potential.random_ball(10, 3, 2.0)
    assert a.canonical_key() != c.canonical_key()


def test_uniformization_round_trip():
    assert abs(pb.band_edge() - 2.0 * SQRT2) < 1e-15
    for z in (3.1 + 0.0j, -4.2 + 0.3j, 0.5 + 2.0j):
        zeta = pb.zeta_of_z(z)
        assert abs(zeta) < 1.0
        assert abs(pb.z_of_zeta(zeta) - z) < 1e-12


def test_rank_one_determinant():
    p = rank_one(2.0)
    # affine in zeta: 1 - v zeta / sqrt2
    assert abs(pb.det_l(p, 0, 1, 0.5) - (1.0 - 1.0 / SQRT2)) < 1e-12
    for zeta in (0.3 + 0.2j, -0.6 + 0.1j):
        assert abs(pb.det_l(p, 0, 1, zeta) - (1.0 - 2.0 * zeta / SQRT2)) < 1e-12


def test_eigen_ledger_rank_one():
    led = pb.eigen_ledger(rank_one(2.0))
    assert len(led) == 1
    e = led[0]
    assert abs(e["zeta"] - 1.0 / SQRT2) < 1e-8
    assert abs(e["x"] - 3.0) < 1e-10
    assert e["mult"] == 1
    assert not e["low_confidence"]
    assert pb.eigen_ledger(rank_one(1.0)) == []


def test_fourier_and_combined_identities():
    r0 = pb.fourier_identity(rank_one(2.0), 0)
    assert abs(r0["lhs"] - math.log(SQRT2)) < 1e-10
    assert r0["residual"] < 1e-10

    v = pb.Potential.random_ball(3, 3, 2.0)
    for n in range(5):
        assert pb.fourier_identity(v, n)["residual"] < 1e-8
    for two_p in (2, 4, 6):
        assert pb.combined_identity(v, two_p)["residual"] < 1e-8


def test_ledger_inequality_slack():
    v = pb.Potential.random_ball(3, 3, 2.0)
    rep = pb.ledger_inequality(v, truncation=4, two_p=4)
    assert rep["slack"] >= -1e-9
    assert math.isfinite(rep["entropy"])


def test_main_lemma_kappa():
    v = pb.Potential.random_ball(3, 3, 2.0)
    for (d, i) in ((0, 1), (1, 2), (2, 3), (3, 5)):
        c = pb.main_lemma_check(v, d, i, 0.4 + 0.3j)
        assert c["residual"] < 1e-10
        assert abs(c["kappa"] + (0.4 + 0.3j) / SQRT2) < 1e-12
        assert not c["degenerate"]


def test_jacobi_reduction_matches():
    for z in (3.5 + 0.2j, -3.1 + 0.4j, 4.2 + 0.0j):
        assert pb.jacobi_compare([1.5, 0.8, 0.4], z)["diff"] < 1e-10


def test_hypothesis_sums_deterministic():
    v = pb.Potential.random_ball(7, 3, 2.0)
    a = pb.hypothesis_sums(v, two_p=4, depth_cap=6, delta_start=2)
    b = pb.hypothesis_sums(v, two_p=4, depth_cap=6, delta_start=2)
    assert a == b
    assert a["power"] >= 0.0


def test_trace_differences():
    p = rank_one(2.0)
    # k = 1: sum V / sqrt2; k = 2: sum V^2 / 2
    assert abs(pb.cheb_trace_diff(p, 1) - 2.0 / SQRT2) < 1e-12
    assert abs(pb.cheb_trace_diff(p, 2) - 2.0) < 1e-12


def test_conjecture_form_split():
    rep = pb.conjecture_form([0.0, 0.0, 1.0], rank_one(2.0), 6)
    assert rep["check_a1"] < 1e-10  # diagonal normalization holds
    assert rep["check_ax2m4"] > 1.0  # collapsed shell term does not
