import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcwiretap.gaussian import (
    AuxParams,
    GaussianParamError,
    GaussianParams,
    GaussianVector,
    SweepGrid,
    build_covariance,
    capacity_limit,
    decoder_side_info_rate,
    gaussian_mi,
    gaussian_rate_bounds,
    linear_vector,
    sweep_region,
)
from bcwiretap.region import region_from_bounds


def half_log(x):
    return 0.5 * math.log2(x)


class TestCovariance:
    def test_cross_terms(self):
        gp = GaussianParams(P=2.0, N1=1.5, N2=1.0, N3=2.0, Q1=3.0, Q2=4.0, rho=0.5)
        ap = AuxParams(0.7, -0.4, 0.25)
        gv = build_covariance(gp, ap)
        c12 = 0.5 * math.sqrt(12.0)
        assert gv.covariance("S1", "S2") == pytest.approx(c12, abs=1e-12)
        # U1 = X1 + a1 S2, Y1 = X + S2 + W1
        assert gv.covariance("U1", "Y1") == pytest.approx(0.25 * 2 + 0.7 * 4.0, abs=1e-12)
        # U2 = X2 + a2 (S1 + X1)
        assert gv.covariance("U2", "S2") == pytest.approx(-0.4 * c12, abs=1e-12)
        assert gv.var("Z") == pytest.approx(2 + 3 + 4 + 2 * c12 + 2, abs=1e-12)

    @given(st.floats(-5, 5), st.floats(-5, 5), st.floats(0, 1))
    def test_factor_matches_covariance(self, a1, a2, beta):
        gv = build_covariance(GaussianParams(Q1=2.0, Q2=3.0, rho=-0.3), AuxParams(a1, a2, beta))
        assert np.allclose(gv.factor @ gv.factor.T, gv.cov, atol=1e-12)
        assert np.allclose(gv.cov, gv.cov.T)


class TestMutualInformation:
    def test_awgn(self):
        for p, n in ((1.0, 1.0), (10.0, 0.5), (0.01, 3.0)):
            gv = linear_vector(("X", "W"), np.diag([math.sqrt(p), math.sqrt(n)]), {"Y": [1, 1]})
            assert abs(gaussian_mi(gv, ["X"], ["Y"]) - half_log(1 + p / n)) < 1e-12

    def test_independent_blocks(self):
        gv = GaussianVector(("a", "b", "c"), np.diag([1.0, 2.0, 3.0]))
        assert gaussian_mi(gv, ["a"], ["b", "c"]) == 0.0

    def test_monte_carlo_oracle(self):
        rng = np.random.default_rng(21)
        a = rng.normal(size=(4, 4))
        cov = a @ a.T + 0.5 * np.eye(4)
        gv = GaussianVector(("a", "b", "c", "d"), cov)
        # plug-in estimate from the sample covariance
        x = rng.multivariate_normal(np.zeros(4), cov, size=1_000_000)
        s = np.cov(x.T)
        est = 0.5 * math.log2(np.linalg.det(s[:2, :2]) * np.linalg.det(s[2:, 2:]) / np.linalg.det(s))
        assert abs(gaussian_mi(gv, ["a", "b"], ["c", "d"]) - est) < 0.02

    def test_scale_invariance(self):
        gp = GaussianParams(Q1=2.0, Q2=1.0, rho=0.2)
        ap = AuxParams(0.6, 0.3, 0.4)
        gv = build_covariance(gp, ap)
        d = np.ones(len(gv.labels))
        d[gv.labels.index("U1")] = 2.0
        scaled = GaussianVector(gv.labels, gv.cov * np.outer(d, d))
        for other in (["Y1", "S1"], ["Z"], ["U2"]):
            assert abs(gaussian_mi(gv, ["U1"], other) - gaussian_mi(scaled, ["U1"], other)) < 1e-9

    def test_empty_group_rejected(self):
        gv = GaussianVector(("a", "b"), np.eye(2))
        with pytest.raises(ValueError):
            gaussian_mi(gv, [], ["b"])

    def test_unknown_label(self):
        with pytest.raises(KeyError):
            gaussian_mi(GaussianVector(("a", "b"), np.eye(2)), ["a"], ["q"])

    def test_jitter_invariance(self):
        gp = GaussianParams(Q1=4.0, Q2=2.0, rho=0.5)
        ap = AuxParams(0.8, 0.5, 0.6)
        ref = gaussian_rate_bounds(gp, ap, jitter=1e-12)
        for lam in (1e-13, 1e-11, 1e-10):
            b = gaussian_rate_bounds(gp, ap, jitter=lam)
            assert abs(b.raw1 - ref.raw1) < 1e-8
            assert abs(b.raw2 - ref.raw2) < 1e-8
            assert abs(b.raw12 - ref.raw12) < 1e-8


class TestRateBounds:
    def test_pure_wiretap(self):
        # no state, all power to user 1: the Gaussian wiretap secrecy rate
        gp = GaussianParams(P=3.0, N1=1.0, N2=1.0, N3=2.0)
        b = gaussian_rate_bounds(gp, AuxParams(0.0, 0.0, 1.0))
        assert abs(b.b1 - (half_log(1 + 3.0) - half_log(1 + 1.5))) < 1e-9

    def test_weaker_eavesdropper_only(self):
        gp = GaussianParams(P=3.0, N1=2.0, N2=1.0, N3=1.0)
        assert gaussian_rate_bounds(gp, AuxParams(0.0, 0.0, 1.0)).b1 == 0.0

    def test_no_power_for_user_two(self):
        gp = GaussianParams(Q1=2.0, Q2=2.0)
        assert gaussian_rate_bounds(gp, AuxParams(0.5, 0.0, 1.0)).b2 == 0.0

    @pytest.mark.parametrize("alpha2", [0.3, 1.0, -2.0])
    def test_no_power_for_user_two_collapses_region(self, alpha2):
        # U2 / alpha2 - U1 is a function of the state, so the sum bound dies
        gp = GaussianParams(Q1=2.0, Q2=2.0)
        b = gaussian_rate_bounds(gp, AuxParams(0.5, alpha2, 1.0))
        assert b.b12 == 0.0
        assert region_from_bounds(b).vertices == ((0.0, 0.0),)

    def test_eavesdropper_never_helps(self):
        gp = GaussianParams(Q1=1.0, Q2=1.0)
        for ap in (AuxParams(0.3, 0.2, 0.5), AuxParams(-1.0, 0.7, 0.2)):
            a = gaussian_rate_bounds(gp, ap)
            b = gaussian_rate_bounds(gp, ap, eavesdropper=False)
            assert a.b1 <= b.b1 + 1e-12 and a.b2 <= b.b2 + 1e-12 and a.b12 <= b.b12 + 1e-12


class TestSweep:
    def test_single_point_grid(self):
        gp = GaussianParams(Q1=1.0, Q2=1.0)
        grid = SweepGrid((0.2,), (0.1,), (0.5,))
        res = sweep_region(gp, grid)
        assert res.points == 1
        b = gaussian_rate_bounds(gp, AuxParams(0.2, 0.1, 0.5))
        assert res.region.max_sum_rate == pytest.approx(min(b.b12, b.b1 + b.b2), abs=1e-12)

    def test_refinement_never_shrinks(self):
        gp = GaussianParams(Q1=2.0, Q2=2.0)
        coarse = SweepGrid((0.0, 0.5), (0.0, 0.5), (0.0, 1.0))
        fine = SweepGrid((0.0, 0.25, 0.5), (0.0, 0.25, 0.5), (0.0, 0.5, 1.0))
        a, b = sweep_region(gp, coarse).region, sweep_region(gp, fine).region
        assert b.contains_region(a, tol=1e-12)

    def test_vertex_params_reproduce(self):
        gp = GaussianParams(Q1=1.0, Q2=1.0)
        res = sweep_region(gp, SweepGrid.parse("alpha1=0,0.5;alpha2=0,0.5;beta=0,0.5,1"))
        for v, params in res.vertex_params:
            if v == (0.0, 0.0):
                continue
            b = gaussian_rate_bounds(gp, AuxParams(*params))
            assert v[0] <= b.b1 + 1e-12 and v[1] <= b.b2 + 1e-12


class TestSideInformation:
    def test_capacity_limit(self):
        assert capacity_limit(GaussianParams(P=1.0, N1=1.0, N2=1.0)) == 0.5

    def test_large_state_masks_eavesdropper(self):
        # U1 = X: the receiver cancels S1, the eavesdropper drowns in it
        gp = GaussianParams(P=1.0, N1=1.0, N2=1.0, N3=2.0, Q1=1e4)
        r = decoder_side_info_rate(gp, 0.0)
        assert r <= capacity_limit(gp) + 1e-12
        assert capacity_limit(gp) - r < 1e-3

    def test_no_state_is_wiretap(self):
        gp = GaussianParams(P=1.0, N1=1.0, N2=1.0, N3=2.0)
        assert abs(decoder_side_info_rate(gp, 0.0) - (half_log(2.0) - half_log(1.5))) < 1e-9


class TestValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(P=0.0),
            dict(N3=-1.0),
            dict(Q1=-0.1),
            dict(rho=1.5),
            dict(N1=0.5, N2=1.0),
        ],
    )
    def test_bad_params(self, kwargs):
        with pytest.raises(GaussianParamError):
            GaussianParams(**kwargs)

    def test_bad_beta(self):
        with pytest.raises(GaussianParamError):
            AuxParams(beta=1.2)


class TestGridParse:
    def test_default(self):
        g = SweepGrid.parse("default")
        assert g == SweepGrid.default()
        assert 0.0 in g.alpha1 and len(g.beta) == 21

    def test_partial(self):
        g = SweepGrid.parse("alpha1=0,1 ; beta=0.5")
        assert g.alpha1 == (0.0, 1.0) and g.beta == (0.5,)
        assert g.alpha2 == SweepGrid.default().alpha2
        assert g.size == 2 * len(g.alpha2)

    @pytest.mark.parametrize("text", ["gamma=1", "alpha1=", "beta=2", "alpha2=x"])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            SweepGrid.parse(text)
