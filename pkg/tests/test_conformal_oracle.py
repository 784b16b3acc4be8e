import numpy as np
import pytest

from rolling_twistor import conformal_oracle as co
from rolling_twistor.cartan_invariants import CartanQuartic, quartic_killing_case
from rolling_twistor.distribution5 import frame_fields
from rolling_twistor.errors import IntegrablePointError
from rolling_twistor.surfaces import Hyperbolic, Plane, RevolutionProfile, Sphere, g2_family

RNG = np.random.default_rng(321)

SPHERE = Sphere(1.0)
PLANE = Plane()


def sample_points(n):
    pts = []
    for _ in range(n):
        pts.append(
            np.array(
                [
                    RNG.uniform(0.7, 2.4),
                    RNG.uniform(-1, 1),
                    RNG.uniform(-1, 1),
                    RNG.uniform(-1, 1),
                    RNG.uniform(0, 2 * np.pi),
                ]
            )
        )
    return pts


def displayed_frame(s1, s2, p):
    """The frame the displayed coframe dualizes: it differs from the bracket
    frame by a multiple of X3 in the X4 slot (and of a1 X3 in X5, zero
    here), which leaves every bracket span unchanged."""
    X1, X2, X3, X4, X5 = frame_fields(s1, s2)
    j1 = s1.jet((p[0], p[1]))
    rows = np.array([X1(p), X2(p), X3(p), X4(p) - j1.a2 * X3(p), X5(p) + j1.a1 * X3(p)])
    return rows


class TestOmegaCoframe:
    def test_duality_against_distribution_frame(self):
        for p in sample_points(8):
            W = co.omega_coframe(SPHERE, PLANE, p)
            rows = displayed_frame(SPHERE, PLANE, p)
            assert np.max(np.abs(W @ rows.T - np.eye(5))) < 1e-9

    def test_duality_on_first_three_bracket_fields(self):
        # omega_1..omega_5 against X1, X2, X3 of the bracket frame: these
        # slots agree between the two frame conventions
        X1, X2, X3, _, _ = frame_fields(SPHERE, PLANE)
        for p in sample_points(5):
            W = co.omega_coframe(SPHERE, PLANE, p)
            for j, X in enumerate((X1, X2, X3)):
                pairing = W @ X(p)
                expected = np.zeros(5)
                expected[j] = 1.0
                assert np.allclose(pairing, expected, atol=1e-9)

    def test_omega4_has_no_fiber_component(self):
        for p in sample_points(5):
            W = co.omega_coframe(SPHERE, PLANE, p)
            assert W[3, 4] == 0.0

    def test_integrable_pair_raises(self):
        with pytest.raises(IntegrablePointError):
            co.omega_coframe(PLANE, PLANE, np.zeros(5))

    def test_lambda_scalar_resolves_to_canonical_surface(self):
        p = np.array([1.1, 0.0, 1.2, 0.3, 0.5])
        W1 = co.omega_coframe(SPHERE, Sphere(3.0), p)
        W2 = co.omega_coframe(SPHERE, 1.0 / 9.0, p)
        assert np.allclose(W1, W2)


class TestThetaCoframe:
    def test_theta3_is_minus_omega3(self):
        for p in sample_points(5):
            W = co.omega_coframe(SPHERE, PLANE, p)
            T = co.theta_coframe(SPHERE, PLANE, p).matrix
            assert np.allclose(T[2], -W[2], atol=1e-14)

    def test_determinant_nonzero(self):
        for p in sample_points(5):
            T = co.theta_coframe(SPHERE, PLANE, p)
            assert abs(T.determinant) > 1e-6

    def test_constant_curvature_coefficients_reduce(self):
        # kappa1 = kappa11 = 0 for the sphere: theta4/theta5 coefficients
        # collapse to their curvature-only values
        p = np.array([1.0, 0.0, 0.2, 0.1, 0.7])
        W = co.omega_coframe(SPHERE, PLANE, p)
        T = co.theta_coframe(SPHERE, PLANE, p).matrix
        j = SPHERE.jet((1.0, 0.0))
        k, lam, a2 = j.kappa, 0.0, j.a2
        q = a2
        r = a2**2 + 1.6 * k - 1.4 * lam
        t = -(a2**2 + 1.3 * k - 0.7 * lam)
        u = 0.3 * k - 0.7 * lam
        assert np.allclose(T[3], -W[0] + W[1] + q * W[2] + r * W[3], atol=1e-12)
        assert np.allclose(T[4], -W[1] - q * W[2] + t * W[3] + u * W[4], atol=1e-12)

    def test_coframe_dual_pairing(self):
        for p in sample_points(5):
            T = co.theta_coframe(SPHERE, PLANE, p)
            Y = T.duals()
            assert np.max(np.abs(T.matrix @ Y - np.eye(5))) < 1e-12


class TestMetric:
    def test_symmetry_exact(self):
        for p in sample_points(5):
            G = co.metric_components(SPHERE, PLANE, p)
            assert np.array_equal(G, G.T)

    def test_signature_three_two(self):
        for p in sample_points(8):
            ev = np.linalg.eigvalsh(co.metric_components(SPHERE, PLANE, p))
            assert int(np.sum(ev > 0)) == 3
            assert int(np.sum(ev < 0)) == 2

    def test_eta_structure(self):
        assert co.ETA5[0, 4] == 1.0 and co.ETA5[4, 0] == 1.0
        assert co.ETA5[1, 3] == -1.0 and co.ETA5[3, 1] == -1.0
        assert co.ETA5[2, 2] == pytest.approx(4.0 / 3.0)
        assert np.count_nonzero(co.ETA5) == 5

    def test_distribution_plane_is_totally_null(self):
        # D = span(Y4, Y5) must be null for the metric
        for p in sample_points(5):
            T = co.theta_coframe(SPHERE, PLANE, p)
            Y = T.duals()
            G = co.metric_components(SPHERE, PLANE, p)
            for a in (3, 4):
                for b in (3, 4):
                    assert abs(Y[:, a] @ G @ Y[:, b]) < 1e-9

    def test_transverse_plane_is_totally_null(self):
        for p in sample_points(3):
            T = co.theta_coframe(SPHERE, PLANE, p)
            Y = T.duals()
            G = co.metric_components(SPHERE, PLANE, p)
            for a in (0, 1):
                for b in (0, 1):
                    assert abs(Y[:, a] @ G @ Y[:, b]) < 1e-9


class TestCurvature:
    def test_flat_metric_zero_curvature(self):
        const = np.diag([1.0, 2.0, -1.0, 3.0, -2.0])
        bundle = co.curvature(lambda p: const, np.zeros(5))
        assert np.max(np.abs(bundle.riemann)) < 1e-12
        assert np.max(np.abs(bundle.weyl)) < 1e-12
        assert bundle.scalar == pytest.approx(0.0, abs=1e-12)

    def test_round_sphere_block_sectional_curvature(self):
        # unit 2-sphere block + flat 3d block: R_{0101}/(g00 g11) = 1
        def metric(p):
            g = np.eye(5)
            g[1, 1] = np.sin(p[0]) ** 2
            return g

        p = np.array([1.1, 0.4, 0.0, 0.0, 0.0])
        bundle = co.curvature(metric, p)
        sec = bundle.riemann[0, 1, 0, 1] / (bundle.g[0, 0] * bundle.g[1, 1])
        assert sec == pytest.approx(1.0, abs=1e-5)

    def test_riemann_symmetries_and_weyl_traces(self):
        g = co.metric_field(SPHERE, PLANE)
        p = np.array([1.2, 0.1, 0.3, -0.2, 0.8])
        bundle = co.curvature(g, p)
        scale = np.max(np.abs(bundle.riemann)) + 1.0
        assert co.riemann_symmetry_residual(bundle) < 1e-4 * scale
        assert co.weyl_trace_residual(bundle) < 1e-4 * scale
        assert np.max(np.abs(bundle.ricci - bundle.ricci.T)) < 1e-4 * scale

    def test_nine_to_one_pair_conformally_flat(self):
        g = co.metric_field(Sphere(1.0), Sphere(3.0))
        p = np.array([1.0, 0.1, 1.3, 0.2, 0.5])
        bundle = co.curvature(g, p)
        assert bundle.weyl_norm < 10.0 * max(bundle.noise["weyl"], 1e-14)

    def test_step_must_be_positive(self):
        with pytest.raises(Exception):
            co.curvature(lambda p: np.eye(5), np.zeros(5), h=0.0)


class TestCartanFromWeyl:
    def test_projective_match_with_closed_form(self):
        for p in sample_points(3):
            ocl = co.cartan_from_weyl(SPHERE, PLANE, p)
            closed = quartic_killing_case(SPHERE.jet((p[0], p[1])), 0.0)
            assert co.proportionality_residual(ocl.quartic, closed) < 1e-3

    def test_nine_to_one_below_noise_floor(self):
        p = np.array([1.0, 0.1, 1.3, 0.2, 0.5])
        ocl = co.cartan_from_weyl(Sphere(1.0), Sphere(3.0), p)
        assert ocl.weyl_norm < 10.0 * max(ocl.weyl_noise, 1e-14)

    def test_g2_family_below_noise_floor(self):
        p = np.array([1.0, 0.2, 0.3, -0.1, 0.9])
        ocl = co.cartan_from_weyl(g2_family(1), PLANE, p)
        assert ocl.weyl_norm < 10.0 * max(ocl.weyl_noise, 1e-14)

    def test_vanishing_equivalence_both_directions(self):
        # closed-form coefficients vanish iff the full Weyl tensor does,
        # each side against its own noise floor
        cases = [
            (SPHERE, PLANE, np.array([1.2, 0.1, 0.4, -0.3, 0.7]), False),
            (Sphere(1.0), Sphere(3.0), np.array([1.0, 0.1, 1.3, 0.2, 0.5]), True),
            (g2_family(0), PLANE, np.array([1.3, 0.2, 0.1, 0.0, 0.4]), True),
        ]
        for s1, s2, p, expect_flat in cases:
            ocl = co.cartan_from_weyl(s1, s2, p)
            lam = s2.jet((p[2], p[3])).kappa
            jet = s1.jet((p[0], p[1]))
            closed = quartic_killing_case(jet, lam)
            from rolling_twistor.cartan_invariants import vanishing_scale

            closed_zero = closed.max_abs < 1e-8 * vanishing_scale(jet.kappa, lam)
            weyl_zero = ocl.weyl_norm < 10.0 * max(ocl.weyl_noise, 1e-14)
            assert closed_zero == weyl_zero == expect_flat


class TestDerivativeTermsAgainstOracle:
    """Rolling a revolution surface on a curved constant-curvature surface
    activates every derivative term of the closed-form coefficients (the
    sphere-on-plane check has kappa1 = 0 and the distinguished families
    vanish identically, so neither exercises them)."""

    @pytest.mark.parametrize(
        "s1,s2,p",
        [
            (g2_family(1), Sphere(1.0), np.array([0.9, 0.3, 1.1, -0.2, 0.8])),
            (g2_family(0), Sphere(3.0), np.array([1.4, 0.1, 0.9, 0.4, 2.1])),
        ],
    )
    def test_full_jet_proportionality(self, s1, s2, p):
        jet = s1.jet((p[0], p[1]))
        lam = s2.jet((p[2], p[3])).kappa
        closed = quartic_killing_case(jet, lam)
        ocl = co.cartan_from_weyl(s1, s2, p)
        assert co.proportionality_residual(ocl.quartic, closed) < 1e-3

    def test_hyperbolic_second_surface(self):
        s1 = RevolutionProfile(1.0, -5.0)
        s2 = Hyperbolic(1.0)
        p = np.array([1.2, 0.0, 0.8, 0.1, 1.3])
        closed = quartic_killing_case(s1.jet((1.2, 0.0)), -1.0)
        ocl = co.cartan_from_weyl(s1, s2, p)
        assert co.proportionality_residual(ocl.quartic, closed) < 1e-3

    def test_near_integrable_point_is_flagged_by_noise(self):
        # kappa - lambda ~ 0.016 here: the coframe's (kappa-lambda)^-2
        # factors amplify the FD error and the oracle must say so itself
        s1, s2 = g2_family(0), Sphere(2.0)
        p = np.array([1.4, 0.1, 0.9, 0.4, 2.1])
        ocl = co.cartan_from_weyl(s1, s2, p)
        assert np.max(ocl.noise) > np.max(np.abs(np.array(ocl.quartic)))


class TestCompareProjective:
    def test_scalar_multiple(self):
        qa = CartanQuartic(1.0, 1.0, 4.0 / 3.0, 2.0, 4.0)
        qb = CartanQuartic(3.0, 3.0, 4.0, 6.0, 12.0)
        assert co.compare_projective(qa, qb, 1e-12)

    def test_non_proportional(self):
        qa = CartanQuartic(1.0, 0.0, 0.0, 0.0, 0.0)
        qb = CartanQuartic(0.0, 0.0, 0.0, 0.0, 1.0)
        assert not co.compare_projective(qa, qb, 1e-6)

    def test_zero_pairs(self):
        z = CartanQuartic(0.0, 0.0, 0.0, 0.0, 0.0)
        nz = CartanQuartic(1.0, 0.0, 0.0, 0.0, 0.0)
        assert co.compare_projective(z, z, 1e-12)
        assert not co.compare_projective(z, nz, 1e-12)

    def test_oracle_vs_closed_form_boolean(self):
        p = np.array([1.3, 0.0, 0.1, 0.2, 0.4])
        ocl = co.cartan_from_weyl(SPHERE, PLANE, p)
        closed = quartic_killing_case(SPHERE.jet((1.3, 0.0)), 0.0)
        assert co.compare_projective(ocl.quartic, closed, 1e-3)
