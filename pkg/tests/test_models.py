"""Model right-hand sides, parameter validation and coordinate transforms."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chemwall.models import (
    AssumptionWarning,
    ChemostatParams,
    ParamError,
    ProportionUndefinedError,
    SingularStateError,
    drift_diffusion_ito,
    drift_stratonovich,
    from_biomass_proportion,
    from_sigma_kappa,
    rhs_deterministic,
    rhs_random,
    rhs_random_bp,
    rhs_sigma_kappa,
    to_biomass_proportion,
    to_sigma_kappa,
    validate_params,
)

BASE = ChemostatParams(s_in=4.0, D=2.0, a=1.6, m=2.0, b=0.5, nu=1.2, c=1.8,
                       r1=0.2, r2=0.4, alpha=0.5)


def numeric_jacobian_transform(state, h=1e-7):
    """Finite-difference Jacobian of the proportion transform at a state."""
    state = np.asarray(state, dtype=float)
    base = to_biomass_proportion(state)
    jac = np.empty((3, 3))
    for j in range(3):
        bumped = state.copy()
        bumped[j] += h
        jac[:, j] = (to_biomass_proportion(bumped) - base) / h
    return jac


class TestValidation:
    def test_valid_passes_through(self):
        assert validate_params(BASE) is BASE

    @pytest.mark.parametrize("field", ["s_in", "D", "a", "m", "nu", "c",
                                       "r1", "r2", "b"])
    def test_nonpositive_rejected(self, field):
        with pytest.raises(ParamError):
            validate_params(BASE.with_changes(**{field: 0.0}))

    def test_negative_alpha_rejected(self):
        with pytest.raises(ParamError):
            validate_params(BASE.with_changes(alpha=-0.1))

    def test_assumption_warnings(self):
        with pytest.warns(AssumptionWarning):
            validate_params(BASE.with_changes(c=3.0))
        with pytest.warns(AssumptionWarning):
            validate_params(BASE.with_changes(b=1.5))


class TestRandomRhs:
    def test_matches_hand_computation(self):
        p = BASE
        s, x1, x2, z = 2.0, 1.0, 0.5, 0.3
        dil = p.D + p.alpha * z
        mu = s / (p.a + s)
        expected = np.array([
            dil * (p.s_in - s) - p.m * mu * (x1 + x2) + p.b * p.nu * x1,
            -(p.nu + dil) * x1 + p.c * mu * x1 - p.r1 * x1 + p.r2 * x2,
            -p.nu * x2 + p.c * mu * x2 + p.r1 * x1 - p.r2 * x2,
        ])
        np.testing.assert_allclose(rhs_random([s, x1, x2], p, z), expected,
                                   rtol=1e-14)

    def test_batched_evaluation(self):
        states = np.array([[2.0, 1.0, 0.5], [1.0, 0.2, 0.3]])
        out = rhs_random(states, BASE, 0.1)
        assert out.shape == (2, 3)
        np.testing.assert_allclose(out[0], rhs_random(states[0], BASE, 0.1))
        np.testing.assert_allclose(out[1], rhs_random(states[1], BASE, 0.1))

    def test_deterministic_is_zero_noise(self):
        st3 = [2.0, 1.0, 0.5]
        np.testing.assert_array_equal(
            rhs_deterministic(st3, BASE),
            rhs_random(st3, BASE.with_changes(alpha=0.0), 0.7))

    def test_singular_state_raises(self):
        with pytest.raises(SingularStateError):
            rhs_random([-BASE.a, 1.0, 1.0], BASE, 0.0)

    def test_cone_is_invariant_on_faces(self):
        # inflow through every boundary face of the positive cone
        p = BASE
        assert rhs_random([0.0, 1.0, 1.0], p, 0.0)[0] > 0
        assert rhs_random([2.0, 0.0, 1.0], p, 0.0)[1] > 0
        assert rhs_random([2.0, 1.0, 0.0], p, 0.0)[2] > 0


class TestProportionCoordinates:
    def test_transform_roundtrip(self):
        state = np.array([2.0, 1.2, 0.8])
        np.testing.assert_allclose(
            from_biomass_proportion(to_biomass_proportion(state)), state,
            rtol=1e-15)

    def test_zero_biomass_rejected(self):
        with pytest.raises(ProportionUndefinedError):
            to_biomass_proportion([2.0, 0.0, 0.0])

    def test_rhs_consistency_via_chain_rule(self):
        # pushing the original vector field through the transform Jacobian
        # must equal the transformed vector field
        state = np.array([2.0, 1.0, 0.5])
        f = rhs_random(state, BASE, 0.3)
        jac = numeric_jacobian_transform(state)
        f_bp = rhs_random_bp(to_biomass_proportion(state), BASE, 0.3)
        np.testing.assert_allclose(jac @ f, f_bp, atol=1e-6)

    def test_xi_equation_uncoupled(self):
        # the proportion derivative must not depend on s or x
        a = rhs_random_bp([2.0, 1.5, 0.3], BASE, 0.2)[2]
        b = rhs_random_bp([0.4, 9.0, 0.3], BASE, 0.2)[2]
        assert a == pytest.approx(b, rel=1e-14)


class TestStochasticForms:
    def test_ito_strat_drift_difference(self):
        # the conversion shifts the drift by exactly (alpha^2/2)(s_in-s, -x1, 0)
        state = np.array([2.0, 1.0, 0.5])
        p = BASE
        diff = drift_stratonovich(state, p) - drift_diffusion_ito(state, p)[0]
        expected = 0.5 * p.alpha ** 2 * np.array(
            [p.s_in - state[0], -state[1], 0.0])
        np.testing.assert_allclose(diff, expected, rtol=1e-10, atol=1e-14)

    def test_diffusion_shape_and_values(self):
        state = np.array([2.0, 1.0, 0.5])
        _, g = drift_diffusion_ito(state, BASE)
        np.testing.assert_allclose(
            g, [BASE.alpha * (BASE.s_in - 2.0), -BASE.alpha * 1.0, 0.0])

    def test_dbar_value(self):
        p = BASE.with_changes(alpha=1.0)
        state = np.array([2.0, 1.0, 0.5])
        # at alpha=1 the corrected dilution is D + 1/2
        shifted = rhs_deterministic(state, p.with_changes(D=p.D + 0.5))
        np.testing.assert_array_equal(drift_stratonovich(state, p), shifted)


class TestSigmaKappa:
    def test_roundtrip(self):
        state = np.array([2.0, 1.0, 0.5])
        z, alpha, s_in = 0.4, 0.7, 4.0
        back = from_sigma_kappa(to_sigma_kappa(state, z, alpha, s_in),
                                z, alpha, s_in)
        np.testing.assert_allclose(back, state, rtol=1e-15, atol=1e-15)

    def test_transform_values(self):
        out = to_sigma_kappa([2.0, 1.0, 0.5], 0.0, 0.7, 4.0)
        np.testing.assert_allclose(out, [-2.0, 1.0, 0.5])

    def test_rescaled_rhs_consistent_with_original(self):
        # chain rule with frozen z: d(sigma)/dt = e^{az} ds/dt etc., plus the
        # alpha*z correction absorbed from the noise; at z = 0 the correction
        # vanishes except for the Stratonovich dilution shift
        p = BASE
        state = np.array([2.0, 1.0, 0.5])
        f_strat = drift_stratonovich(state, p)
        f_sk = rhs_sigma_kappa(to_sigma_kappa(state, 0.0, p.alpha, p.s_in),
                               p, 0.0)
        np.testing.assert_allclose(f_sk, f_strat, rtol=1e-12)

    def test_singular_transformed_state(self):
        # a = s_in makes -(a + s_in) exactly representable through the sum
        p = BASE.with_changes(a=4.0)
        with pytest.raises(SingularStateError):
            rhs_sigma_kappa([-(p.a + p.s_in), 1.0, 1.0], p, 0.0)


@given(
    s=st.floats(0.01, 10.0),
    x1=st.floats(0.01, 10.0),
    x2=st.floats(0.01, 10.0),
    z=st.floats(-2.0, 2.0),
)
@settings(max_examples=200, deadline=None)
def test_proportion_roundtrip_property(s, x1, x2, z):
    state = np.array([s, x1, x2])
    back = from_biomass_proportion(to_biomass_proportion(state))
    np.testing.assert_allclose(back, state, rtol=1e-12, atol=1e-12)
    sk = from_sigma_kappa(to_sigma_kappa(state, z, 0.5, 4.0), z, 0.5, 4.0)
    np.testing.assert_allclose(sk, state, rtol=1e-12, atol=1e-12)


@given(z=st.floats(-3.0, 3.0), s=st.floats(0.0, 10.0),
       x1=st.floats(0.0, 10.0), x2=st.floats(0.0, 10.0))
@settings(max_examples=200, deadline=None)
def test_dilution_enters_linearly(z, s, x1, x2):
    # f(z) - f(0) must be exactly z * (f(1) - f(0)) component-wise
    state = np.array([s, x1, x2])
    f0 = rhs_random(state, BASE, 0.0)
    f1 = rhs_random(state, BASE, 1.0)
    fz = rhs_random(state, BASE, z)
    np.testing.assert_allclose(fz - f0, z * (f1 - f0), rtol=1e-9, atol=1e-9)
