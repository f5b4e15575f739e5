import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adaptfv import (advection, burgers, cfl_max_dt, custom_problem,
                     entropy_conservative_flux, interface_coeffs,
                     periodic_coeffs)
from oracles import burgers_econs_flux

finite_state = st.floats(-5.0, 5.0, allow_nan=False)


class TestProblems:
    def test_burgers_entropy_pair_consistent(self):
        burgers().check_consistency(np.linspace(-3.0, 3.0, 11))

    def test_advection_entropy_pair_consistent(self):
        advection(2.5).check_consistency(np.linspace(-3.0, 3.0, 11))

    def test_custom_problem_quadrature_matches_closed_form(self):
        p = custom_problem("cubic", f=lambda u: u**3,
                           df=lambda u: 3.0 * np.asarray(u)**2)
        s = np.linspace(-2.0, 2.0, 9)
        np.testing.assert_allclose(p.psi(s), s**4 / 4.0, rtol=1e-13, atol=1e-13)
        p.check_consistency(s)

    def test_bad_hessian_bound_rejected(self):
        import dataclasses
        with pytest.raises(ValueError):
            dataclasses.replace(burgers(), hessian_bound=0.0)


class TestEntropyConservativeFlux:
    def test_consistency_at_equal_states(self):
        p = burgers()
        for c in (-2.0, 0.0, 0.5, 3.0):
            assert entropy_conservative_flux(p, c, c) == p.f(c)

    def test_burgers_worked_example(self):
        assert abs(entropy_conservative_flux(burgers(), 1.0, 3.0) - 13.0 / 6.0) < 1e-14

    def test_advection_is_central(self, rng):
        p = advection(1.7)
        for _ in range(50):
            vl, vr = rng.normal(size=2) * 3.0
            expected = 1.7 * (vl + vr) / 2.0
            assert abs(entropy_conservative_flux(p, vl, vr) - expected) < 1e-13

    @given(vl=finite_state, vr=finite_state)
    def test_matches_closed_form_oracle(self, vl, vr):
        got = entropy_conservative_flux(burgers(), vl, vr)
        if abs(vr - vl) < 1e-12 * max(1.0, abs(vl), abs(vr)):
            assert got == 0.5 * vl * vl
        else:
            assert abs(got - burgers_econs_flux(vl, vr)) <= 1e-13 * max(1.0, vl * vl, vr * vr)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            entropy_conservative_flux(burgers(), np.nan, 1.0)


class TestInterfaceCoeffs:
    def test_burgers_worked_example(self):
        c = interface_coeffs(burgers(), [1.0], [3.0], scheme="econs")
        assert abs(c.secant[0] - 2.0) < 1e-14          # (4.5 - 0.5) / 2
        assert abs(c.visc_econs[0] - 1.0 / 3.0) < 1e-14  # jump/6
        assert abs(c.jump[0] - 2.0) < 1e-15

    def test_econs_scheme_has_no_extra_viscosity(self, rng):
        p = burgers()
        vl = rng.normal(size=40)
        vr = rng.normal(size=40)
        c = interface_coeffs(p, vl, vr, scheme="econs")
        assert np.array_equal(c.visc_extra, np.zeros(40))
        np.testing.assert_allclose(c.visc, c.visc_econs, rtol=0, atol=0)
        fstar = entropy_conservative_flux(p, vl, vr)
        np.testing.assert_allclose(c.flux, fstar, rtol=0, atol=1e-14)

    def test_equal_states_take_limits(self):
        c = interface_coeffs(burgers(), [0.7], [0.7], scheme="rusanov")
        assert c.jump[0] == 0.0
        assert c.secant[0] == 0.7        # f'(v)
        assert c.visc_econs[0] == 0.0
        assert c.flux[0] == 0.5 * 0.7**2  # f(v)

    @given(vl=finite_state, vr=finite_state, c=finite_state)
    def test_flux_consistency_all_schemes(self, vl, vr, c):
        p = burgers()
        for scheme, d in (("econs", 0.0), ("rusanov", 0.0), ("fixed-d", 0.3)):
            out = interface_coeffs(p, [c], [c], scheme=scheme, d_const=d)
            assert out.flux[0] == p.f(c)

    @given(vl=finite_state, vr=finite_state)
    @settings(max_examples=60)
    def test_viscosity_form_round_trip(self, vl, vr):
        # rebuilding Q from the flux written in viscosity form returns Q
        p = burgers()
        c = interface_coeffs(p, [vl], [vr], scheme="rusanov")
        dv = vr - vl
        if abs(dv) > 1e-6:
            q_back = (p.f(vl) + p.f(vr) - 2.0 * c.flux[0]) / dv
            assert abs(q_back - c.visc[0]) <= 1e-9 * max(1.0, abs(c.visc[0]))

    @given(vl=finite_state, vr=finite_state)
    def test_rusanov_extra_viscosity_nonnegative(self, vl, vr):
        c = interface_coeffs(burgers(), [vl], [vr], scheme="rusanov")
        assert c.visc_extra[0] >= 0.0
        # max|f'| >= |Q*| for these fluxes, so the clamp never engages
        assert c.visc[0] >= max(abs(vl), abs(vr)) - 1e-12

    def test_visc_is_sum_of_parts(self, rng):
        c = interface_coeffs(burgers(), rng.normal(size=25), rng.normal(size=25),
                             scheme="fixed-d", d_const=0.4)
        np.testing.assert_array_equal(c.visc, c.visc_econs + c.visc_extra)
        np.testing.assert_array_equal(c.visc_extra, np.full(25, 0.4))

    def test_unknown_scheme_rejected(self):
        with pytest.raises(ValueError, match="scheme"):
            interface_coeffs(burgers(), [0.0], [1.0], scheme="upwind")

    def test_negative_fixed_d_rejected(self):
        with pytest.raises(ValueError, match="d_const"):
            interface_coeffs(burgers(), [0.0], [1.0], scheme="fixed-d", d_const=-1.0)

    def test_rusanov_clamp_warns_when_endpoint_speeds_undershoot(self):
        # -cos has zero derivative at +-pi but a positive entropy-conservative
        # viscosity across that interval, so the extra dissipation clamps to 0
        p = custom_problem("dip", f=lambda u: -np.cos(u),
                           df=lambda u: np.sin(u))
        with pytest.warns(RuntimeWarning, match="clamped"):
            c = interface_coeffs(p, [-np.pi], [np.pi], scheme="rusanov")
        assert c.visc_extra[0] == 0.0
        assert c.visc_econs[0] > 0.0


class TestEntropyConservationIdentity:
    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=40)
    def test_periodic_telescoping(self, seed):
        # with the entropy-conservative flux, the entropy extracted by the
        # flux differences telescopes against the numerical entropy flux
        rng = np.random.default_rng(seed)
        n = int(rng.integers(4, 40))
        v = rng.normal(size=n) * 2.0
        p = burgers()
        c = periodic_coeffs(p, v, scheme="econs")
        flux_part = np.sum(v * (c.flux[1:] - c.flux[:-1]))
        ent_part = np.sum(c.ent_flux[1:] - c.ent_flux[:-1])
        assert abs(flux_part - ent_part) <= 1e-12 * n * max(1.0, np.max(np.abs(v))**3)


class TestCflMaxDt:
    def test_formula(self):
        p = burgers()
        c = interface_coeffs(p, [0.0, 1.0], [3.0, 2.0], scheme="econs")
        # max Q* = max(jump)/6 = 0.5
        assert abs(max(c.visc_econs) - 0.5) < 1e-14
        assert abs(cfl_max_dt(p, c, dx=0.01) - 0.01 / (4.0 * 0.5)) < 1e-15

    def test_floor_on_constant_states(self):
        p = burgers()
        c = interface_coeffs(p, [1.0, 1.0], [1.0, 1.0])
        dt = cfl_max_dt(p, c, dx=0.01, visc_floor=1e-12)
        assert dt == 0.01 / (4.0 * 1e-12)

    def test_hessian_bound_cubes(self):
        import dataclasses
        p1 = burgers()
        p2 = dataclasses.replace(p1, hessian_bound=2.0)
        c = interface_coeffs(p1, [0.0], [3.0])
        assert abs(cfl_max_dt(p1, c, 0.1) / cfl_max_dt(p2, c, 0.1) - 8.0) < 1e-12

    def test_running_max_tightens(self):
        p = burgers()
        c = interface_coeffs(p, [0.0], [0.6])  # Q* = 0.1
        loose = cfl_max_dt(p, c, 0.1)
        tight = cfl_max_dt(p, c, 0.1, running_max=0.5)
        assert tight < loose and abs(tight - 0.1 / 2.0) < 1e-14


class TestQstarClosedForm:
    def test_burgers_qstar_is_jump_over_six(self, rng):
        # separation >= 0.01 keeps the quotient's cancellation below 1e-13
        p = burgers()
        count = 0
        while count < 1000:
            vl, vr = rng.uniform(-2.0, 2.0, size=2)
            if abs(vr - vl) < 0.01:
                continue
            count += 1
            c = interface_coeffs(p, [vl], [vr])
            assert abs(c.visc_econs[0] - (vr - vl) / 6.0) <= 1e-13
