import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turbofan_ga import fluid
from turbofan_ga.cycle import (
    BYPASS_NOZZLE_PRESSURE,
    CORE_NOZZLE_PRESSURE,
    DESIGN_BOUNDS,
    MODEL_ENVELOPE,
    OPR_LIMIT,
    ComponentEfficiencies,
    EngineDesign,
    GasState,
    burn,
    burner_far,
    check_takeoff,
    compress,
    energy_balance_residual,
    expand_nozzle,
    expand_turbine,
    mix,
    run_cycle,
)
from turbofan_ga.exceptions import InfeasibleDesign

import oracles

EFF = ComponentEfficiencies()
GOOD = EngineDesign(9.0, 0.01, 0.05, 0.05, 1.6, 4.0, 6.5, 1700.0)


def s_gen(a, b):
    """Specific entropy generated from state a to state b, J/(kg K)."""
    R = fluid.gas_constant(b.far)
    return fluid.entropy_fn(b.Tt, b.far) - fluid.entropy_fn(a.Tt, a.far) - R * math.log(b.Pt / a.Pt)


design_values = st.tuples(*[st.floats(lo, hi) for lo, hi in DESIGN_BOUNDS]).map(EngineDesign.from_sequence)


class TestTypes:
    def test_efficiency_defaults(self):
        assert tuple(vars(EFF).values()) == (0.99, 0.96, 0.96, 0.96, 0.99, 0.99, 0.99, 0.89, 0.90, 0.89)

    @pytest.mark.parametrize("name", ["pi_d", "eta_b", "e_t"])
    @pytest.mark.parametrize("value", [0.0, 1.01, -0.5])
    def test_efficiency_range(self, name, value):
        with pytest.raises(ValueError):
            ComponentEfficiencies(**{name: value})

    def test_design_helpers(self):
        assert GOOD.opr == pytest.approx(1.6 * 4.0 * 6.5)
        assert EngineDesign.from_sequence(GOOD.as_tuple()) == GOOD
        assert GOOD.replace(Tt4=1500.0).Tt4 == 1500.0
        assert GOOD.bound_violations() == []
        bad = GOOD.replace(bypass_ratio=12.0)
        assert bad.bound_violations()[0].startswith("bypass_ratio")
        with pytest.raises(ValueError):
            EngineDesign.from_sequence([1, 2, 3])


class TestCompressor:
    def test_unity_ratio(self):
        s = GasState(300.0, 1e5, 0.0, 10.0)
        out, w = compress(s, 1.0, 0.9)
        assert out == s and w == 0.0

    def test_oracle_single_case(self):
        out, w = compress(GasState(288.15, 1e5, 0.0, 1.0), 2.0, 0.9)
        ref = oracles.polytropic_path_temperature(288.15, 2.0, 0.9)
        assert abs(out.Tt - ref) < 0.15
        assert out.Pt == pytest.approx(2e5)
        assert w == pytest.approx(oracles.h_terms(out.Tt) - oracles.h_terms(288.15), rel=1e-10)

    @pytest.mark.parametrize("T,pr", [(250.0, 1.2), (288.15, 2.0), (500.0, 9.0), (900.0, 10.0)])
    def test_isentropic_at_unit_efficiency(self, T, pr):
        s = GasState(T, 1e5, 0.0, 1.0)
        out, _ = compress(s, pr, 1.0)
        assert abs(s_gen(s, out)) < 1e-4

    def test_mean_gamma_variant_close_at_low_ratio(self):
        s = GasState(288.15, 1e5, 0.0, 1.0)
        exact, _ = compress(s, 1.6, 0.89)
        legacy, _ = compress(s, 1.6, 0.89, method="mean-gamma")
        assert legacy.Tt == pytest.approx(exact.Tt, abs=0.2)

    def test_bad_inputs(self):
        s = GasState(288.15, 1e5, 0.0, 1.0)
        for args in [(0.9, 0.9), (2.0, 0.0), (2.0, 1.1)]:
            with pytest.raises(ValueError):
                compress(s, *args)
        with pytest.raises(ValueError):
            compress(s, 2.0, 0.9, method="nope")

    @settings(max_examples=60)
    @given(st.floats(250.0, 700.0), st.floats(1.01, 10.0), st.floats(0.8, 0.999))
    def test_entropy_generated_when_lossy(self, T, pr, e):
        s = GasState(T, 1e5, 0.0, 1.0)
        out, w = compress(s, pr, e)
        ideal, w_ideal = compress(s, pr, 1.0)
        assert s_gen(s, out) > 0
        assert w > w_ideal > 0


class TestBurner:
    @pytest.mark.parametrize("T_in,Tt4", [(800.0, 1800.0), (600.0, 1400.0), (900.0, 2000.0), (750.0, 1650.0)])
    def test_bisection_oracle(self, T_in, Tt4):
        _, f = burn(GasState(T_in, 3e6, 0.0, 30.0), Tt4, EFF)
        assert abs(f - oracles.burner_far_bisection(T_in, Tt4)) < 1e-6

    def test_energy_balance(self):
        inlet = GasState(800.0, 3e6, 0.0, 30.0)
        out, f = burn(inlet, 1800.0, EFF)
        mf = out.mdot - inlet.mdot
        lhs = inlet.mdot * inlet.ht + EFF.eta_b * mf * fluid.KEROSENE.lhv
        assert out.mdot * out.ht == pytest.approx(lhs, rel=1e-4)
        assert out.mdot == pytest.approx(inlet.mdot * (1 + f), rel=1e-15)
        assert out.Pt == pytest.approx(EFF.pi_b * inlet.Pt)
        assert out.far == f

    def test_no_temperature_rise(self):
        _, f = burn(GasState(800.0, 3e6, 0.0, 30.0), 800.0, EFF)
        assert abs(f) < 1e-6

    def test_temperature_drop_infeasible(self):
        with pytest.raises(InfeasibleDesign):
            burn(GasState(800.0, 3e6, 0.0, 30.0), 700.0, EFF)

    def test_rich_mixture_infeasible(self):
        weak = ComponentEfficiencies(eta_b=0.5)
        with pytest.raises(InfeasibleDesign, match="fuel-air"):
            burn(GasState(300.0, 3e6, 0.0, 30.0), 2000.0, weak)

    def test_far_function_matches(self):
        h_in = fluid.enthalpy(700.0)
        f = burner_far(h_in, 0.0, 1600.0, 0.99, fluid.KEROSENE.lhv)
        assert f == pytest.approx(oracles.burner_far_bisection(700.0, 1600.0), abs=1e-6)


class TestMixer:
    main = GasState(1700.0, 2.8e6, 0.025, 30.0)
    cool = GasState(800.0, 3.0e6, 0.0, 2.0)

    def test_zero_coolant(self):
        assert mix(self.main, self.cool.with_mdot(0.0)) == self.main

    def test_small_coolant_limit(self):
        out = mix(self.main, self.cool.with_mdot(1e-9))
        for a, b in zip(vars(out).values(), vars(self.main).values()):
            assert a == pytest.approx(b, rel=1e-6)

    def test_self_mix(self):
        out = mix(self.main, self.main)
        assert out.Tt == pytest.approx(self.main.Tt, rel=1e-12)
        assert out.far == pytest.approx(self.main.far, rel=1e-12)
        assert out.mdot == 2 * self.main.mdot

    def test_conservation(self):
        out = mix(self.main, self.cool)
        assert out.mdot == pytest.approx(self.main.mdot + self.cool.mdot, rel=1e-15)
        h_in = self.main.mdot * self.main.ht + self.cool.mdot * self.cool.ht
        assert out.mdot * out.ht == pytest.approx(h_in, rel=1e-10)
        fuel = self.main.mdot * self.main.far / (1 + self.main.far)
        assert out.mdot * out.far / (1 + out.far) == pytest.approx(fuel, rel=1e-12)
        assert out.Pt == self.main.Pt
        assert out.far < self.main.far


class TestTurbine:
    inlet = GasState(1650.0, 2.7e6, 0.025, 33.0)

    def test_zero_power(self):
        out, pr = expand_turbine(self.inlet, 0.0, 0.89)
        assert out == self.inlet and pr == 1.0

    def test_power_bookkeeping(self):
        P = 12e6
        out, pr = expand_turbine(self.inlet, P, 0.89)
        assert self.inlet.mdot * (self.inlet.ht - out.ht) == pytest.approx(P, rel=1e-10)
        assert pr == pytest.approx(self.inlet.Pt / out.Pt, rel=1e-14)
        assert pr > 1

    def test_entropy_audit(self):
        ideal, _ = expand_turbine(self.inlet, 12e6, 1.0)
        lossy, _ = expand_turbine(self.inlet, 12e6, 0.89)
        assert abs(s_gen(self.inlet, ideal)) < 1e-8
        assert s_gen(self.inlet, lossy) > 0
        assert lossy.Pt < ideal.Pt

    def test_too_much_power(self):
        with pytest.raises(InfeasibleDesign):
            expand_turbine(self.inlet, 1e9, 0.89)


class TestNozzle:
    def test_no_pressure_ratio(self):
        V, out, T = expand_nozzle(GasState(300.0, 1e5, 0.0, 1.0), 1.0, 1e5)
        assert V == 0.0 and T == 300.0

    def test_constant_gamma_cross_check(self):
        Pt = 1.893e5
        V, out, T = expand_nozzle(GasState(300.0, Pt, 0.0, 1.0), 1.0, 1e5)
        g = fluid.gamma(300.0)
        ref = oracles.constant_gamma_nozzle_velocity(300.0, 1.893, fluid.cp(300.0), g)
        assert V == pytest.approx(ref, rel=0.015)

    def test_energy_and_entropy(self):
        inlet = GasState(800.0, 1.2e5, 0.02, 5.0)
        V, out, T = expand_nozzle(inlet, 0.96, 4e4)
        assert fluid.enthalpy(T, 0.02) + 0.5 * V * V == pytest.approx(inlet.ht, rel=1e-8)
        R = fluid.gas_constant(0.02)
        ds = fluid.entropy_fn(T, 0.02) - fluid.entropy_fn(800.0, 0.02) - R * math.log(4e4 / out.Pt)
        assert abs(ds) < 1e-8
        assert out.Pt == pytest.approx(0.96 * 1.2e5)

    def test_subambient_total_pressure(self):
        with pytest.raises(InfeasibleDesign):
            expand_nozzle(GasState(300.0, 1e5, 0.0, 1.0), 0.96, 1e5)


class TestRunCycle:
    def test_reference_design(self):
        res = run_cycle(GOOD)
        assert res.feasible and res.complete
        # the burner loop stops at 1e-5 relative change in f
        assert abs(energy_balance_residual(res)) < 1e-4

    def test_spool_balances(self):
        res = run_cycle(GOOD)
        w = res.works
        assert w["hpt"] * EFF.eta_mH == pytest.approx(w["hpc"], rel=1e-14)
        assert w["lpt"] * EFF.eta_mL == pytest.approx(w["fan"] + w["lpc"], rel=1e-14)

    def test_opr_boundary_flag(self):
        d = EngineDesign(9.5, 0.01, 0.05, 0.05, 2.0, 5.0, 4.5, 1700.0)
        res = run_cycle(d, pi_max=45.0)
        assert OPR_LIMIT in res.violations
        assert not res.feasible

    def test_takeoff_over_temperature(self):
        ok, res = check_takeoff(GOOD.replace(Tt4=2000.0))
        assert not ok
        assert any(v.startswith(MODEL_ENVELOPE) for v in res.violations)

    def test_takeoff_passes_with_margin(self):
        assert run_cycle(GOOD).feasible
        ok, res = check_takeoff(GOOD)
        assert ok
        assert res.stations["4"].Tt == pytest.approx(1.05 * GOOD.Tt4)

    def test_opr_violation_identical_at_takeoff(self):
        d = GOOD.replace(fan_pr=2.0, lpc_pr=5.0, hpc_pr=5.0)
        ok, to = check_takeoff(d)
        assert OPR_LIMIT in run_cycle(d).violations and OPR_LIMIT in to.violations

    def test_low_pressure_nozzle_flagged(self):
        # big fan on a weak core: the LPT leaves too little pressure for the core nozzle
        d = EngineDesign(10.0, 0.01, 0.05, 0.05, 2.0, 2.0, 4.0, 1400.0)
        res = run_cycle(d)
        assert res.violations == [CORE_NOZZLE_PRESSURE]
        assert res.stations["6"].Pt <= res.P0
        assert BYPASS_NOZZLE_PRESSURE not in res.violations

    def test_deterministic(self):
        a, b = run_cycle(GOOD), run_cycle(GOOD)
        assert a.stations == b.stations and (a.V6, a.V7) == (b.V6, b.V7)

    @settings(max_examples=60, deadline=None)
    @given(design_values)
    def test_invariants(self, d):
        res = run_cycle(d)
        if not res.complete:
            return
        st_ = res.stations
        m0 = st_["0"].mdot
        assert st_["1.3"].mdot + st_["2"].mdot == pytest.approx(m0, rel=1e-9)
        extracted = st_["bleed"].mdot + st_["cool1"].mdot + st_["cool2"].mdot
        assert st_["3.1"].mdot + extracted == pytest.approx(st_["3"].mdot, rel=1e-9)
        out = st_["6"].mdot + st_["7"].mdot + st_["bleed"].mdot
        assert out == pytest.approx(m0 + res.fuel_flow, rel=1e-9)
        assert abs(energy_balance_residual(res)) < 1e-3

        # total pressure never rises across passive components
        for a, b in [("0", "1"), ("3.1", "4"), ("4", "4.1"), ("4.4", "4.5"), ("5", "6"), ("1.3", "7")]:
            assert st_[b].Pt <= st_[a].Pt
        for a, b in [("1", "2"), ("2", "2.5"), ("2.5", "3")]:
            assert st_[b].Pt > st_[a].Pt
        for a, b in [("4.1", "4.4"), ("4.5", "5")]:
            assert st_[b].Pt < st_[a].Pt

        for k in ("0", "1", "2", "2.5", "3", "3.1"):
            assert st_[k].far == 0.0
        assert st_["4"].far > 0
        assert st_["4"].far >= st_["4.1"].far >= st_["4.4"].far >= st_["4.5"].far > 0

        for a, b in [("0", "1"), ("1", "2"), ("2", "2.5"), ("2.5", "3"), ("4.1", "4.4"), ("4.5", "5"), ("5", "6")]:
            assert s_gen(st_[a], st_[b]) >= -1e-9


def test_lossless_components_generate_no_entropy():
    ideal = ComponentEfficiencies(pi_d=1.0, pi_b=1.0, pi_nf=1.0, pi_nc=1.0, e_f=1.0, e_c=1.0, e_t=1.0)
    res = run_cycle(GOOD, eff=ideal)
    st_ = res.stations
    for a, b in [("0", "1"), ("1", "2"), ("2", "2.5"), ("2.5", "3"), ("4.1", "4.4"), ("4.5", "5"), ("5", "6"), ("1.3", "7")]:
        assert abs(s_gen(st_[a], st_[b])) < 1e-6
