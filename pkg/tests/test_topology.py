import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scfcl.material import BHCurve
from scfcl.mec import MagneticNetwork, solve
from scfcl.topology import GeometrySpec, ScfclModel, WindingSpec, build, dc_bias_check

MODELS = ("A", "B", "C", "D", "E")


class TestBuild:
    def test_model_b_layout(self):
        dev = build("B")
        assert len(dev.cores) == 2
        for core in dev.cores:
            assert len(core.nodes) == 2 and len(core.branches) == 3 and len(core.windings) == 2
        roles = dev.roles()
        assert roles == {"c1.dc": "dc-source", "c1.ac": "ac-series", "c2.dc": "dc-source", "c2.ac": "ac-series"}

    def test_model_b_placement(self):
        core = build("B").cores[0]
        assert core.winding("c1.dc").branch == "c1.left"
        assert core.winding("c1.ac").branch == "c1.mid"
        assert core.branch("c1.right").kind == "gap"

    def test_model_a_adds_aux(self):
        core = build("A").cores[0]
        aux = core.winding("c1.aux")
        assert (aux.branch, aux.turns, aux.role) == ("c1.mid", 76, "dc-auxiliary")

    def test_model_c_shorted_main_coil(self):
        dev = build("C")
        roles = dev.roles()
        assert roles["c1.sc"] == "shorted" and roles["c1.aux"] == "dc-auxiliary"
        assert "c1.dc" not in roles
        assert "c1.sc" not in build("C", wind=WindingSpec(shorted_open=True)).roles()

    def test_model_d_layout(self):
        dev = build("D")
        assert len(dev.cores) == 1
        core = dev.cores[0]
        assert len(core.branches) == 3 and len(core.windings) == 4
        assert core.branch("c1.mid").kind == "gap"
        assert core.branch("c1.mid").area == pytest.approx(0.08)

    def test_model_e_layout(self):
        core = build("E").cores[0]
        assert len(core.nodes) == 4
        assert sorted(b.kind for b in core.branches) == ["core"] * 4 + ["gap"] * 2
        shorted = [w for w in core.windings if w.role == "shorted"]
        assert {w.branch for w in shorted} == {"c1.yoke_t", "c1.yoke_b"}

    def test_none(self):
        dev = build(None)
        assert dev.model is ScfclModel.NONE and dev.cores == () and dev.branch_ids() == []

    @pytest.mark.parametrize("model", MODELS)
    def test_networks_valid(self, model):
        for core in build(model).cores:
            assert isinstance(core, MagneticNetwork)
            assert core.compiled.incidence.shape[1] == len(core.branches)

    @pytest.mark.parametrize("model,n", [("A", 1), ("B", 3), ("D", 2), ("E", 2)])
    def test_core_count_enforced(self, model, n):
        with pytest.raises(ValueError, match="core"):
            build(model, cores_per_phase=n)
        assert len(build(model, cores_per_phase=n, allow_core_override=True).cores) == n

    def test_parse(self):
        assert ScfclModel.parse("a") is ScfclModel.A
        assert ScfclModel.parse("None") is ScfclModel.NONE
        with pytest.raises(ValueError):
            ScfclModel.parse("F")

    @pytest.mark.parametrize("kw", [{"l_mean": 0}, {"a_core": -1}, {"l_gap": float("nan")}, {"leg_overrides": {"mid": {"width": 1}}}])
    def test_bad_geometry(self, kw):
        with pytest.raises(ValueError):
            GeometrySpec(**kw)

    @pytest.mark.parametrize("kw", [{"n_ac": 0}, {"n_dc": 2.5}, {"i_dc": 0}, {"r_shorted": -1}])
    def test_bad_windings(self, kw):
        with pytest.raises(ValueError):
            WindingSpec(**kw)

    def test_leg_override(self):
        core = build("B", GeometrySpec(leg_overrides={"mid": {"area": 0.08}})).cores[0]
        assert core.branch("c1.mid").area == 0.08
        assert core.branch("c1.left").area == 0.04


class TestDcBias:
    def test_model_d_mid_leg_free(self):
        rep = dc_bias_check("D")
        assert rep.mid_to_outer <= 1e-3
        assert all(rep.checks.values())

    def test_model_d_gap_independent(self):
        a = dc_bias_check("D", GeometrySpec(l_gap=0.3))
        b = dc_bias_check("D", GeometrySpec(l_gap=0.15))
        assert b.B["c1.left"] == pytest.approx(a.B["c1.left"], rel=1e-6)
        assert a.outer_gap_sensitivity <= 1e-6

    @settings(max_examples=15, deadline=None)
    @given(st.floats(0.01, 2.0))
    def test_model_d_mid_zero_any_gap(self, l_gap):
        rep = dc_bias_check("D", GeometrySpec(l_gap=l_gap))
        assert abs(rep.B["c1.mid"]) <= 1e-9 * abs(rep.B["c1.left"])

    def test_model_b_gap_leg_bypassed_linear(self):
        # The reluctance-divider estimate assumes mu_r = 1000 iron.
        rep = dc_bias_check("B", material=BHCurve.linear(1000.0))
        assert abs(rep.flux["c1.right"]) <= abs(rep.flux["c1.left"]) / 100
        assert rep.checks["gap_leg_bypassed"]

    def test_model_b_dc_circulates_left_mid(self):
        rep = dc_bias_check("B")
        assert rep.flux["c1.left"] > 0 > rep.flux["c1.mid"]
        assert abs(rep.flux["c1.left"] + rep.flux["c1.mid"] + rep.flux["c1.right"]) <= 1e-9 * abs(rep.flux["c1.left"])

    def test_model_d_bias_oracle(self):
        # Two dc windings drive the outer loop and no flux enters the middle leg, so H * l = N_dc * I_dc per leg.
        rep = dc_bias_check("D")
        dev = build("D")
        H = rep.solutions[0].H[0]
        assert H * dev.geometry.l_mean == pytest.approx(500 * 450.0, rel=1e-9)


class TestProperties:
    def test_a_without_aux_is_b(self):
        a, b = build("A"), build("B")
        for ca, cb in zip(a.cores, b.cores):
            stripped = dataclasses.replace(ca, windings=tuple(w for w in ca.windings if w.role != "dc-auxiliary"))
            assert stripped == cb

    @pytest.mark.parametrize("model", ["A", "B", "C"])
    def test_two_cores_mirror(self, model):
        c1, c2 = build(model).cores
        assert [b.length for b in c1.branches] == [b.length for b in c2.branches]
        s1 = {w.id.split(".")[1]: w.sign for w in c1.windings}
        s2 = {w.id.split(".")[1]: w.sign for w in c2.windings}
        assert s1["ac"] == -s2["ac"]
        assert {k: v for k, v in s1.items() if k != "ac"} == {k: v for k, v in s2.items() if k != "ac"}

    @settings(max_examples=20, deadline=None)
    @given(st.floats(1.0, 3e4))
    def test_half_cycle_swap(self, i_ac):
        # Reversing the line current exchanges the flux solutions of the two cores.
        dev = build("A")
        c1, c2 = dev.cores
        bias = dev.windings.i_dc

        def cur(core, i):
            return {w.id: (i if w.role == "ac-series" else bias) for w in core.windings}

        f1p = solve(c1, cur(c1, i_ac)).flux
        f2n = solve(c2, cur(c2, -i_ac)).flux
        np.testing.assert_allclose(f1p, f2n, rtol=1e-9, atol=1e-12)
