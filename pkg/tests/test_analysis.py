import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from scfcl import analysis as an
from scfcl.material import mu_0

TABLE = an.LineParams.from_frequency(14142.1, 50.0, 0.1095, 5.63419e-4)
pos = st.floats(min_value=1e-3, max_value=1e3, allow_subnormal=False)


class TestLineParams:
    def test_derived(self):
        assert TABLE.Z_abs == pytest.approx(0.20813, rel=1e-4)
        assert TABLE.phi_L == pytest.approx(math.atan(TABLE.omega * 5.63419e-4 / 0.1095), rel=1e-12)
        assert TABLE.tau == pytest.approx(5.1454e-3, rel=1e-4)
        assert TABLE.steady_amplitude == pytest.approx(67.95e3, rel=1e-4)

    def test_invalid(self):
        with pytest.raises(ValueError):
            an.LineParams(1.0, 0.0, 1.0, 1.0)


class TestFaultCurrent:
    def test_at_inception(self):
        assert an.fault_current(TABLE, 1234.5, 0.023, TABLE.tau, 0.023) == 1234.5

    def test_long_after(self):
        t = 0.023 + 200 * TABLE.tau
        i = [an.fault_current(TABLE, 1500.0, 0.023, TABLE.tau, t + k * 1e-4) for k in range(200)]
        assert max(np.abs(i)) == pytest.approx(67.95e3, rel=1e-3)

    def test_worst_inception_exceeds_steady(self):
        best = 0.0
        for theta in np.linspace(0, 2 * np.pi, 72, endpoint=False):
            t = np.linspace(0.0, 0.02, 400)
            i = [an.fault_current(TABLE, 0.0, 0.0, TABLE.tau, tk, phase=theta) for tk in t]
            best = max(best, float(np.max(np.abs(i))))
        assert best > TABLE.steady_amplitude

    def test_literal_variant_breaks_initial_condition(self):
        std = an.fault_current(TABLE, 100.0, 0.01, TABLE.tau, 0.01)
        lit = an.fault_current(TABLE, 100.0, 0.01, TABLE.tau, 0.01, literal=True)
        assert std == lit == 100.0
        t = 0.0125
        assert an.fault_current(TABLE, 100.0, 0.01, TABLE.tau, t) != an.fault_current(TABLE, 100.0, 0.01, TABLE.tau, t, literal=True)

    def test_errors(self):
        with pytest.raises(ValueError):
            an.fault_current(TABLE, 0.0, 0.02, TABLE.tau, 0.01)
        with pytest.raises(ValueError):
            an.fault_current(TABLE, 0.0, 0.0, 0.0, 0.01)

    @given(st.floats(-1e4, 1e4), st.floats(0, 0.1))
    def test_continuity(self, i0, tf):
        assert an.fault_current(TABLE, i0, tf, TABLE.tau, tf) == pytest.approx(i0, abs=1e-9)


class TestTimeConstants:
    def test_no_limiter(self):
        tr, tx = an.time_constants(0.1095, 5.63419e-4)
        assert tr == pytest.approx(5.1454e-3, rel=1e-4) and tx == tr

    def test_resistive(self):
        assert an.time_constants(0.1095, 5.63419e-4, R_FCL=0.1095)[0] == pytest.approx(2.5727e-3, rel=1e-4)

    @given(pos, pos, pos, pos)
    def test_ordering(self, R, L, Rf, Lf):
        tr, tx = an.time_constants(R, L, Rf, Lf)
        assert tr < L / R < tx

    @given(pos, pos, pos)
    def test_equal_impedance_ordering(self, R, L, X):
        omega = 2 * math.pi * 50
        tr, tx = an.time_constants(R, L, X, X / omega)
        assert tr < tx

    def test_error(self):
        with pytest.raises(ValueError):
            an.time_constants(0.0, 1e-3)


class TestResonance:
    def test_singular(self):
        w, L = 314.159, 1e-3
        with pytest.raises(an.Resonance):
            an.resonant_impedance(w, L, 1 / (w * w * L))

    def test_half_tuned(self):
        w, L = 314.159, 1e-3
        assert an.resonant_impedance(w, L, 0.5 / (w * w * L)) == pytest.approx(0.62832, rel=1e-4)

    def test_series_limit(self):
        assert an.resonant_impedance(314.159, 1e-3, 0.0) == pytest.approx(0.314159)

    def test_sign_above_resonance(self):
        w, L = 314.159, 1e-3
        assert an.resonant_impedance(w, L, 2 / (w * w * L)) < 0


class TestInductances:
    def test_values(self):
        lx, ly = an.inductances(60, 0.04, 2.0, 1000, 2)
        assert lx == pytest.approx(9.04779e-2, rel=1e-5)
        assert ly == pytest.approx(1.80956e-4, rel=1e-5)

    def test_equal(self):
        lx, ly = an.inductances(60, 0.04, 2.0, 5, 5)
        assert lx == ly

    def test_inductive_fcl(self):
        l_sat, l_lin = an.inductive_fcl_inductances(60, 0.04, 2.0, 0.3)
        assert l_sat == pytest.approx(7.86765e-5, rel=1e-5)
        assert l_lin == pytest.approx(1.20637e-3, rel=1e-5)
        assert l_lin / l_sat == pytest.approx(15.33, rel=1e-3)

    def test_inductive_fcl_limits(self):
        l_sat, l_lin = an.inductive_fcl_inductances(60, 0.04, 2.0, 1e12)
        assert l_sat < 1e-15 and l_lin < 1e-15

    @given(pos, pos, st.floats(1.0, 10.0), st.floats(0.01, 0.99))
    def test_limiting_exceeds_insertion(self, N, A, l, frac):
        l_sat, l_lin = an.inductive_fcl_inductances(N, A, l, frac * l)
        assert l_lin > l_sat


class TestMargin:
    def test_table(self):
        ok, hs = an.saturation_margin(500, 450, 60, 1000, 5000, 2.0)
        assert ok and hs == pytest.approx(77500.0)

    def test_boundary(self):
        ok, hs = an.saturation_margin(500, 450, 60, 1000, (225000 - 60000) / 2.0, 2.0)
        assert not ok and hs == pytest.approx(0.0, abs=1e-9)

    def test_violated(self):
        ok, hs = an.saturation_margin(500, 450, 60, 4000, 5000, 2.0)
        assert not ok and hs < 0


class TestOvervoltage:
    def test_values(self):
        assert an.induced_dc_overvoltage(500, 60, 14142.1) == pytest.approx(117851.0, rel=1e-5)
        assert an.induced_dc_overvoltage(60, 60, 14142.1) == 14142.1
        assert an.induced_dc_overvoltage(500, 60, 0.0) == 0.0


class TestAuxTurns:
    @pytest.mark.parametrize("il,expected", [(450.0, 60), (570.0, 76), (0.0, 0), (451.0, 61)])
    def test_values(self, il, expected):
        assert an.aux_turns(60, il, 450.0) == expected

    def test_error(self):
        with pytest.raises(ValueError):
            an.aux_turns(60, 450.0, 0.0)

    @given(st.integers(1, 1000), st.floats(0, 1e4), st.floats(1, 1e4))
    def test_covers_mmf(self, n, il, idc):
        # Ratios within 1e-9 turns of an integer count as that integer.
        k = an.aux_turns(n, il, idc)
        ratio = n * il / idc
        assert k >= ratio - 1e-9
        assert k - 1 < ratio


class TestInductiveBias:
    def test_values(self):
        b_mid, b_o = an.inductive_dc_bias(mu_0, 500, 450, 2.0, 1.8, 5000.0)
        assert b_mid == 0.0
        assert b_o == pytest.approx(1.93509, rel=1e-5)

    def test_knee(self):
        _, b_o = an.inductive_dc_bias(mu_0, 1, 5000.0 * 2.0, 2.0, 1.8, 5000.0)
        assert b_o == pytest.approx(1.8)
