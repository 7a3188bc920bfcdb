import dataclasses
import math
import unittest
import tlroa

class TestSystemParams(unittest.TestCase):
    def test_default_grid_strength(self):
        p = tlroa.SystemParams.default()

        self.assertAlmostEqual(p.SCR, 3.3, places=12)
        self.assertAlmostEqual(p.XR, 18.6, places=12)
        self.assertAlmostEqual(math.hypot(p.r_Lg, p.L_g), 1 / 3.3, places=12)

    def test_bases(self):
        p = tlroa.SystemParams.default()

        self.assertAlmostEqual(p.V_peak, 690 * math.sqrt(2 / 3), places=9)
        self.assertAlmostEqual(p.I_b, 12e6 / (math.sqrt(3) * 690), places=9)
        self.assertAlmostEqual(p.I_peak, 14200, delta=1)
        self.assertAlmostEqual(p.volts(1.0), p.Z_b * p.amps(1.0), places=9)
        self.assertAlmostEqual(p.Z_b, 690 ** 2 / 12e6, places=15)
        self.assertAlmostEqual(p.grid_inductance, p.L_g * p.Z_b / (2 * math.pi * 50), places=15)

    def test_ramp_rate_units(self):
        p = tlroa.SystemParams.default()

        # kA/s are RMS amperes per second on the 10.04 kA base.
        self.assertAlmostEqual(p.kA_per_s_to_pu(14.2), math.sqrt(2), delta=1e-3)
        self.assertAlmostEqual(p.kA_per_s_to_pu(28.4), 2 * math.sqrt(2), delta=1e-3)
        self.assertAlmostEqual(p.kA_per_s_to_pu(42.6), 3 * math.sqrt(2), delta=1e-3)
        self.assertAlmostEqual(p.pu_to_kA_per_s(p.kA_per_s_to_pu(42.6)), 42.6, places=12)

    def test_invalid_values(self):
        with self.assertRaises(tlroa.InvalidParameter):
            tlroa.SystemParams(k_p=0.025, k_i=-1.5, r_Lg=0.01, L_g=0.3)

        with self.assertRaises(tlroa.InvalidParameter):
            tlroa.SystemParams.from_grid_strength(scr=0, xr=18.6)

        with self.assertRaises(ValueError):
            tlroa.SystemParams(k_p=0.025, k_i=1.5, r_Lg=math.nan, L_g=0.3)

    def test_with_grid_strength(self):
        p = tlroa.SystemParams.default().with_grid_strength(1.1)

        self.assertAlmostEqual(p.SCR, 1.1, places=12)
        self.assertAlmostEqual(p.XR, 18.6, places=9)
        self.assertEqual(p.k_p, 0.025)

    def test_saturation_mode_from_string(self):
        self.assertEqual(tlroa.SaturationMode.from_string('Smooth'), tlroa.SaturationMode.SMOOTH)
        self.assertEqual(tlroa.SaturationMode.from_string(' hard '), tlroa.SaturationMode.HARD)

        with self.assertRaises(ValueError):
            tlroa.SaturationMode.from_string('soft')

class TestScenario(unittest.TestCase):
    def test_default_ramp(self):
        sc = tlroa.Scenario.default()

        self.assertAlmostEqual(sc.ramp_rate_kA_per_s, 28.4, places=9)
        self.assertAlmostEqual(sc.ramp_duration, 0.99 / sc.ramp_rate, places=15)
        self.assertAlmostEqual(sc.t_ramp_end, sc.t_fault_clear + sc.ramp_duration, places=15)
        self.assertEqual(sc.switch_times(), [sc.t_fault_start, sc.t_fault_clear, sc.t_ramp_end])

    def test_phases(self):
        sc = tlroa.Scenario.default()

        self.assertEqual(sc.phase_at(-0.1),           tlroa.Phase.PREFAULT)
        self.assertEqual(sc.phase_at(sc.t_fault_start), tlroa.Phase.FAULT)
        self.assertEqual(sc.phase_at(sc.t_fault_clear), tlroa.Phase.RAMP)
        self.assertEqual(sc.phase_at(sc.t_ramp_end),    tlroa.Phase.POSTFAULT)

    def test_operating_points(self):
        sc = tlroa.Scenario.default()
        p  = sc.params

        fault = sc.operating_point(0.05)
        self.assertEqual((fault.v_g, fault.i_d, fault.i_q), (p.V_g_fault, sc.i_d_fault, sc.i_q_fault))

        middle = sc.operating_point(sc.t_fault_clear + sc.ramp_duration / 2)
        self.assertAlmostEqual(middle.i_d, (sc.i_d_fault + sc.i_d_target) / 2, places=12)
        self.assertAlmostEqual(middle.di_d_dt, sc.ramp_rate, places=12)

        # The ramp's own schedule evaluated at its end reaches the target.
        end = sc.operating_point(sc.t_ramp_end, tlroa.Phase.RAMP)
        self.assertAlmostEqual(end.i_d, sc.i_d_target, places=12)

        after = sc.operating_point(sc.t_ramp_end + 1)
        self.assertEqual((after.i_d, after.di_d_dt), (sc.i_d_target, 0.0))

    def test_step_recovery(self):
        sc = tlroa.Scenario.default(ramp_rate=math.inf)

        self.assertEqual(sc.ramp_duration, 0.0)
        self.assertEqual(sc.t_ramp_end, sc.t_fault_clear)
        self.assertEqual(sc.phase_at(sc.t_fault_clear), tlroa.Phase.POSTFAULT)
        self.assertEqual(len(sc.switch_times()), 2)

    def test_postfault_reactive_current_defaults_to_prefault(self):
        sc = tlroa.Scenario.default(i_q_prefault=-0.2)

        self.assertEqual(sc.i_q_postfault, -0.2)

    def test_current_limit(self):
        i_d = tlroa.max_fault_active_current(-1.0)

        self.assertAlmostEqual(i_d, math.sqrt(1.1 ** 2 - 1), places=15)

        tlroa.Scenario.default(i_d_fault=i_d)

        with self.assertRaises(tlroa.InvalidParameter):
            tlroa.Scenario.default(i_d_fault=0.5)

        with self.assertRaises(ValueError):
            tlroa.max_fault_active_current(-1.2)

    def test_invalid_schedule(self):
        with self.assertRaises(tlroa.InvalidParameter):
            tlroa.Scenario.default(ramp_rate=0.0)

        with self.assertRaises(tlroa.InvalidParameter):
            tlroa.Scenario.default(t_fault_clear=0.0)

    def test_digest(self):
        sc = tlroa.Scenario.default()

        self.assertEqual(sc.digest(), tlroa.Scenario.default().digest())
        self.assertEqual(len(sc.digest()), 8)
        self.assertNotEqual(sc.digest(), sc.with_clearing_time(0.2).digest())
        self.assertNotEqual(sc.digest(), sc.with_params(sat_mode=tlroa.SaturationMode.SMOOTH).digest())

    def test_with_helpers(self):
        sc = tlroa.Scenario.default()

        self.assertAlmostEqual(sc.with_ramp_rate_kA_per_s(14.2).ramp_rate_kA_per_s, 14.2, places=12)
        self.assertEqual(sc.with_clearing_time(0.3).t_fault_clear, 0.3)
        self.assertEqual(sc.with_params(k_i=2.0).params.k_i, 2.0)
        self.assertEqual(dataclasses.replace(sc, i_d_fault=0.2).i_d_fault, 0.2)

class TestVerdict(unittest.TestCase):
    def test_strings(self):
        self.assertEqual(str(tlroa.Verdict.home()),        'StableHome')
        self.assertEqual(str(tlroa.Verdict.neighbor(-1)),  'StableNeighbor(-1)')
        self.assertEqual(str(tlroa.Verdict.unstable()),    'Unstable')

        for text in ('StableHome', 'StableNeighbor(2)', 'Unstable'):
            self.assertEqual(str(tlroa.Verdict.from_string(text)), text)

        with self.assertRaises(ValueError):
            tlroa.Verdict.from_string('Stable')

    def test_basins(self):
        self.assertEqual(tlroa.Verdict.from_basin(0), tlroa.Verdict.home())
        self.assertEqual(tlroa.Verdict.from_basin(1), tlroa.Verdict.neighbor(1))
        self.assertEqual(tlroa.Verdict.neighbor(1).shifted(-1), tlroa.Verdict.home())
        self.assertEqual(tlroa.Verdict.unstable().shifted(3), tlroa.Verdict.unstable())
        self.assertFalse(tlroa.Verdict.unstable().is_stable)

        with self.assertRaises(ValueError):
            tlroa.Verdict.neighbor(0)

class TestUtils(unittest.TestCase):
    def test_wrap_angle(self):
        self.assertAlmostEqual(tlroa.utils.wrap_angle(3 * math.pi / 2), -math.pi / 2, places=12)
        self.assertAlmostEqual(tlroa.utils.wrap_angle(-3 * math.pi / 2), math.pi / 2, places=12)
        self.assertEqual(tlroa.utils.wrap_angle(math.pi), math.pi)
        self.assertEqual(tlroa.utils.wrap_angle(-math.pi), math.pi)
        self.assertAlmostEqual(tlroa.utils.wrap_angle(0.3 + 4 * math.pi), 0.3, places=12)

    def test_format_float_round_trips(self):
        for value in (0.1, 1 / 3, 2 * math.pi, 1e-300, -123456.789):
            self.assertEqual(float(tlroa.utils.format_float(value)), value)

    def test_state(self):
        s = tlroa.State(0.3, -2.0)

        self.assertAlmostEqual(s.shifted(1).x1, 0.3 + 2 * math.pi, places=15)
        self.assertEqual(s.distance(tlroa.State(0.3, 1.0)), 3.0)
        self.assertEqual(tlroa.State.from_array(s.as_array()), s)

        with self.assertRaises(ValueError):
            tlroa.State(math.nan, 0.0)
