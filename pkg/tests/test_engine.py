import math
import unittest
import numpy as np
import numpy.testing as npt
import tlroa

class TestForward(unittest.TestCase):
    def setUp(self):
        self.sc = tlroa.Scenario.default()
        self.eq = tlroa.equilibrium(self.sc)

    def test_rest_at_equilibrium(self):
        traj = tlroa.integrate_forward(self.eq, 1.0, 2.0, self.sc)

        self.assertEqual(traj.times[0], 1.0)
        self.assertEqual(traj.times[-1], 2.0)
        self.assertLess(traj.end.distance(self.eq), 1e-8)
        self.assertEqual(traj.events, [])

    def test_switch_events(self):
        sc   = self.sc
        traj = tlroa.integrate_forward(tlroa.equilibrium(sc, tlroa.Phase.PREFAULT), -0.1, 1.0, sc)
        kinds = [e.kind for e in traj.events]

        self.assertEqual(kinds, [
            tlroa.EventKind.FAULT_APPLIED,
            tlroa.EventKind.FAULT_CLEARED,
            tlroa.EventKind.RAMP_STARTED,
            tlroa.EventKind.RAMP_ENDED
        ])
        self.assertEqual([e.time for e in traj.events], [sc.t_fault_start, sc.t_fault_clear, sc.t_fault_clear, sc.t_ramp_end])

        for t in sc.switch_times():
            self.assertIn(t, traj.times)

        self.assertTrue(np.all(np.diff(traj.times) > 0))
        self.assertEqual(tlroa.EventKind.FAULT_CLEARED.label, 'FaultCleared')

    def test_step_recovery_has_no_ramp_events(self):
        sc   = tlroa.Scenario.default(ramp_rate=math.inf)
        traj = tlroa.integrate_forward(tlroa.equilibrium(sc, tlroa.Phase.PREFAULT), 0.0, 0.5, sc)

        self.assertEqual([e.kind for e in traj.events], [tlroa.EventKind.FAULT_APPLIED, tlroa.EventKind.FAULT_CLEARED])

    def test_divergence(self):
        start = tlroa.State(self.eq.x1, 1000.0)
        traj  = tlroa.integrate_forward(start, 1.0, 6.0, self.sc, reference=self.eq)
        event = traj.last_event()

        self.assertEqual(event.kind, tlroa.EventKind.DIVERGENCE_DETECTED)
        self.assertLess(event.time, 6.0)
        self.assertAlmostEqual(abs(traj.end.x1 - self.eq.x1), tlroa.IntegratorConfig().divergence_radius, delta=1e-6)

    def test_shifted_equilibrium_is_not_divergent(self):
        traj = tlroa.integrate_forward(self.eq.shifted(2), 1.0, 2.0, self.sc, reference=self.eq)

        self.assertEqual(traj.times[-1], 2.0)
        self.assertLess(traj.end.distance(self.eq.shifted(2)), 1e-8)
        self.assertEqual(traj.events, [])

    def test_divergence_measured_from_start(self):
        start = tlroa.State(self.eq.x1 + 4 * math.pi, 1000.0)
        traj  = tlroa.integrate_forward(start, 1.0, 6.0, self.sc, reference=self.eq)
        limit = tlroa.IntegratorConfig().divergence_radius + 4 * math.pi

        self.assertEqual(traj.last_event().kind, tlroa.EventKind.DIVERGENCE_DETECTED)
        self.assertAlmostEqual(traj.end.x1 - self.eq.x1, limit, delta=1e-6)

    def test_invalid_span(self):
        with self.assertRaises(ValueError):
            tlroa.integrate_forward(self.eq, 1.0, 1.0, self.sc)

class TestReverse(unittest.TestCase):
    def setUp(self):
        self.sc  = tlroa.Scenario.default()
        self.eq  = tlroa.equilibrium(self.sc)
        self.cfg = tlroa.IntegratorConfig(rel_tol=1e-11, abs_tol=1e-12, max_step=0.005)

    def roundtrip_error(self, start: tlroa.State, duration: float, mode: tlroa.SaturationMode) -> float:
        sc   = self.sc
        fwd  = tlroa.integrate_forward(start, sc.t_fault_clear, sc.t_fault_clear + duration, sc, self.cfg, mode)
        back = tlroa.integrate_reverse(fwd.end, duration, sc, self.cfg, mode)

        return back.end.distance(start)

    def test_roundtrip(self):
        rng = np.random.default_rng(3)

        for mode in (tlroa.SaturationMode.NONE, tlroa.SaturationMode.SMOOTH):
            for _ in range(5):
                start = tlroa.State(self.eq.x1 + rng.uniform(-0.5, 0.5), rng.uniform(-5, 5))

                self.assertLess(self.roundtrip_error(start, 0.8, mode), 1e-4)

    def test_roundtrip_through_smooth_saturation(self):
        # Starts beyond the frequency limit, so the saturated region is crossed.
        start = tlroa.State(self.eq.x1, 1.5 * self.sc.params.sat_limit)

        self.assertLess(self.roundtrip_error(start, 0.5, tlroa.SaturationMode.SMOOTH), 1e-3)

    def test_reverse_clock(self):
        sc   = self.sc
        back = tlroa.integrate_reverse(self.eq, 0.8, sc)

        self.assertEqual(back.direction, tlroa.Direction.REVERSE)
        self.assertEqual(back.times[0], 0.0)
        self.assertAlmostEqual(back.times[-1], 0.8, places=12)
        self.assertAlmostEqual(back.scenario_times()[-1], sc.t_fault_clear, places=12)

        # Crossing the end of the ramp on the backward clock.
        ended = [e for e in back.events if e.kind == tlroa.EventKind.RAMP_ENDED]
        self.assertEqual(len(ended), 1)
        self.assertAlmostEqual(ended[0].time, sc.t_fault_clear + 0.8 - sc.t_ramp_end, places=12)

    def test_hard_saturation_refused(self):
        with self.assertRaises(tlroa.HardSaturationNotReversible):
            tlroa.integrate_reverse(self.eq, 0.5, self.sc, sat_mode=tlroa.SaturationMode.HARD)

        hard = self.sc.with_params(sat_mode=tlroa.SaturationMode.HARD)

        with self.assertRaises(tlroa.IntegrationError):
            tlroa.integrate_reverse(self.eq, 0.5, hard)

    def test_invalid_duration(self):
        with self.assertRaises(ValueError):
            tlroa.integrate_reverse(self.eq, 0.0, self.sc)

class TestTrajectory(unittest.TestCase):
    def test_wrapped(self):
        traj = tlroa.Trajectory([0.0, 1.0], [[3 * math.pi / 2, 1.0], [-3 * math.pi / 2, 2.0]])
        view = traj.wrapped()

        npt.assert_allclose(view.deltas, [-math.pi / 2, math.pi / 2])
        npt.assert_array_equal(view.omegas, traj.omegas)
        self.assertEqual(traj.deltas[0], 3 * math.pi / 2)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            tlroa.Trajectory([0.0, 0.0], [[0, 0], [1, 1]])

        with self.assertRaises(ValueError):
            tlroa.Trajectory([0.0], [[0, math.inf]])

if __name__ == '__main__':
    unittest.main()
