import math
import unittest
import numpy as np
import numpy.testing as npt
import tlroa

def box(x1, x2, half_width, half_height):
    return tlroa.BoundaryCurve([
        (x1 - half_width, x2 - half_height),
        (x1 + half_width, x2 - half_height),
        (x1 + half_width, x2 + half_height),
        (x1 - half_width, x2 + half_height)
    ])

def point(t, verdict, simulated=None):
    return tlroa.SweepPoint(t, tlroa.State(0.0, 0.0), verdict, simulated or verdict)

HOME     = tlroa.Verdict.home()
UNSTABLE = tlroa.Verdict.unstable()

class TestMembership(unittest.TestCase):
    def test_neighbor_order(self):
        self.assertEqual(tlroa.neighbor_order(0), [0])
        self.assertEqual(tlroa.neighbor_order(2), [0, 1, -1, 2, -2])

    def test_verdicts(self):
        home = box(0.0, 0.0, 1.0, 1.0)

        self.assertEqual(tlroa.membership_verdict(tlroa.State(0.5, 0.5), home), (HOME, (0,)))
        self.assertEqual(tlroa.membership_verdict(tlroa.State(2 * math.pi, 0.0), home), (tlroa.Verdict.neighbor(1), (0, 1)))
        self.assertEqual(tlroa.membership_verdict(tlroa.State(-2 * math.pi + 0.5, 0.0), home), (tlroa.Verdict.neighbor(-1), (0, 1, -1)))
        self.assertEqual(tlroa.membership_verdict(tlroa.State(0.0, 5.0), home), (UNSTABLE, (0, 1, -1, 2, -2)))

    def test_k_max_limits_translations(self):
        home  = box(0.0, 0.0, 1.0, 1.0)
        state = tlroa.State(4 * math.pi, 0.0)

        self.assertEqual(tlroa.membership_verdict(state, home, 2)[0], tlroa.Verdict.neighbor(2))
        self.assertEqual(tlroa.membership_verdict(state, home, 1), (UNSTABLE, (0, 1, -1)))

    def test_translation_equivariance(self):
        home = tlroa.BoundaryCurve([(-1.0, -2.0), (1.2, -0.5), (0.3, 2.5)])
        rng  = np.random.default_rng(11)

        for _ in range(50):
            state = tlroa.State(rng.uniform(-1.2, 1.4), rng.uniform(-2.5, 3.0))
            base  = tlroa.membership_verdict(state, home)[0]

            for k in (-2, -1, 1, 2):
                self.assertEqual(tlroa.membership_verdict(state.shifted(k), home)[0], base.shifted(k))
                self.assertEqual(tlroa.membership_verdict(state.shifted(k), home.translated(k))[0], base.shifted(k))

    def test_shifted_home(self):
        home = box(0.0, 0.0, 1.0, 1.0).translated(1)

        self.assertEqual(tlroa.membership_verdict(tlroa.State(2 * math.pi, 0.0), home)[0], tlroa.Verdict.neighbor(1))
        self.assertEqual(tlroa.membership_verdict(tlroa.State(0.0, 0.0), home)[0], HOME)

class TestFaultTrajectory(unittest.TestCase):
    def setUp(self):
        self.sc = tlroa.Scenario.default()

    def test_during_fault(self):
        sc   = self.sc
        traj = tlroa.fault_trajectory(sc)

        self.assertEqual(traj.times[0], sc.t_fault_start)
        self.assertEqual(traj.times[-1], sc.t_fault_clear)
        self.assertEqual(traj.start, tlroa.equilibrium(sc, tlroa.Phase.PREFAULT))
        self.assertEqual([e.kind for e in traj.events], [tlroa.EventKind.FAULT_APPLIED])

        # No electrical torque during the fault, so the PLL decelerates.
        self.assertLess(traj.end.x2, 0.0)

    def test_cleared_at_once(self):
        traj = tlroa.fault_trajectory(self.sc, self.sc.t_fault_start)

        self.assertEqual(len(traj), 1)
        self.assertEqual(traj.end, tlroa.equilibrium(self.sc, tlroa.Phase.PREFAULT))

        with self.assertRaises(ValueError):
            tlroa.fault_trajectory(self.sc, self.sc.t_fault_start - 0.1)

    def test_assess(self):
        sc     = self.sc
        result = tlroa.assess(sc, sc.t_fault_clear, box(0.3, 0.0, 10.0, 100.0))

        self.assertEqual(result.verdict, HOME)
        self.assertEqual(result.shifts_tested, (0,))
        self.assertEqual(result.clearing_time, sc.t_fault_clear)
        self.assertEqual(result.post_fault_state, tlroa.fault_trajectory(sc).end)
        self.assertAlmostEqual(result.wrapped_state.x1, tlroa.utils.wrap_angle(result.post_fault_state.x1), places=15)
        self.assertEqual(result.scenario_hash, sc.digest())

    def test_assess_with_trajectory_and_check(self):
        sc     = self.sc
        traj   = tlroa.fault_trajectory(sc)
        seed   = tlroa.build_seed(sc, n_check=8)
        result = tlroa.assess(sc, sc.t_fault_clear, box(0.3, 0.0, 10.0, 100.0), seed=seed, trajectory=traj)

        self.assertEqual(result.post_fault_state, traj.end)
        self.assertEqual(result.simulated, HOME)
        self.assertFalse(result.is_violation)
        self.assertIsNone(tlroa.assess(sc, sc.t_fault_clear, box(0.3, 0.0, 10.0, 100.0), trajectory=traj).simulated)

        with self.assertRaises(ValueError):
            tlroa.assess(sc, sc.t_fault_clear + 0.1, box(0.3, 0.0, 10.0, 100.0), trajectory=traj)

    def test_assess_outside_every_curve(self):
        sc     = self.sc
        result = tlroa.assess(sc, sc.t_fault_clear, box(0.3, 50.0, 0.1, 0.1), k_max=1)

        self.assertEqual(result.verdict, UNSTABLE)
        self.assertEqual(result.shifts_tested, (0, 1, -1))

class TestClearingWindows(unittest.TestCase):
    def test_clearing_times(self):
        npt.assert_allclose(tlroa.clearing_times(0.0, 0.3, 0.1), [0.0, 0.1, 0.2, 0.3])
        npt.assert_allclose(tlroa.clearing_times(0.5, 0.5, 0.1), [0.5])
        self.assertEqual(len(tlroa.clearing_times(0.0, 0.25, 0.1)), 3)

        with self.assertRaises(ValueError):
            tlroa.clearing_times(0.0, 1.0, 0.0)

        with self.assertRaises(ValueError):
            tlroa.clearing_times(1.0, 0.0, 0.1)

    def test_coalesce(self):
        points  = [point(0.0, HOME), point(0.1, HOME), point(0.2, UNSTABLE), point(0.3, UNSTABLE), point(0.4, HOME)]
        windows = tlroa.coalesce_windows(points)

        self.assertEqual(windows, [
            tlroa.ClearingWindow(0.0, 0.1, HOME),
            tlroa.ClearingWindow(0.2, 0.3, UNSTABLE),
            tlroa.ClearingWindow(0.4, 0.4, HOME)
        ])
        self.assertEqual(str(windows[1]), '[0.2, 0.3] s: Unstable')

        sweep = tlroa.ClearingSweep(points, windows)

        npt.assert_allclose(sweep.transitions(), [0.15, 0.35])
        self.assertEqual(tlroa.coalesce_windows([]), [])

    def test_disagreements(self):
        violation    = point(0.0, HOME, UNSTABLE)
        conservative = point(0.1, UNSTABLE, HOME)
        sweep        = tlroa.ClearingSweep([violation, conservative, point(0.2, HOME)], [])

        self.assertTrue(violation.is_violation)
        self.assertTrue(conservative.is_conservative)
        self.assertEqual(sweep.violations, [violation])
        self.assertEqual(sweep.mismatches, [violation, conservative])

    def test_sweep(self):
        sc   = tlroa.Scenario.default(ramp_rate=math.inf)
        seed = tlroa.build_seed(sc, n_check=16)
        home = box(seed.x_eq.x1, 0.0, 0.5, 2.0)

        sweep = tlroa.clearing_windows(sc, (0.0, 0.02), 0.01, home, seed=seed)

        npt.assert_allclose([p.clearing_time for p in sweep.points], [0.0, 0.01, 0.02])
        self.assertEqual([p.verdict for p in sweep.points], [HOME] * 3)
        self.assertEqual([p.simulated for p in sweep.points], [HOME] * 3)
        self.assertEqual(sweep.windows, [tlroa.ClearingWindow(0.0, 0.02, HOME)])
        self.assertEqual(sweep.violations, [])
        self.assertEqual(sweep.transitions(), [])
        self.assertEqual(sweep.simulation_count, 5)
        self.assertEqual(sweep.points[0].post_fault_state, seed.x_eq)

    def test_sweep_counts_runs_made(self):
        sc   = tlroa.Scenario.default(ramp_rate=math.inf)
        seed = tlroa.build_seed(sc, n_check=4)
        home = box(seed.x_eq.x1, 0.0, 0.5, 2.0)

        # Clearing before the fault starts is refused without any run.
        sweep  = tlroa.clearing_windows(sc, (-0.01, 0.01), 0.01, home, seed=seed)
        failed = sweep.points[0]

        self.assertIsNone(failed.post_fault_state)
        self.assertEqual(failed.verdict, UNSTABLE)
        self.assertTrue(failed.note.startswith('ValueError'))
        self.assertEqual(sweep.simulation_count, 0 + 1 + 2)

if __name__ == '__main__':
    unittest.main()
