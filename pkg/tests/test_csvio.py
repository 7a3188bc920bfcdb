import csv
import io
import math
import unittest
import numpy as np
import tlroa

class TestFormatValue(unittest.TestCase):
    def test_floats_round_trip(self):
        rng    = np.random.default_rng(5)
        values = list(rng.normal(scale=1e3, size=200)) + [math.pi, 1 / 3, 2.0 ** -1074, 1.7976931348623157e308, -0.0]

        for value in values:
            text = tlroa.format_value(value)

            self.assertEqual(float(text), float(value), text)
            self.assertLessEqual(len(text.lstrip('-').replace('.', '').split('e')[0]), 17)

    def test_other_cells(self):
        self.assertEqual(tlroa.format_value(None), '')
        self.assertEqual(tlroa.format_value(True), 'true')
        self.assertEqual(tlroa.format_value(float('nan')), 'nan')
        self.assertEqual(tlroa.format_value(np.float64(0.5)), '0.5')
        self.assertEqual(tlroa.format_value(3), '3')

class TestTrajectoryCSV(unittest.TestCase):
    def setUp(self):
        self.traj = tlroa.Trajectory(
            [0.0, 0.1, 0.2],
            [[0.1, 0.0], [1 / 3, -2.5], [7.0, math.pi]],
            [
                tlroa.Event(0.1, tlroa.EventKind.FAULT_CLEARED),
                tlroa.Event(0.1, tlroa.EventKind.RAMP_STARTED)
            ]
        )

    def write(self, **kwargs) -> str:
        file = io.StringIO()
        tlroa.write_trajectory_csv(file, self.traj, 'abc123', **kwargs)

        return file.getvalue()

    def test_layout(self):
        lines = self.write().splitlines()

        self.assertEqual(lines[0], '# tlroa trajectory')
        self.assertEqual(lines[1], '# config_hash: abc123')
        self.assertIn('# clock: forward', lines)
        self.assertIn('# wrapped: false', lines)
        self.assertIn('# units: t=s, delta_rad=rad, ddelta_rad_per_s=rad/s', lines)

        rows = list(csv.reader(line for line in lines if not line.startswith('#')))

        self.assertEqual(rows[0], ['t', 'delta_rad', 'ddelta_rad_per_s', 'event'])
        self.assertEqual(len(rows), 4)
        self.assertEqual(rows[1][3], '')
        self.assertEqual(rows[2][3], 'FaultCleared|RampStarted')

    def test_values_round_trip(self):
        text = self.write()
        rows = list(csv.DictReader(line for line in text.splitlines() if not line.startswith('#')))

        np.testing.assert_array_equal([float(r['t']) for r in rows], self.traj.times)
        np.testing.assert_array_equal([[float(r['delta_rad']), float(r['ddelta_rad_per_s'])] for r in rows], self.traj.states)

    def test_wrapped(self):
        rows   = [line for line in self.write(wrapped=True).splitlines() if not line.startswith('#')]
        deltas = [float(row.split(',')[1]) for row in rows[1:]]

        self.assertTrue(all(-math.pi < d <= math.pi for d in deltas))
        self.assertAlmostEqual(deltas[2], 7.0 - 2 * math.pi, places=14)

if __name__ == '__main__':
    unittest.main()
