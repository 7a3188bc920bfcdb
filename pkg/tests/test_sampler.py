import math
import unittest
import numpy as np
import numpy.testing as npt
import tlroa

def circle(theta):
    return math.cos(theta), math.sin(theta)

def failing_circle(theta):
    if theta > 3.0:
        raise RuntimeError('no boundary here')

    return circle(theta)

class TestLosses(unittest.TestCase):
    def test_homogeneous(self):
        kind = tlroa.LossKind.HOMOGENEOUS

        self.assertEqual(tlroa.interval_loss(kind, (0.0, None), (math.pi / 2, None)), 0.25)
        self.assertAlmostEqual(tlroa.interval_loss(kind, (3 * math.pi / 2, None), (0.0, None)), 0.25, places=15)

    def test_euclidean(self):
        loss = tlroa.interval_loss(tlroa.LossKind.EUCLIDEAN, (0.0, (0, 0)), (1.0, (3, 4)))

        self.assertEqual(loss, 5.0)
        self.assertEqual(tlroa.interval_loss(tlroa.LossKind.EUCLIDEAN, (0.0, (0, 0)), (1.0, (3, 4)), scale=(3, 4)), math.sqrt(2))

    def test_curvature(self):
        kind = tlroa.LossKind.CURVATURE

        self.assertEqual(tlroa.interval_loss(kind, (0.0, (0, 0)), (1.0, (1, 0)), ((-1, 0), (2, 0))), 0.0)
        self.assertEqual(tlroa.interval_loss(kind, (0.0, (0, 0)), (1.0, (1, 0)), ((0, 1), (2, 0))), 0.5)

        with self.assertRaises(ValueError):
            tlroa.interval_loss(kind, (0.0, (0, 0)), (1.0, (1, 0)))

    def test_from_string(self):
        self.assertEqual(tlroa.LossKind.from_string('Curvature'), tlroa.LossKind.CURVATURE)
        self.assertEqual(tlroa.LossKind.EUCLIDEAN.label, 'Euclidean')

        with self.assertRaises(ValueError):
            tlroa.LossKind.from_string('area')

    def test_output_scale(self):
        npt.assert_array_equal(tlroa.output_scale([(1, 0), (1, 2), (1, 5)]), [1.0, 5.0])

class TestSampler(unittest.TestCase):
    def run_circle(self, kind, **kwargs):
        return tlroa.run_sampler(circle, tlroa.SamplerConfig(kind, **kwargs))

    def test_homogeneous_doubles_until_goal(self):
        samples = self.run_circle(tlroa.LossKind.HOMOGENEOUS, loss_goal=0.03)

        self.assertEqual(len(samples), 64)
        self.assertEqual(samples.evaluations, 64)
        self.assertTrue(samples.goal_met)
        npt.assert_allclose(samples.thetas, 2 * math.pi * np.arange(64) / 64, atol=1e-12)
        npt.assert_allclose(samples.losses, 1 / 64)

    def test_euclidean_goal(self):
        samples = self.run_circle(tlroa.LossKind.EUCLIDEAN, loss_goal=0.03)

        # The normalized chord is sin(width / 2), below 0.03 from 128 samples on.
        self.assertEqual(len(samples), 128)
        self.assertTrue(samples.goal_met)

    def test_curvature_needs_fewer_evaluations(self):
        curvature = self.run_circle(tlroa.LossKind.CURVATURE, loss_goal=0.03)
        euclidean = self.run_circle(tlroa.LossKind.EUCLIDEAN, loss_goal=0.03)

        self.assertTrue(curvature.goal_met)
        self.assertLess(curvature.max_loss, 0.03)
        self.assertLess(curvature.evaluations, euclidean.evaluations)

    def test_samples_sorted_with_insertion_order(self):
        samples = self.run_circle(tlroa.LossKind.CURVATURE, loss_goal=0.03)

        self.assertTrue(np.all(np.diff(samples.thetas) > 0))
        self.assertTrue(0 <= samples.thetas[0] and samples.thetas[-1] < 2 * math.pi)
        self.assertEqual(sorted(samples.insertion_index), list(range(len(samples))))
        self.assertEqual(samples.insertion_index[0], 0)

        for theta, point in zip(samples.thetas, samples.points):
            npt.assert_allclose(point, circle(theta))

    def test_budget_exhausted(self):
        samples = self.run_circle(tlroa.LossKind.HOMOGENEOUS, loss_goal=0.03, n_max=20)

        self.assertEqual(len(samples), 20)
        self.assertEqual(samples.reason, tlroa.TerminationReason.BUDGET_EXHAUSTED)
        self.assertEqual(samples.reason.label, 'BudgetExhausted')
        self.assertAlmostEqual(samples.max_loss, 1 / 16, places=15)

    def test_batches(self):
        batched = self.run_circle(tlroa.LossKind.HOMOGENEOUS, loss_goal=0.03, batch_size=4)

        self.assertEqual(len(batched), 64)
        npt.assert_allclose(batched.thetas, 2 * math.pi * np.arange(64) / 64, atol=1e-12)

    def test_workers_give_the_same_samples(self):
        cfg    = tlroa.SamplerConfig(tlroa.LossKind.CURVATURE, loss_goal=0.03, batch_size=4)
        single = tlroa.run_sampler(circle, cfg, jobs=1)
        pooled = tlroa.run_sampler(circle, cfg, jobs=2)

        npt.assert_array_equal(single.thetas, pooled.thetas)
        npt.assert_array_equal(single.points, pooled.points)
        npt.assert_array_equal(single.insertion_index, pooled.insertion_index)

    def test_default_batch_follows_jobs(self):
        self.assertIsNone(tlroa.SamplerConfig().batch_size)

        cfg      = tlroa.SamplerConfig(tlroa.LossKind.CURVATURE, loss_goal=0.03)
        pooled   = tlroa.run_sampler(circle, cfg, jobs=4)
        explicit = tlroa.run_sampler(circle, tlroa.SamplerConfig(tlroa.LossKind.CURVATURE, loss_goal=0.03, batch_size=4))
        serial   = tlroa.run_sampler(circle, cfg, jobs=1)
        single   = tlroa.run_sampler(circle, tlroa.SamplerConfig(tlroa.LossKind.CURVATURE, loss_goal=0.03, batch_size=1))

        npt.assert_array_equal(pooled.thetas, explicit.thetas)
        npt.assert_array_equal(pooled.insertion_index, explicit.insertion_index)
        npt.assert_array_equal(serial.thetas, single.thetas)
        npt.assert_array_equal(serial.insertion_index, single.insertion_index)

    def test_failure_reports_angle(self):
        with self.assertRaises(tlroa.SamplerError) as cm:
            tlroa.run_sampler(failing_circle)

        self.assertAlmostEqual(cm.exception.theta, math.pi, places=15)
        self.assertIn('no boundary here', str(cm.exception))

    def test_invalid_config(self):
        with self.assertRaises(tlroa.InvalidParameter):
            tlroa.SamplerConfig(n_min=3)

        with self.assertRaises(tlroa.InvalidParameter):
            tlroa.SamplerConfig(n_min=16, n_max=8)

        with self.assertRaises(tlroa.InvalidParameter):
            tlroa.SamplerConfig(loss_goal=0)

    def test_dense_reference(self):
        reference = tlroa.dense_reference(circle, 32)

        self.assertEqual(len(reference), 32)
        self.assertTrue(reference.goal_met)
        self.assertEqual(reference.loss_kind, tlroa.LossKind.HOMOGENEOUS)

    def test_hausdorff_error_against_reference(self):
        reference = tlroa.dense_reference(circle, 512)
        coarse    = self.run_circle(tlroa.LossKind.HOMOGENEOUS, loss_goal=0.1)
        fine      = self.run_circle(tlroa.LossKind.HOMOGENEOUS, loss_goal=0.03)

        self.assertLess(tlroa.hausdorff_distance(fine.points, reference.points),
                        tlroa.hausdorff_distance(coarse.points, reference.points))

    def test_compare_losses(self):
        reference = tlroa.dense_reference(circle, 256)
        configs   = [tlroa.SamplerConfig(kind, loss_goal=0.03) for kind in tlroa.LossKind]
        table, samples = tlroa.compare_losses(circle, configs, reference)

        self.assertEqual(list(table['loss_kind']), ['Homogeneous', 'Euclidean', 'Curvature'])
        self.assertEqual(list(table['samples']), [len(s) for s in samples])
        self.assertTrue(np.all(table['error'] < 0.02))

if __name__ == '__main__':
    unittest.main()
