import math
import unittest
import numpy as np
import numpy.testing as npt
import tlroa

SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]

def star_polygon(rng, n=40):
    phi   = 2 * math.pi * np.arange(n) / n
    radii = rng.uniform(0.3, 1.0, size=n)

    return np.column_stack([radii * np.cos(phi), radii * np.sin(phi)])

class TestPolygon(unittest.TestCase):
    def test_area_and_orientation(self):
        self.assertEqual(tlroa.polygon_area(SQUARE), 1.0)
        self.assertEqual(tlroa.polygon_area(SQUARE[::-1]), -1.0)

        curve = tlroa.BoundaryCurve(SQUARE[::-1], thetas=[0.0, 1.0, 2.0, 3.0])

        self.assertEqual(curve.signed_area, 1.0)
        npt.assert_array_equal(curve.thetas, [3.0, 2.0, 1.0, 0.0])

    def test_contains(self):
        self.assertTrue(tlroa.contains(SQUARE, (0.5, 0.5)))
        self.assertFalse(tlroa.contains(SQUARE, (1.5, 0.5)))
        self.assertTrue(tlroa.contains(SQUARE, (1.0, 0.5)))
        self.assertTrue(tlroa.contains(SQUARE, tlroa.State(0.0, 0.0)))
        npt.assert_array_equal(tlroa.contains_points(SQUARE, [(0.5, 0.5), (2, 2), (0.5, -1e-3)]), [True, False, False])

    def test_contains_agrees_with_winding_number(self):
        rng     = np.random.default_rng(5)
        polygon = star_polygon(rng)
        points  = rng.uniform(-1.1, 1.1, size=(1000, 2))
        inside  = tlroa.contains_points(polygon, points)

        for point, flag in zip(points, inside):
            self.assertEqual(bool(flag), tlroa.winding_number(polygon, point) != 0)

        self.assertEqual(tlroa.winding_number(polygon, (0.0, 0.0)), 1)
        self.assertEqual(tlroa.winding_number(polygon[::-1], (0.0, 0.0)), -1)

    def test_self_intersections(self):
        self.assertEqual(tlroa.self_intersections(SQUARE), [])

        polygon = [(0, 0), (6, 0), (6, 6), (2, 6), (3, 7), (3, 5), (0, 6)]

        self.assertEqual(tlroa.self_intersections(polygon), [(2, 4)])

        vertices, positions, warnings = tlroa.repair_self_intersections(polygon)

        self.assertEqual(positions, [0.0, 1.0, 2.0, 2.75, 5.0, 6.0])
        self.assertEqual(warnings, ['removed a self-intersecting loop of 2 vertices'])
        self.assertEqual(tlroa.self_intersections(vertices), [])
        npt.assert_allclose(vertices, [(0, 0), (6, 0), (6, 6), (3, 6), (3, 5), (0, 6)])

    def test_repair_keeps_outer_boundary(self):
        # The closing edges cut through a lobe; the lobe is the larger side.
        crossed = [(0, 0), (4, 0), (4, 4), (6, 4), (6, -2), (2, -2), (2, 1), (0, 1)]

        self.assertEqual(tlroa.self_intersections(crossed), [(0, 5)])

        vertices, positions, warnings = tlroa.repair_self_intersections(crossed)

        self.assertEqual(positions, [0.5, 1.0, 2.0, 3.0, 4.0, 5.0])
        self.assertEqual(warnings, ['removed a self-intersecting loop of 3 vertices'])
        npt.assert_allclose(vertices, [(2, 0), (4, 0), (4, 4), (6, 4), (6, -2), (2, -2)])
        self.assertAlmostEqual(abs(tlroa.polygon_area(vertices)), 16.0, places=12)

    def test_repair_keeps_simple_curves(self):
        vertices, positions, warnings = tlroa.repair_self_intersections(SQUARE)

        self.assertEqual(positions, [0.0, 1.0, 2.0, 3.0])
        self.assertEqual(warnings, [])

    def test_hausdorff_distance(self):
        wide = [(0.0, 0.0), (1.1, 0.0), (1.1, 1.0), (0.0, 1.0)]

        self.assertEqual(tlroa.hausdorff_distance(SQUARE, SQUARE), 0.0)
        self.assertAlmostEqual(tlroa.hausdorff_distance(SQUARE, wide, np.ones(2)), 0.1, places=12)
        self.assertAlmostEqual(tlroa.hausdorff_distance(wide, SQUARE), 0.1 / 1.1, places=12)

    def test_nesting(self):
        small = [(0.25, 0.25), (0.75, 0.25), (0.75, 0.75), (0.25, 0.75)]

        self.assertTrue(tlroa.is_nested(small, SQUARE))
        self.assertFalse(tlroa.is_nested(SQUARE, small))

    def test_translation(self):
        curve   = tlroa.BoundaryCurve(SQUARE)
        shifted = tlroa.translate_curve(curve, 2)

        self.assertEqual(shifted.shift, 2)
        npt.assert_allclose(shifted.vertices[:, 0], curve.vertices[:, 0] + 4 * math.pi)
        npt.assert_array_equal(shifted.translated(-2).vertices, curve.vertices)
        self.assertTrue(tlroa.contains(shifted, (4 * math.pi + 0.5, 0.5)))
        self.assertFalse(tlroa.contains(shifted, (0.5, 0.5)))

    def test_invalid_curve(self):
        with self.assertRaises(ValueError):
            tlroa.BoundaryCurve([(0, 0), (1, 1)])

        with self.assertRaises(ValueError):
            tlroa.BoundaryCurve([(0, 0), (1, 0), (1, math.nan)])

if __name__ == '__main__':
    unittest.main()
