from django.test import SimpleTestCase

from subspace_codes.exceptions import ParameterError
from subspace_codes.grassmann import (
    ball,
    canonical_index,
    count_all_subspaces,
    distances,
    enumerate_subspaces,
    gaussian_binomial,
    grassmannian,
    incident,
    subspace_at,
    subspaces_contained,
    subspaces_containing,
)
from subspace_codes.linalg2 import Subspace


class GaussianBinomialTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(gaussian_binomial(4, 2), 35)
        self.assertEqual(gaussian_binomial(6, 3), 1395)
        self.assertEqual(gaussian_binomial(8, 4), 200787)
        self.assertEqual(gaussian_binomial(5, 0), 1)
        self.assertEqual(gaussian_binomial(3, 1, q=3), 13)

    def test_symmetry(self):
        for v in range(1, 9):
            for k in range(v + 1):
                self.assertEqual(gaussian_binomial(v, k), gaussian_binomial(v, v - k))

    def test_totals(self):
        self.assertEqual(count_all_subspaces(4), 67)
        self.assertEqual(count_all_subspaces(6), 2825)
        self.assertEqual(count_all_subspaces(8), 417199)

    def test_range(self):
        with self.assertRaises(ParameterError):
            gaussian_binomial(3, 4)


class EnumerationTests(SimpleTestCase):
    def test_each_subspace_once(self):
        for v in range(1, 6):
            for k in range(v + 1):
                found = list(enumerate_subspaces(v, k))
                self.assertEqual(len(found), gaussian_binomial(v, k))
                self.assertEqual(len(set(found)), len(found))
                self.assertTrue(all(s.k == k for s in found))

    def test_order_is_by_pivot_vector(self):
        lines = grassmannian(4, 2).subspaces
        self.assertEqual(lines[0], Subspace.from_strings(['0010', '0001']))
        self.assertEqual(lines[-1].pivot_mask, 0b1100)
        masks = [s.pivot_mask for s in lines]
        self.assertEqual(masks, sorted(masks))

    def test_canonical_index_round_trip(self):
        for index in range(count_all_subspaces(4)):
            self.assertEqual(canonical_index(subspace_at(4, index)), index)
        with self.assertRaises(ParameterError):
            subspace_at(4, 67)

    def test_canonical_index_offsets(self):
        self.assertEqual(canonical_index(Subspace.zero(6)), 0)
        self.assertEqual(canonical_index(Subspace.full(6)), 2824)


class IncidenceTests(SimpleTestCase):
    def test_ball_size_depends_on_dimension_only(self):
        sizes = {len(ball(s, 1)) for s in grassmannian(4, 2)}
        # the line itself, its 3 points and the 3 planes through it
        self.assertEqual(sizes, {7})

    def test_ball_radius_zero(self):
        s = grassmannian(5, 2).subspaces[10]
        self.assertEqual(ball(s, 0), (s,))

    def test_contained_and_containing(self):
        plane = Subspace.from_strings(['1000', '0100', '0010'])
        self.assertEqual(len(subspaces_contained(plane, 1)), 7)
        self.assertEqual(len(subspaces_contained(plane, 2)), 7)
        point = Subspace.from_strings(['0001'])
        above = subspaces_containing(point, 3)
        self.assertEqual(len(above), 7)
        self.assertTrue(all(incident(point, w) for w in above))

    def test_distances_against_table(self):
        s = Subspace.from_strings(['100000', '010000', '001000'])
        table = grassmannian(6, 3)
        dist = distances(s, table)
        self.assertEqual(int((dist == 0).sum()), 1)
        self.assertEqual(int((dist == 6).sum()), 512)
