import numpy as np
from django.test import SimpleTestCase, tag

from subspace_codes.codes import verify
from subspace_codes.construct import GabidulinSpec, gabidulin, special_subspace, spread
from subspace_codes.divis import (
    PointMultiset,
    check_extension,
    complement,
    divisibility_order,
    enumerate_divisible_multisets,
    format_multiset,
    hyperplane_sums,
    is_divisible,
    lmrd_extend,
    missing_lines,
    parse_multiset,
    points_of_code,
    recognize_subspace,
    verify_theorem_extensions,
)
from subspace_codes.exceptions import CodeFormatError, MultiplicityError, ParameterError, PreconditionError
from subspace_codes.linalg2 import Subspace, intersection_dim


class G843Mixin:
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.g843 = gabidulin(GabidulinSpec(8, 4, 3))
        cls.special = special_subspace(8, 4)


class PointMultisetTests(SimpleTestCase):
    def test_zero_vector_is_not_a_point(self):
        chi = np.zeros(16, dtype=np.int64)
        chi[0] = 1
        with self.assertRaises(ParameterError):
            PointMultiset(4, chi)

    def test_negative_and_wrong_length(self):
        with self.assertRaises(ParameterError):
            PointMultiset(4, np.zeros(8))
        with self.assertRaises(ParameterError):
            PointMultiset.from_points(4, {3: -1})

    def test_arithmetic(self):
        plane = PointMultiset.of_subspace(Subspace.from_strings(['1000', '0100', '0010']))
        self.assertEqual(plane.cardinality, 7)
        self.assertEqual(len((plane + plane).support), 7)
        self.assertEqual((2 * plane).max_multiplicity, 2)
        self.assertEqual(plane * 2 - plane, plane)
        with self.assertRaises(ParameterError):
            plane + PointMultiset.zero(5)

    def test_points_of_spread(self):
        p = points_of_code(spread(4))
        self.assertEqual(p.cardinality, 15)
        self.assertEqual(p.max_multiplicity, 1)
        self.assertEqual(len(p.support), 15)

    def test_hyperplane_sums_of_a_plane(self):
        plane = PointMultiset.of_subspace(Subspace.from_strings(['1000', '0100', '0010']))
        self.assertEqual(sorted(set(hyperplane_sums(plane).tolist())), [3, 7])


class DivisibilityTests(G843Mixin, SimpleTestCase):
    def test_subspaces(self):
        solid = Subspace.from_strings(['100000', '010000', '001000', '000100'])
        self.assertTrue(is_divisible(PointMultiset.of_subspace(solid), 3))
        self.assertFalse(is_divisible(PointMultiset.of_subspace(solid), 4))
        self.assertEqual(divisibility_order(PointMultiset.of_subspace(solid)), 3)

    def test_single_point(self):
        point = PointMultiset.from_points(3, {1: 1})
        self.assertTrue(is_divisible(point, 0))
        self.assertFalse(is_divisible(point, 1))
        with self.assertRaises(ParameterError):
            is_divisible(point, -1)

    def test_unions_of_subspaces(self):
        self.assertTrue(is_divisible(points_of_code(spread(6)), 2))
        self.assertTrue(is_divisible(points_of_code(self.g843), 3))

    def test_empty_multiset(self):
        self.assertEqual(divisibility_order(PointMultiset.zero(4), limit=5), 5)

    def test_lifted_code_covers_outside_special_solid(self):
        p = points_of_code(self.g843)
        self.assertEqual(p.cardinality, 256 * 15)
        inside = set(self.special.vectors[1:])
        self.assertTrue(all(p[x] == 0 for x in inside))
        self.assertTrue(all(p[x] == 16 for x in range(1, 256) if x not in inside))


class ComplementTests(G843Mixin, SimpleTestCase):
    def test_complement_of_lifted_code(self):
        holes = complement(points_of_code(self.g843), 16)
        self.assertEqual(holes, PointMultiset.of_subspace(self.special, 16))
        self.assertTrue(is_divisible(holes, 3))

    def test_double_complement(self):
        p = points_of_code(spread(4)) + PointMultiset.from_points(4, {5: 2})
        self.assertEqual(complement(complement(p, 3), 3), p)

    def test_level_too_low(self):
        p = PointMultiset.from_points(4, {5: 2})
        with self.assertRaises(MultiplicityError):
            complement(p, 1)


class RecognizeTests(SimpleTestCase):
    def test_plane_and_solid(self):
        plane = Subspace.from_strings(['10000', '01100', '00011'])
        self.assertEqual(recognize_subspace(PointMultiset.of_subspace(plane), 2), plane)
        solid = Subspace.from_strings(['100000', '010000', '001000', '000001'])
        self.assertEqual(recognize_subspace(PointMultiset.of_subspace(solid), 3), solid)

    def test_wrong_size_or_parity(self):
        plane = Subspace.from_strings(['10000', '01100', '00011'])
        self.assertIsNone(recognize_subspace(PointMultiset.of_subspace(plane), 3))
        self.assertIsNone(recognize_subspace(PointMultiset.of_subspace(plane), 0))
        scattered = PointMultiset.from_points(3, {x: 1 for x in range(1, 8) if x != 3})
        scattered = scattered + PointMultiset.from_points(3, {5: 1})
        self.assertIsNone(recognize_subspace(scattered, 2))

    @tag('slow')
    def test_small_divisible_multisets_are_planes(self):
        found = list(enumerate_divisible_multisets(4, 7, 2))
        self.assertEqual(len(found), 15)
        for p in found:
            self.assertEqual(recognize_subspace(p, 2).k, 3)


@tag('slow')
class LmrdExtendTests(G843Mixin, SimpleTestCase):
    def assertRecovers(self, removed):
        c = self.g843.without(removed)
        found = lmrd_extend(c)
        self.assertEqual(set(found), set(removed))
        self.assertEqual(list(found), sorted(found))
        completed = c.union(found)
        self.assertEqual(completed, self.g843)
        self.assertTrue(verify(completed, 6, [4]).ok)
        return c

    def test_one_missing_solid(self):
        for i in (0, 100, 255):
            with self.subTest(i=i):
                self.assertRecovers([self.g843.sorted_words[i]])

    def test_two_disjoint_solids(self):
        words = self.g843.sorted_words
        other = next(w for w in words[1:] if intersection_dim(words[0], w) == 0)
        c = self.assertRecovers([words[0], other])
        self.assertEqual(len(missing_lines(c, self.special)), 70)

    def test_two_solids_through_a_point(self):
        words = self.g843.sorted_words
        other = next(w for w in words[1:] if intersection_dim(words[0], w) == 1)
        c = self.assertRecovers([words[0], other])
        self.assertEqual(len(missing_lines(c, self.special)), 70)

    def test_codewords_share_at_most_a_point(self):
        words = self.g843.sorted_words
        self.assertEqual({intersection_dim(words[0], w) for w in words[1:]}, {0, 1})

    def test_needs_254_or_255_codewords(self):
        with self.assertRaises(PreconditionError):
            lmrd_extend(self.g843)

    def test_codewords_must_avoid_special_solid(self):
        c = self.g843.without(self.g843.sorted_words[:2]).union([self.special])
        with self.assertRaises(PreconditionError):
            lmrd_extend(c)


class ExtensionCheckTests(G843Mixin, SimpleTestCase):
    def test_listed_extensions(self):
        report = verify_theorem_extensions()
        self.assertTrue(report.ok)
        self.assertEqual(report.dims, (2, 2, 3, 4, 4, 5, 6, 6))

    def test_special_solid_itself(self):
        check = check_extension(self.g843, self.special, self.special)
        self.assertEqual(check.min_distance, 8)
        self.assertTrue(check.inside_special)
        self.assertTrue(check.ok)

    def test_line_inside_a_codeword_fails(self):
        line = Subspace.from_strings(['10000000', '01000000'])
        check = check_extension(self.g843, line, self.special)
        self.assertEqual(check.min_distance, 2)
        self.assertFalse(check.ok)


class MultisetFileTests(SimpleTestCase):
    def test_parse(self):
        p = parse_multiset('# two points\nv=4\n1000 2\n0101 1\n1000 1\n')
        self.assertEqual(p.v, 4)
        self.assertEqual(p[0b1000], 3)
        self.assertEqual(p[0b0101], 1)
        self.assertEqual(p.cardinality, 4)

    def test_format(self):
        p = PointMultiset.from_points(4, {0b1000: 2, 0b0001: 1})
        self.assertEqual(format_multiset(p), 'v=4\n0001 1\n1000 2\n')
        self.assertEqual(parse_multiset(format_multiset(p)), p)

    def test_empty_needs_header(self):
        self.assertEqual(parse_multiset('v=3\n'), PointMultiset.zero(3))
        with self.assertRaises(CodeFormatError):
            parse_multiset('# nothing\n')

    def test_errors(self):
        for text in ('v=x\n', '1000\n', '0000 1\n', 'v=4\n100 1\n', '1000 -1\n', '1020 1\n'):
            with self.subTest(text=text), self.assertRaises(CodeFormatError):
                parse_multiset(text)
