from django.test import SimpleTestCase

from subspace_codes.codes import (
    INF,
    SubspaceCode,
    distance_distribution,
    fingerprint,
    fingerprint_with_duality,
    format_code,
    is_isomorphic_bruteforce,
    min_distance,
    parse_code,
    point_degrees,
    verify,
)
from subspace_codes.construct import spread
from subspace_codes.exceptions import AmbientMismatchError, CodeFormatError, OutOfScopeError
from subspace_codes.linalg2 import BitMatrix, Subspace


def code_of(*rows_list, v=4):
    return SubspaceCode.of(v, (Subspace.from_strings(rows, v) if rows else Subspace.zero(v) for rows in rows_list))


class SubspaceCodeTests(SimpleTestCase):
    def test_dimension_distribution(self):
        c = code_of([], ['1000'], ['1000', '0100'], ['0010', '0001'])
        self.assertEqual(c.dim_distribution.counts, (1, 1, 2, 0, 0))
        self.assertEqual(c.M, 4)

    def test_mixed_ambients_rejected(self):
        with self.assertRaises(AmbientMismatchError):
            SubspaceCode.of(4, [Subspace.full(3)])

    def test_min_distance_of_tiny_codes(self):
        self.assertIs(min_distance(SubspaceCode(4)), INF)
        self.assertIs(min_distance(code_of(['1000'])), INF)
        self.assertEqual(min_distance(code_of(['1000'], ['0100'])), 2)

    def test_distances_from(self):
        c = code_of(['1000', '0100'], ['0010', '0001'])
        s = Subspace.from_strings(['1000'])
        # canonical order puts 0010;0001 first
        self.assertEqual(c.distances_from(s).tolist(), [3, 1])

    def test_spread_distance_distribution(self):
        self.assertEqual(distance_distribution(spread(4)), {4: 10})

    def test_point_degrees(self):
        chi = point_degrees(spread(4))
        self.assertEqual(chi[0], 0)
        self.assertTrue((chi[1:] == 1).all())


class VerifyTests(SimpleTestCase):
    def test_spread_passes(self):
        report = verify(spread(4), 4, [2])
        self.assertTrue(report.ok)
        self.assertEqual(report.min_distance, 4)
        self.assertTrue(report.summary().startswith('pass M=5 d=4'))

    def test_violations_are_listed(self):
        c = code_of(['1000'], ['0100'], ['1000', '0100', '0010'])
        report = verify(c, 3, [1])
        self.assertFalse(report.ok)
        self.assertEqual(len(report.dimension_violations), 1)
        self.assertEqual({dist for _, _, dist in report.distance_violations}, {2})

    def test_violation_limit(self):
        points = SubspaceCode.of(4, (Subspace.span(4, [x]) for x in range(1, 16)))
        report = verify(points, 3, limit=5)
        self.assertEqual(len(report.distance_violations), 5)


class FingerprintTests(SimpleTestCase):
    def test_invariant_under_the_group(self):
        g = BitMatrix.from_strings(['0100', '0010', '0001', '1100'])
        c = code_of(['1000'], ['0100', '0010'], ['1000', '0001', '0110'])
        self.assertEqual(fingerprint(c), fingerprint(c.transformed(g)))
        self.assertTrue(is_isomorphic_bruteforce(c, c.transformed(g)))

    def test_duality(self):
        c = code_of(['1000'], ['0100', '0010'])
        self.assertNotEqual(fingerprint(c), fingerprint(c.dual()))
        self.assertEqual(fingerprint_with_duality(c), fingerprint_with_duality(c.dual()))
        self.assertFalse(is_isomorphic_bruteforce(c, c.dual()))
        self.assertTrue(is_isomorphic_bruteforce(c, c.dual(), allow_duality=True))

    def test_different_codes(self):
        a = code_of(['1000'], ['0100'])
        b = code_of(['1000'], ['0100', '0010'])
        self.assertFalse(is_isomorphic_bruteforce(a, b))

    def test_bruteforce_scope(self):
        c = SubspaceCode.of(5, [Subspace.full(5)])
        with self.assertRaises(OutOfScopeError):
            is_isomorphic_bruteforce(c, c)


class CodeFileTests(SimpleTestCase):
    def test_parse(self):
        parsed = parse_code('# a comment\nv=4 q=2\n1000;0100\n-\n0010\n')
        self.assertEqual(parsed.code.M, 3)
        self.assertEqual(parsed.warnings, [])

    def test_format_is_canonical(self):
        text = format_code(code_of(['0010'], [], ['1000', '0100']), comment='three words')
        self.assertEqual(text, '# three words\nv=4 q=2\n-\n0010\n1000;0100\n')
        self.assertEqual(parse_code(text).code, code_of(['0010'], [], ['1000', '0100']))

    def test_duplicates_and_normalization_warn(self):
        parsed = parse_code('v=4 q=2\n1100;1010\n1010;0110\n')
        self.assertEqual(parsed.code.M, 1)
        self.assertEqual(len(parsed.warnings), 2)
        self.assertIn('normalized to 1010;0110', parsed.warnings[0])
        self.assertIn('duplicate', parsed.warnings[1])

    def test_errors_carry_line_numbers(self):
        with self.assertRaisesMessage(CodeFormatError, 'bad.code:3:'):
            parse_code('v=4 q=2\n1000\n10000\n', 'bad.code')
        with self.assertRaisesMessage(CodeFormatError, 'header'):
            parse_code('v=4\n1000\n')
        with self.assertRaises(CodeFormatError):
            parse_code('v=4 q=2\n1020\n')
