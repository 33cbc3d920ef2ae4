import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from subspace_codes.codes import SubspaceCode
from subspace_codes.construct import spread
from subspace_codes.exceptions import CodeFormatError, GroupTooLargeError, SingularGeneratorError
from subspace_codes.group import (
    burnside_orbit_count,
    closure,
    fixed_subspaces,
    general_linear_group,
    orbits,
    packaged_generators,
    parse_generators,
    read_generators,
    stabilizer_order,
    write_generators,
)
from subspace_codes.linalg2 import BitMatrix, Subspace, transform

CYCLE = BitMatrix.from_strings(['0100', '0010', '0001', '1000'])


class ClosureTests(SimpleTestCase):
    def test_packaged_group_has_order_nine(self):
        v, generators = packaged_generators('c3xc3')
        self.assertEqual(v, 6)
        group = closure(generators)
        self.assertEqual(group.order, 9)
        self.assertIn(BitMatrix.identity(6), group)

    def test_cyclic_permutation(self):
        group = closure([CYCLE])
        self.assertEqual(group.order, 4)

    def test_trivial_group(self):
        group = closure([], v=4)
        self.assertEqual(group.order, 1)

    def test_general_linear_group(self):
        self.assertEqual(general_linear_group(3).order, 168)

    def test_singular_generator(self):
        with self.assertRaises(SingularGeneratorError):
            closure([BitMatrix.from_strings(['10', '10'])])

    def test_cap(self):
        with self.assertRaises(GroupTooLargeError):
            closure([CYCLE], cap=2)


class OrbitTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.c3xc3 = closure(packaged_generators('c3xc3')[1])

    def test_three_fixed_lines(self):
        fixed = fixed_subspaces(self.c3xc3, 2)
        self.assertEqual(len(fixed), 3)
        for line in fixed:
            self.assertTrue(all(transform(line, g) == line for g in self.c3xc3))

    def test_orbits_partition_and_divide(self):
        for k in range(7):
            decomposition = orbits(self.c3xc3, k)
            members = [s for orbit in decomposition.orbits for s in orbit]
            self.assertEqual(len(members), len(set(members)))
            self.assertTrue(all(9 % size == 0 for size in decomposition.sizes))

    def test_orbits_are_invariant(self):
        decomposition = orbits(self.c3xc3, 3)
        for orbit in decomposition.orbits[:40]:
            for g in self.c3xc3.generators:
                self.assertEqual({transform(s, g) for s in orbit}, set(orbit))
            self.assertEqual(decomposition.orbit_of(orbit[-1]), orbit)

    def test_burnside(self):
        group = closure([CYCLE])
        for k in range(5):
            self.assertEqual(burnside_orbit_count(group, k), len(orbits(group, k)))

    def test_trivial_group_orbits(self):
        decomposition = orbits(closure([], v=4), 2)
        self.assertEqual(len(decomposition), 35)
        self.assertEqual(len(fixed_subspaces(closure([], v=4), 2)), 35)

    def test_stabilizer(self):
        code = spread(4)
        self.assertEqual(stabilizer_order(closure([], v=4), code), 1)
        point = SubspaceCode.of(4, [Subspace.from_strings(['1111'])])
        self.assertEqual(stabilizer_order(closure([CYCLE]), point), 4)


class GeneratorFileTests(SimpleTestCase):
    def test_round_trip(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_generators(4, [CYCLE], Path(tmp) / 'cycle.gen')
            self.assertEqual(read_generators(path), (4, [CYCLE]))

    def test_errors(self):
        with self.assertRaises(CodeFormatError):
            parse_generators('0100;0010;0001;1000\n')
        with self.assertRaisesMessage(CodeFormatError, '<string>:2:'):
            parse_generators('v=4\n0100;0010;0001\n')
