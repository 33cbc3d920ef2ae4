import random

import numpy as np
from django.test import SimpleTestCase

from subspace_codes.exceptions import AmbientMismatchError, FieldRangeError, ParameterError
from subspace_codes.grassmann import all_subspaces
from subspace_codes.linalg2 import (
    BitMatrix,
    ExtFieldCtx,
    Subspace,
    default_modulus,
    dual,
    gl_order,
    intersection_dim,
    inverse,
    invertible_matrices,
    join,
    linpoly_eval,
    meet,
    pivot_vector,
    rank_distance,
    rref,
    subspace_distance,
    transform,
)


class SubspaceTests(SimpleTestCase):
    def test_first_coordinate_is_most_significant(self):
        s = Subspace.from_strings(['1000'])
        self.assertEqual(s.rows, (0b1000,))
        self.assertEqual(str(s), '1000')

    def test_span_normalizes_to_rref(self):
        s = Subspace.from_strings(['1100', '1010'])
        self.assertEqual(s.to_strings(), ['1010', '0110'])
        self.assertEqual(s, Subspace.from_strings(['0110', '1100']))

    def test_non_rref_rows_are_rejected(self):
        with self.assertRaises(ParameterError):
            Subspace(4, (0b1100, 0b1010))

    def test_dependent_rows_collapse(self):
        s = Subspace.from_strings(['1100', '0110', '1010'])
        self.assertEqual(s.k, 2)

    def test_zero_and_full(self):
        self.assertEqual(Subspace.zero(4).k, 0)
        self.assertEqual(str(Subspace.zero(4)), '-')
        self.assertEqual(Subspace.full(4).k, 4)
        self.assertEqual(len(Subspace.full(4).vectors), 16)

    def test_pivot_vector(self):
        s = Subspace.from_strings(['10010', '00101'])
        self.assertEqual(pivot_vector(s), 0b10100)

    def test_ambient_mismatch(self):
        with self.assertRaises(AmbientMismatchError):
            subspace_distance(Subspace.full(3), Subspace.full(4))

    def test_meet_and_join(self):
        a = Subspace.from_strings(['1000', '0100'])
        b = Subspace.from_strings(['0100', '0010'])
        self.assertEqual(meet(a, b), Subspace.from_strings(['0100']))
        self.assertEqual(join(a, b).k, 3)
        self.assertEqual(intersection_dim(a, b), 1)
        self.assertEqual(subspace_distance(a, b), 2)

    def test_distance_to_zero_space_is_dimension(self):
        s = Subspace.from_strings(['1000', '0110', '0001'])
        self.assertEqual(subspace_distance(s, Subspace.zero(4)), 3)


class MetricTests(SimpleTestCase):
    """Exhaustive over the 67 subspaces of F_2^4."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.subspaces = list(all_subspaces(4))
        cls.dist = np.array([[subspace_distance(a, b) for b in cls.subspaces] for a in cls.subspaces])

    def test_identity_and_symmetry(self):
        self.assertTrue((np.diag(self.dist) == 0).all())
        off = ~np.eye(len(self.subspaces), dtype=bool)
        self.assertTrue((self.dist[off] > 0).all())
        self.assertTrue((self.dist == self.dist.T).all())

    def test_triangle_inequality(self):
        d = self.dist
        via = d[:, :, None] + d[None, :, :]
        self.assertTrue((d[:, None, :] <= via).all())

    def test_duality_is_an_isometric_involution(self):
        duals = [dual(s) for s in self.subspaces]
        for s, t in zip(self.subspaces, duals):
            self.assertEqual(dual(t), s)
            self.assertEqual(t.k, 4 - s.k)
        for i in range(0, len(duals), 7):
            for j in range(len(duals)):
                self.assertEqual(subspace_distance(duals[i], duals[j]), self.dist[i, j])

    def test_group_action_is_an_isometry(self):
        g = BitMatrix.from_strings(['1100', '0110', '0011', '0001'])
        images = [transform(s, g) for s in self.subspaces]
        self.assertEqual(len(set(images)), len(images))
        for i in range(0, len(images), 5):
            for j in range(len(images)):
                self.assertEqual(subspace_distance(images[i], images[j]), self.dist[i, j])


class MatrixTests(SimpleTestCase):
    def test_inverse(self):
        g = BitMatrix.from_strings(['110', '011', '001'])
        self.assertEqual(inverse(g) @ g, BitMatrix.identity(3))
        self.assertEqual(g @ inverse(g), BitMatrix.identity(3))

    def test_singular_inverse(self):
        with self.assertRaises(ParameterError):
            inverse(BitMatrix.from_strings(['110', '110', '001']))

    def test_rref_rank(self):
        basis, rank = rref(BitMatrix.from_strings(['1100', '0110', '1010']))
        self.assertEqual(rank, 2)
        self.assertEqual(basis.to_strings(), ['1010', '0110'])

    def test_transpose(self):
        m = BitMatrix.from_strings(['100', '110'])
        self.assertEqual(m.transpose().to_strings(), ['11', '01', '00'])

    def test_rank_distance(self):
        a = BitMatrix.from_strings(['1000', '0100'])
        b = BitMatrix.from_strings(['0000', '0100'])
        self.assertEqual(rank_distance(a, a), 0)
        self.assertEqual(rank_distance(a, b), 1)

    def test_general_linear_group_enumeration(self):
        self.assertEqual(gl_order(3), 168)
        self.assertEqual(len(list(invertible_matrices(2))), 6)
        self.assertEqual(sum(1 for _ in invertible_matrices(3)), 168)

    def test_from_array_round_trip(self):
        rng = np.random.default_rng(7)
        array = rng.integers(0, 2, size=(3, 5))
        m = BitMatrix.from_array(array)
        self.assertTrue((m.to_array() == array).all())


class ExtensionFieldTests(SimpleTestCase):
    def test_default_modulus(self):
        self.assertEqual(default_modulus(4), 0b10011)

    def test_reducible_modulus_rejected(self):
        with self.assertRaises(FieldRangeError):
            ExtFieldCtx(4, 0b10101)

    def test_degree_range(self):
        with self.assertRaises(FieldRangeError):
            ExtFieldCtx(9)

    def test_multiplication(self):
        ctx = ExtFieldCtx(4)
        # x * x^3 = x^4 = x + 1
        self.assertEqual(ctx.mul(0b0010, 0b1000), 0b0011)
        self.assertEqual(ctx.mul(1, 0b1011), 0b1011)

    def test_frobenius_has_order_n(self):
        ctx = ExtFieldCtx(4)
        xs = np.arange(16)
        self.assertTrue((np.asarray(ctx.frobenius(xs, 4)) == xs).all())

    def test_linearized_polynomial_is_additive(self):
        ctx = ExtFieldCtx(4)
        rng = random.Random(3)
        coeffs = [rng.randrange(16) for _ in range(3)]
        for _ in range(20):
            a, b = rng.randrange(16), rng.randrange(16)
            self.assertEqual(linpoly_eval(ctx, coeffs, a ^ b),
                             linpoly_eval(ctx, coeffs, a) ^ linpoly_eval(ctx, coeffs, b))
