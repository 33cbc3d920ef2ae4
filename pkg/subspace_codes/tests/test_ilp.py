from django.test import SimpleTestCase, tag

from subspace_codes.codes import SubspaceCode
from subspace_codes.construct import GabidulinSpec, gabidulin, spread
from subspace_codes.exceptions import ModelError, ParameterError
from subspace_codes.grassmann import all_subspaces, canonical_index, gaussian_binomial
from subspace_codes.group import closure, orbits, packaged_generators
from subspace_codes.ilp import (
    add_dimension_bound,
    add_even_d_cuts,
    add_incidence_caps,
    add_incidence_cuts,
    build_ambient8_model,
    build_base_model,
    build_hyperplane_model,
    build_model,
    default_cut_triples,
    even_cut_triples,
    expand_solution,
    hyperplane_trace,
    prescribe,
    reduce_kramer_mesner,
    var_name,
)
from subspace_codes.linalg2 import BitMatrix


def values_of(m, code):
    index = m.member_index()
    return m.complete_values({index[s]: 1 for s in code})


def layers(v, dims):
    return SubspaceCode.of(v, (s for s in all_subspaces(v) if s.k in dims))


class BaseModelTests(SimpleTestCase):
    def test_counts_4_3(self):
        m = build_base_model(4, 3)
        self.assertEqual(len(m.binaries), 67)
        self.assertEqual(len(m.generals), 5)
        families = m.family_counts()
        self.assertEqual(families['ball'], 67)
        self.assertEqual(families['dim'], 5)
        self.assertEqual(m.objective, {f'delta_{k}': 1 for k in range(5)})

    def test_counts_6_3(self):
        m = build_base_model(6, 3)
        self.assertEqual(len(m.binaries), 2825)
        self.assertEqual(m.family_counts(), {'ball': 2825, 'dim': 7})

    def test_variable_names_follow_canonical_order(self):
        m = build_base_model(4, 3)
        for var in m.binaries:
            self.assertEqual(var.name, var_name(canonical_index(var.representative)))

    def test_restricted_dimensions_fix_neighbours_to_zero(self):
        m = build_base_model(4, 3, dims={2})
        self.assertEqual({var.representative.k for var in m.binaries}, {1, 2, 3})
        self.assertEqual(len(m.fixed), 30)
        self.assertEqual(set(m.fixed.values()), {0})
        self.assertEqual(m.objective, {'delta_2': 1})

    def test_even_d_rejected(self):
        with self.assertRaises(ParameterError):
            build_base_model(4, 2)

    def test_ball_rows_accept_codes(self):
        m = build_base_model(4, 3)
        self.assertTrue(m.is_feasible(values_of(m, spread(4))))
        points = layers(4, {1})
        self.assertFalse(m.is_feasible(values_of(m, points)))


class CutTests(SimpleTestCase):
    def test_six_families_for_6_3(self):
        self.assertEqual(
            sorted(default_cut_triples(6, 3)),
            [(2, 4, 5), (2, 5, 9), (3, 1, 9), (3, 5, 9), (4, 1, 9), (4, 2, 5)],
        )

    @tag('slow')
    def test_cut_rows_for_6_3(self):
        m = build_model(6, 3, cuts=['ie_add'])
        families = m.family_counts()
        cut_families = {name: n for name, n in families.items() if name.startswith('ie_')}
        self.assertEqual(cut_families, {
            'ie_2_4_5': gaussian_binomial(6, 4),
            'ie_2_5_9': 63,
            'ie_3_5_9': 63,
            'ie_3_1_9': 63,
            'ie_4_1_9': 63,
            'ie_4_2_5': gaussian_binomial(6, 2),
        })
        self.assertEqual(m.cuts, ('ie_add',))

    def test_even_triples(self):
        self.assertEqual(even_cut_triples(4, 4), [(0, 3, 0), (1, 2, 0), (1, 4, 1), (2, 3, 1), (3, 4, 2)])

    def test_even_model(self):
        m = build_model(4, 4)
        self.assertEqual(m.d, 4)
        self.assertEqual(m.cuts, ('even',))
        self.assertTrue(any(name.startswith('even_') for name in m.family_counts()))
        self.assertTrue(m.is_feasible(values_of(m, spread(4))))

    def test_even_cuts_need_the_odd_model(self):
        with self.assertRaises(ModelError):
            add_even_d_cuts(build_base_model(4, 1), 4)

    def test_unknown_cut(self):
        with self.assertRaises(ParameterError):
            build_model(4, 3, cuts=['gomory'])

    def test_cuts_keep_known_codes(self):
        even_layers = layers(4, {0, 2, 4})
        self.assertEqual(even_layers.M, 37)
        m = build_model(4, 2, cuts=['ie_add', 'even'])
        self.assertTrue(m.is_feasible(values_of(m, even_layers)))
        m = build_model(4, 4, cuts=['ie_add'])
        self.assertTrue(m.is_feasible(values_of(m, spread(4))))

    def test_incidence_cuts_reject_bad_triples(self):
        m = build_base_model(4, 3)
        with self.assertRaises(ParameterError):
            add_incidence_cuts(m, [(2, 2, 3)])
        with self.assertRaises(ParameterError):
            add_incidence_cuts(m, [(1, 2, 0)])


class OrbitReductionTests(SimpleTestCase):
    def test_trivial_group_is_a_copy(self):
        m = build_base_model(4, 3)
        reduced = reduce_kramer_mesner(m, closure([], v=4))
        self.assertEqual(reduced, m)
        self.assertIsNot(reduced.constraints, m.constraints)

    def test_reduction_merges_orbits(self):
        group = closure([BitMatrix.from_strings(['0100', '0010', '0001', '1000'])])
        m = build_base_model(4, 3)
        reduced = reduce_kramer_mesner(m, group)
        self.assertEqual(len(reduced.binaries), sum(len(orbits(group, k)) for k in range(5)))
        self.assertEqual(reduced.group_order, 4)
        self.assertEqual(sum(var.size for var in reduced.binaries), 67)
        self.assertLess(len(reduced.constraints), len(m.constraints))

    def test_reduce_twice(self):
        group = closure([BitMatrix.from_strings(['0100', '0010', '0001', '1000'])])
        reduced = reduce_kramer_mesner(build_base_model(4, 3), group)
        with self.assertRaises(ModelError):
            reduce_kramer_mesner(reduced, group)

    def test_expand_solution(self):
        group = closure([BitMatrix.from_strings(['0100', '0010', '0001', '1000'])])
        reduced = reduce_kramer_mesner(build_base_model(4, 3), group)
        var = next(var for var in reduced.binaries if var.size == 4)
        code = expand_solution(reduced, {var.name: 1})
        self.assertEqual(set(code), set(var.members))
        self.assertEqual(code.transformed(group.generators[0]), code)

    @tag('slow')
    def test_order_nine_group_on_6_3(self):
        group = closure(packaged_generators('c3xc3')[1])
        m = build_base_model(6, 3)
        reduced = reduce_kramer_mesner(m, group)
        self.assertEqual(len(reduced.binaries), sum(len(orbits(group, k)) for k in range(7)))
        self.assertEqual(reduced.group_order, 9)
        for row in reduced.constraints:
            self.assertIn(row.family, ('ball', 'dim'))


class ModelVariantTests(SimpleTestCase):
    def test_prescribe(self):
        m = prescribe(build_model(4, 4), spread(4))
        self.assertEqual(len(m.fixed), 5)
        self.assertEqual(set(m.fixed.values()), {1})

    def test_prescribe_outside_dimensions(self):
        m = build_base_model(4, 3, dims={2})
        with self.assertRaises(ModelError):
            prescribe(m, layers(4, {1}))

    def test_incidence_caps(self):
        m = add_incidence_caps(build_model(4, 2), cap_point=1, cap_hyperplane=2)
        families = m.family_counts()
        self.assertEqual(families['cap_point'], 15)
        self.assertEqual(families['cap_hyperplane'], 15)
        self.assertTrue(m.is_feasible(values_of(m, spread(4))))
        with self.assertRaises(ParameterError):
            add_incidence_caps(build_model(4, 2), cap_point=-1)

    def test_dimension_bound(self):
        m = add_dimension_bound(build_model(4, 3), [2, 3], 4)
        row = m.constraints[-1]
        self.assertEqual(row.name, 'dimsum_2_3')
        self.assertEqual(row.terms, (('delta_2', 1), ('delta_3', 1)))
        self.assertEqual(row.rhs, 4)
        with self.assertRaises(ModelError):
            add_dimension_bound(build_base_model(4, 3, dims={2}), [0], 1)


class HyperplaneModelTests(SimpleTestCase):
    def test_trace_of_lifted_gabidulin_code(self):
        trace = hyperplane_trace(gabidulin(GabidulinSpec(8, 4, 3)))
        self.assertEqual(trace.v, 7)
        self.assertEqual(trace.M, 16)
        self.assertEqual(trace.dim_distribution.support, frozenset({4}))

    def test_input_checks(self):
        with self.assertRaises(ParameterError):
            build_ambient8_model(spread(8), 0)
        with self.assertRaises(ParameterError):
            build_hyperplane_model(spread(4), 'hyperplane7')
        with self.assertRaises(ParameterError):
            build_hyperplane_model(spread(8), 'ambient8')
        with self.assertRaises(ParameterError):
            build_hyperplane_model(spread(8), 'sideways')

    @tag('slow')
    def test_hyperplane_model_from_lifted_gabidulin_code(self):
        m = build_hyperplane_model(gabidulin(GabidulinSpec(8, 4, 3)))
        self.assertEqual(m.kind, 'hyperplane7')
        self.assertEqual(m.offset, 16)
        self.assertEqual(m.dims, frozenset({3}))
        count = next(row for row in m.constraints if row.name == 'h_count')
        self.assertEqual((count.sense, count.rhs), ('>=', 239))
        self.assertTrue(all(row.rhs <= 7 for row in m.constraints if row.family == 'h_five'))
