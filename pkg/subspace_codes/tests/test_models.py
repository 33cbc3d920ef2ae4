from django.test import TestCase

from subspace_codes.models import SolveRun


def record(**kwargs):
    fields = {'v': 4, 'd': 3, 'dims': '0,1,2,3,4', 'status': 'optimal', 'value': 5}
    fields.update(kwargs)
    return SolveRun.objects.create(**fields)


class SolveRunTests(TestCase):
    def test_str(self):
        self.assertEqual(str(record()), 'A(v=4, d=3; T=0,1,2,3,4) clique: 5 (optimal)')
        self.assertEqual(str(record(value=None, status='unknown')), 'A(v=4, d=3; T=0,1,2,3,4) clique: - (unknown)')

    def test_only_full_packing_runs_are_lower_bounds(self):
        self.assertTrue(record().is_lower_bound)
        self.assertFalse(record(dims='2').is_lower_bound)
        self.assertFalse(record(model_kind='hyperplane7').is_lower_bound)
        self.assertFalse(record(value=None).is_lower_bound)

    def test_best_lower_bounds(self):
        record(value=4, status='feasible')
        best = record(value=5)
        record(value=6, dims='1,2')
        record(v=5, d=3, dims='0,1,2,3,4,5', value=None, status='unknown')
        self.assertEqual(SolveRun.best_lower_bounds(), {(4, 3): best})
