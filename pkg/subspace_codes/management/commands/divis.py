from collections import Counter

from django.core.management.base import CommandError

from subspace_codes.codes import read_code, verify, write_code
from subspace_codes.construct import special_subspace
from subspace_codes.divis import (
    complement,
    divisibility_order,
    is_divisible,
    lmrd_extend,
    points_of_code,
    read_multiset,
    recognize_subspace,
    verify_theorem_extensions,
    write_multiset,
)
from subspace_codes.management.base import EXIT_USAGE, SubspaceCommand, parse_subspace


class Command(SubspaceCommand):
    help = 'Divisible point multisets and extendability of lifted MRD codes'

    actions = (
        ('check', 'Divisibility of a point multiset'),
        ('complement', 'Level-complement of a point multiset'),
        ('recognize', 'Recognize a divisible multiset as the point set of a subspace'),
        ('lmrd-extend', 'Complete 254 or 255 solids of a lifted MRD code in F_2^8'),
        ('theorem-check', 'Check the eight extensions of the (8,256,6;4) lifted Gabidulin code'),
    )

    def _input(self, parser):
        parser.add_argument('multiset', nargs='?', help='Multiset file')
        parser.add_argument('--code', help='Use the points of a code file instead')

    def add_check_arguments(self, parser):
        self._input(parser)
        parser.add_argument('--r', type=int, help='Test 2^r-divisibility (default: report the largest r)')

    def add_complement_arguments(self, parser):
        self._input(parser)
        parser.add_argument('--level', type=int, required=True)
        parser.add_argument('--out', help='Write the complement to this file')

    def add_recognize_arguments(self, parser):
        self._input(parser)
        parser.add_argument('--r', type=int, required=True)

    def add_lmrd_extend_arguments(self, parser):
        parser.add_argument('code', help='Code file with 254 or 255 solids of F_2^8')
        parser.add_argument('--special', help='Special solid (default: the last four coordinates)')
        parser.add_argument('--out', help='Write the completed code to this file')

    def load(self, options):
        if options.get('code'):
            return points_of_code(read_code(options['code']))
        if not options.get('multiset'):
            raise CommandError('give a multiset file or --code', returncode=EXIT_USAGE)
        return read_multiset(options['multiset'])

    def describe(self, p):
        histogram = dict(sorted(Counter(int(m) for _, m in p.items()).items()))
        return {'v': p.v, 'cardinality': p.cardinality, 'support': len(p.support), 'multiplicities': histogram}

    def handle_check(self, r=None, **options):
        p = self.load(options)
        payload = self.describe(p)
        if r is None:
            order = divisibility_order(p)
            payload['order'] = order
            self.emit(payload, f'cardinality={p.cardinality} divisible_by=2^{order}')
            return
        divisible = is_divisible(p, r)
        payload.update({'r': r, 'divisible': divisible})
        self.emit(payload, f'cardinality={p.cardinality} 2^{r}-divisible={"yes" if divisible else "no"}')

    def handle_complement(self, level, **options):
        result = complement(self.load(options), level)
        payload = self.describe(result)
        if options.get('out'):
            payload['path'] = str(write_multiset(result, self.output_path(options['out'])))
        self.emit(payload, f'cardinality={result.cardinality} support={len(result.support)}')
        if options.get('out'):
            self.success(f'wrote {payload["path"]}')

    def handle_recognize(self, r, **options):
        p = self.load(options)
        s = recognize_subspace(p, r)
        if s is None:
            self.fail(f'not a 2^{r}-divisible multiset of {(1 << (r + 1)) - 1} points',
                      {**self.describe(p), 'subspace': None})
        self.emit({**self.describe(p), 'subspace': str(s)}, f'subspace={s} k={s.k}')

    def handle_lmrd_extend(self, code, special=None, **options):
        c = read_code(code)
        s = parse_subspace(special, c.v) if special else special_subspace(8, 4)
        found = lmrd_extend(c, s)
        completed = c.union(found)
        report = verify(completed, 6, [4])
        payload = {'M': c.M, 'extensions': [str(u) for u in found], 'completed_M': completed.M,
                   'verified': report.ok}
        if options.get('out'):
            payload['path'] = str(write_code(completed, self.output_path(options['out'])))
        lines = [f'extensions={len(found)}'] + [f'  {u}' for u in found]
        lines.append(f'completed M={completed.M} {report.summary()}')
        if not report.ok:
            self.fail('completed code fails verification', payload)
        self.emit(payload, '\n'.join(lines))

    def handle_theorem_check(self, **options):
        report = verify_theorem_extensions()
        rows = [
            {
                'subspace': str(check.subspace),
                'k': check.subspace.k,
                'min_distance': check.min_distance,
                'meet_special': check.meet_special,
                'ok': check.ok,
            }
            for check in report.checks
        ]
        payload = {'ok': report.ok, 'dims': list(report.dims), 'checks': rows}
        lines = [f'{"ok" if row["ok"] else "FAIL":4} k={row["k"]} d={row["min_distance"]} '
                 f'meet_S={row["meet_special"]} {row["subspace"]}' for row in rows]
        if not report.ok:
            self.fail('some listed extensions are incompatible', payload)
        self.emit(payload, '\n'.join(lines + [f'checked={len(rows)} all compatible']))
