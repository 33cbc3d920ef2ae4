from subspace_codes.codes import read_code, verify
from subspace_codes.management.base import SubspaceCommand, dims_text, parse_dims


class Command(SubspaceCommand):
    help = 'Check that a code file has minimum distance >= d and dimensions in T'

    def add_command_arguments(self, parser):
        parser.add_argument('code', help='Code file (header "v=<int> q=2")')
        parser.add_argument('--d', type=int, required=True, help='Required minimum subspace distance')
        parser.add_argument('--dims', help='Allowed dimensions, comma separated (default: all)')
        parser.add_argument('--limit', type=int, default=20, help='Violations to list of each kind')

    def run(self, code, d, dims=None, limit=20, **options):
        c = read_code(code)
        report = verify(c, d, parse_dims(dims, c.v), limit=limit)
        payload = {
            'ok': report.ok,
            'v': c.v,
            'M': c.M,
            'd': d,
            'min_distance': str(report.min_distance),
            'dim_distribution': list(report.dim_distribution.counts),
            'distance_violations': [[str(a), str(b), dist] for a, b, dist in report.distance_violations],
            'dimension_violations': [str(w) for w in report.dimension_violations],
        }
        lines = [report.summary()]
        lines += [f'  distance {dist}: {a} | {b}' for a, b, dist in report.distance_violations]
        lines += [f'  dimension {w.k} not allowed: {w}' for w in report.dimension_violations]
        self.emit(payload, '\n'.join(lines))
        if not report.ok:
            allowed = f' T={dims_text(report.dims)}' if report.dims is not None else ''
            self.fail(f'code is not a (v={c.v}, d>={d}{allowed}) code')
