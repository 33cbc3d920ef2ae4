from django.conf import settings
from django.core.management.base import CommandError

from subspace_codes.codes import min_distance, read_code, write_code
from subspace_codes.construct import (
    PROFILES_8_5,
    GabidulinSpec,
    PivotProfile,
    compatible_extensions,
    echelon_ferrers,
    extend_greedy,
    gabidulin,
    spread,
)
from subspace_codes.linalg2 import str_to_bits
from subspace_codes.management.base import EXIT_USAGE, SubspaceCommand, parse_dims


class Command(SubspaceCommand):
    help = 'Build lifted Gabidulin codes, spreads, Echelon-Ferrers codes and extensions'

    actions = (
        ('gabidulin', 'Lifted Gabidulin code G(v,k,delta)'),
        ('spread', 'Desarguesian k-spread of F_2^(2k)'),
        ('echelon-ferrers', 'Union of lifted Ferrers diagram codes over pivot vectors'),
        ('extend', 'Single-subspace extensions of a code'),
    )

    def add_gabidulin_arguments(self, parser):
        parser.add_argument('params', nargs='*', type=int, help='v k delta')
        parser.add_argument('--v', type=int)
        parser.add_argument('--k', type=int)
        parser.add_argument('--delta', type=int, help='Minimum rank distance')
        parser.add_argument('--modulus', help='Modulus of F_2^(v-k) as a binary string, high degree first')
        parser.add_argument('--out', help='Write the code to this file')

    def add_spread_arguments(self, parser):
        parser.add_argument('params', nargs='*', type=int, help='v')
        parser.add_argument('--v', type=int)
        parser.add_argument('--out')

    def add_echelon_ferrers_arguments(self, parser):
        parser.add_argument(
            '--profiles',
            help='Comma separated pivot vectors, each optionally with a target size, e.g. 11110000:256 '
                 '(default: the four (8,5) pivot vectors)',
        )
        parser.add_argument('--d', type=int, default=5)
        parser.add_argument('--max-nodes', type=int, default=2_000_000)
        parser.add_argument('--out')

    def add_extend_arguments(self, parser):
        parser.add_argument('code', help='Code file to extend')
        parser.add_argument('--d', type=int, required=True)
        parser.add_argument('--dims', help='Candidate dimensions (default: all)')
        parser.add_argument('--greedy', action='store_true', help='Add candidates first-fit instead of counting them')
        parser.add_argument('--out')

    def _params(self, options, names):
        values = list(options.get('params') or [])
        if values and len(values) != len(names):
            raise CommandError(f'expected {len(names)} numbers: {" ".join(names)}', returncode=EXIT_USAGE)
        out = []
        for i, name in enumerate(names):
            value = values[i] if values else options.get(name)
            if value is None:
                raise CommandError(f'missing --{name}', returncode=EXIT_USAGE)
            out.append(value)
        return out

    def _write(self, code, out, comment):
        if out:
            path = write_code(code, self.output_path(out), comment)
            self.success(f'wrote {path}')

    def _report(self, code, extra=None):
        d = min_distance(code)
        payload = {'v': code.v, 'M': code.M, 'd': str(d), 'dim_distribution': list(code.dim_distribution.counts)}
        payload.update(extra or {})
        self.emit(payload, f'M={code.M} d={d}')

    def handle_gabidulin(self, modulus=None, out=None, **options):
        v, k, delta = self._params(options, ('v', 'k', 'delta'))
        spec = GabidulinSpec(v, k, delta, str_to_bits(modulus) if modulus else None)
        code = gabidulin(spec)
        self._report(code, {'k': k, 'delta': delta, 'modulus': spec.ctx.modulus})
        self._write(code, out, f'lifted Gabidulin code v={v} k={k} delta={delta}')

    def handle_spread(self, out=None, **options):
        (v,) = self._params(options, ('v',))
        code = spread(v)
        self._report(code)
        self._write(code, out, f'{v // 2}-spread of F_2^{v}')

    def handle_echelon_ferrers(self, profiles=None, d=5, max_nodes=2_000_000, out=None, **options):
        if profiles:
            chosen = []
            for item in profiles.split(','):
                pivots, _, target = item.partition(':')
                chosen.append(PivotProfile.from_string(pivots.strip(), int(target) if target else None))
        else:
            chosen = list(PROFILES_8_5)
        result = echelon_ferrers(chosen, d, max_nodes=max_nodes)
        rows = [
            {'pivots': str(p), 'ferrers': list(p.ferrers), 'target': p.target, 'achieved': n}
            for p, n in zip(result.profiles, result.achieved)
        ]
        self._report(result.code, {'profiles': rows})
        if not self.options.get('json'):
            for row in rows:
                self.stdout.write(f'  {row["pivots"]} ferrers={row["ferrers"]} {row["achieved"]}/{row["target"]}')
        self._write(result.code, out, f'Echelon-Ferrers code d={d}')

    def handle_extend(self, code, d, dims=None, greedy=False, out=None, **options):
        c = read_code(code)
        allowed = parse_dims(dims, c.v) or list(range(c.v + 1))
        threads = settings.SUBSPACE_THREADS
        if greedy:
            extended = extend_greedy(c, d, allowed, threads=threads)
            self._report(extended, {'added': extended.M - c.M})
            self._write(extended, out, f'greedy extension at distance {d}')
            return
        found = compatible_extensions(c, d, allowed, threads=threads)
        self.emit(
            {'v': c.v, 'M': c.M, 'd': d, 'count': len(found), 'extensions': [str(s) for s in found]},
            f'extensions={len(found)}',
        )
