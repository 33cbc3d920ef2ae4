from django.conf import settings
from django.core.management.base import CommandError

from subspace_codes.codes import read_code, write_code
from subspace_codes.ilp import (
    CUT_FAMILIES,
    MODEL_KINDS,
    add_dimension_bound,
    add_incidence_caps,
    build_hyperplane_model,
    build_model,
    prescribe,
    reduce_kramer_mesner,
)
from subspace_codes.lpformat import export_lp, import_lp
from subspace_codes.management.base import (
    EXIT_USAGE,
    SubspaceCommand,
    dims_text,
    load_group,
    parse_dims,
)
from subspace_codes.models import SolveRun
from subspace_codes.solve import BACKENDS, max_clique, solve


class Command(SubspaceCommand):
    help = 'ILP models for A_2(v,d;T): build, export to LP, solve, direct clique search'

    actions = (
        ('build', 'Build a model and print its size'),
        ('export', 'Build a model and write it in CPLEX LP format'),
        ('solve', 'Solve a model with the built-in or HiGHS backend'),
        ('clique', 'Maximum clique on the compatibility graph of G[v,T]'),
    )

    def _model_arguments(self, parser):
        parser.add_argument('--lp', help='Read the model from an LP file instead of building it')
        parser.add_argument('--model', choices=MODEL_KINDS, default='packing')
        parser.add_argument('--v', type=int)
        parser.add_argument('--d', type=int)
        parser.add_argument('--dims', help='Dimension set T, e.g. 2,3,4 (default: all)')
        parser.add_argument('--cuts', default='', help=f'Cut families: {",".join(CUT_FAMILIES)}')
        parser.add_argument('--group', help='Generator file or packaged name for orbit reduction')
        parser.add_argument('--prescribe', help='Code file whose codewords are fixed to one')
        parser.add_argument('--cap-point', type=int, help='At most this many codewords through a point')
        parser.add_argument('--cap-hyperplane', type=int, help='At most this many codewords in a hyperplane')
        parser.add_argument('--dim-bound', help='DIMS:BOUND, e.g. 3,4:20 caps delta_3 + delta_4')
        parser.add_argument('--fixed-code', help='Solid code F for the hyperplane models')
        parser.add_argument('--f', type=int, help='Degree cap of the ambient8 model')

    def _solve_arguments(self, parser):
        parser.add_argument('--backend', choices=sorted(BACKENDS), default='clique')
        parser.add_argument('--time-limit', type=float, help='Seconds (default: SUBSPACE_TIME_LIMIT)')
        parser.add_argument('--record', action='store_true', help='Store the run in the database')
        parser.add_argument('--out', help='Write the best code found to this file')

    def add_build_arguments(self, parser):
        self._model_arguments(parser)

    def add_export_arguments(self, parser):
        self._model_arguments(parser)
        parser.add_argument('--export', '--out', dest='export', required=True, help='LP file to write')

    def add_solve_arguments(self, parser):
        self._model_arguments(parser)
        self._solve_arguments(parser)
        parser.add_argument('--relax', action='store_true', help='Also report the LP relaxation')
        parser.add_argument('--export', help='Also write the model in LP format')

    def add_clique_arguments(self, parser):
        parser.add_argument('--v', type=int, required=True)
        parser.add_argument('--d', type=int, required=True)
        parser.add_argument('--dims')
        self._solve_arguments(parser)

    def build(self, options):
        if options.get('lp'):
            return import_lp(options['lp'])
        kind = options['model']
        if kind != 'packing':
            if not options.get('fixed_code'):
                raise CommandError(f'--model {kind} needs --fixed-code', returncode=EXIT_USAGE)
            return build_hyperplane_model(read_code(options['fixed_code']), kind, options.get('f'))
        v, d = options.get('v'), options.get('d')
        if v is None or d is None:
            raise CommandError('missing --v or --d', returncode=EXIT_USAGE)
        cuts = [c for c in options['cuts'].split(',') if c]
        m = build_model(v, d, parse_dims(options.get('dims'), v), cuts)
        if options.get('cap_point') is not None or options.get('cap_hyperplane') is not None:
            add_incidence_caps(m, options.get('cap_point'), options.get('cap_hyperplane'))
        if options.get('dim_bound'):
            dims, _, bound = options['dim_bound'].partition(':')
            if not bound:
                raise CommandError('--dim-bound needs the form DIMS:BOUND', returncode=EXIT_USAGE)
            add_dimension_bound(m, parse_dims(dims, v), int(bound))
        if options.get('group'):
            m = reduce_kramer_mesner(m, load_group(options['group']))
        if options.get('prescribe'):
            prescribe(m, read_code(options['prescribe']))
        return m

    def describe(self, m):
        families = dict(sorted(m.family_counts().items()))
        payload = {
            'kind': m.kind,
            'v': m.v,
            'd': m.d,
            'dims': sorted(m.dims),
            'cuts': list(m.cuts),
            'group_order': m.group_order,
            'binaries': len(m.binaries),
            'generals': len(m.generals),
            'constraints': len(m.constraints),
            'fixed': len(m.fixed),
            'families': families,
        }
        lines = [
            f'model={m.kind} v={m.v} d={m.d} dims={dims_text(m.dims)} group_order={m.group_order}',
            f'  binaries={len(m.binaries)} generals={len(m.generals)} '
            f'constraints={len(m.constraints)} fixed={len(m.fixed)}',
        ]
        lines += [f'  {family}: {count}' for family, count in families.items()]
        return payload, lines

    def time_limit(self, options):
        limit = options.get('time_limit')
        return settings.SUBSPACE_TIME_LIMIT if limit is None else limit

    def finish(self, result, payload, lines, options, record):
        payload.update({
            'status': str(result.status),
            'value': result.value,
            'method': result.method,
            'nodes': result.nodes,
            'wall_time': round(result.wall_time, 3),
            'relaxation': result.relaxation,
        })
        if result.code is not None:
            payload['dim_distribution'] = list(result.code.dim_distribution.counts)
            if options.get('out'):
                path = write_code(result.code, self.output_path(options['out']), result.summary)
                payload['code_file'] = str(path)
        if options.get('record'):
            run = SolveRun.objects.create(status=str(result.status), value=result.value,
                                          relaxation=result.relaxation, nodes=result.nodes,
                                          wall_time=result.wall_time, **record)
            payload['run_id'] = run.pk
        lines = [result.summary] + lines
        if result.relaxation is not None:
            lines.append(f'  relaxation={result.relaxation:.4f}')
        self.emit(payload, '\n'.join(lines))

    def handle_build(self, **options):
        payload, lines = self.describe(self.build(options))
        self.emit(payload, '\n'.join(lines))

    def handle_export(self, **options):
        m = self.build(options)
        path = export_lp(m, self.output_path(options['export']))
        payload, lines = self.describe(m)
        payload['path'] = str(path)
        self.emit(payload, '\n'.join(lines + [f'wrote {path}']))

    def handle_solve(self, **options):
        m = self.build(options)
        if options.get('export'):
            export_lp(m, self.output_path(options['export']))
        result = solve(m, options['backend'], self.time_limit(options), options.get('relax', False))
        payload, lines = self.describe(m)
        record = {
            'v': m.v,
            'd': m.d,
            'dims': dims_text(m.dims),
            'model_kind': m.kind,
            'cuts': ','.join(m.cuts),
            'method': result.method,
            'group_order': m.group_order,
        }
        self.finish(result, payload, lines, options, record)

    def handle_clique(self, v, d, dims=None, **options):
        dim_set = parse_dims(dims, v)
        result = max_clique(v, d, dim_set, self.time_limit(options))
        dim_set = range(v + 1) if dim_set is None else dim_set
        payload = {'v': v, 'd': d, 'dims': sorted(dim_set)}
        record = {'v': v, 'd': d, 'dims': dims_text(dim_set), 'method': 'maxclique'}
        self.finish(result, payload, [], options, record)
