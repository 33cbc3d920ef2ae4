from subspace_codes.bounds import (
    a_closed_form,
    a_constant_dimension,
    ledger_lookup,
    render_csv,
    render_text,
    table_ledger,
)
from subspace_codes.exceptions import OutOfScopeError
from subspace_codes.management.base import SubspaceCommand, parse_dims
from subspace_codes.models import SolveRun


def _entry_dict(e):
    return {
        'q': e.q,
        'v': e.v,
        'd': e.d,
        'lower': e.lower,
        'upper': e.upper,
        'exact': e.exact,
        'types': e.types,
        'provenance': e.provenance,
        'dims': sorted(e.dims) if e.dims is not None else None,
    }


class Command(SubspaceCommand):
    help = 'Known values and bounds for A_q(v,d) and A_q(v,d;k)'

    actions = (
        ('table', 'Ledger of bounds for q=2, v <= 8'),
        ('lookup', 'Bounds for one parameter set'),
    )

    def add_table_arguments(self, parser):
        parser.add_argument('--csv', action='store_true', help='Print CSV instead of the grid')
        parser.add_argument('--runs', action='store_true', help='Add the best recorded solver values')

    def add_lookup_arguments(self, parser):
        parser.add_argument('--q', type=int, default=2)
        parser.add_argument('--v', type=int, required=True)
        parser.add_argument('--d', type=int, required=True)
        parser.add_argument('--dims', help='A single dimension k for A_q(v,d;k)')

    def handle_table(self, csv=False, runs=False, **options):
        entries = table_ledger()
        extra = None
        if runs:
            extra = {key: run.value for key, run in SolveRun.best_lower_bounds().items()}
        if self.options.get('json'):
            self.emit({'entries': [_entry_dict(e) for e in entries], 'recorded': {f'{v},{d}': value for (v, d), value in (extra or {}).items()}})
        elif csv:
            self.stdout.write(render_csv(entries, extra).rstrip('\n'))
        else:
            self.stdout.write(render_text(entries, extra).rstrip('\n'))

    def handle_lookup(self, q=2, v=None, d=None, dims=None, **options):
        chosen = parse_dims(dims, v)
        if chosen is not None and len(chosen) == 1:
            entry = a_constant_dimension(q, v, d, chosen[0])
        else:
            try:
                entry = ledger_lookup(q, v, d)
            except OutOfScopeError:
                entry = a_closed_form(q, v, d)
        label = f'A_{q}({v},{d})' if entry.dims is None else f'A_{q}({v},{d};{",".join(map(str, sorted(entry.dims)))})'
        self.emit(_entry_dict(entry), f'{label} = {entry} [{entry.provenance}]')
