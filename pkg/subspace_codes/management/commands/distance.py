from subspace_codes.linalg2 import intersection_dim, subspace_distance
from subspace_codes.management.base import SubspaceCommand, parse_subspace


class Command(SubspaceCommand):
    help = 'Subspace distance between two subspaces given as rows, e.g. 1000,0100'

    def add_command_arguments(self, parser):
        parser.add_argument('first', help='Rows of the first subspace, comma separated')
        parser.add_argument('second', help='Rows of the second subspace, comma separated')
        parser.add_argument('--v', type=int, help='Ambient dimension, needed for the zero space "-"')

    def run(self, first, second, v=None, **options):
        if v is None:
            widths = {len(r) for r in (first + ',' + second).replace(';', ',').split(',') if r and r != '-'}
            v = widths.pop() if len(widths) == 1 else None
        a = parse_subspace(first, v)
        b = parse_subspace(second, v)
        distance = subspace_distance(a, b)
        meet = intersection_dim(a, b)
        self.emit(
            {'v': a.v, 'dims': [a.k, b.k], 'intersection_dim': meet, 'distance': distance},
            f'd={distance} dim(U)={a.k} dim(W)={b.k} dim(U&W)={meet}',
        )
