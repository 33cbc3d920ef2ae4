from collections import Counter

from subspace_codes.group import burnside_orbit_count, fixed_subspaces, orbits
from subspace_codes.management.base import SubspaceCommand, load_group


class Command(SubspaceCommand):
    help = 'Matrix groups in GL(v,2): closure, orbits on G[v,k], fixed subspaces'

    actions = (
        ('closure', 'Order of the group generated by a generator file'),
        ('orbits', 'Orbits of the group on k-subspaces'),
        ('fixed', 'k-subspaces fixed by every group element'),
    )

    def _common(self, parser):
        parser.add_argument('generators', help='Generator file, or a packaged name such as c3xc3')

    def add_closure_arguments(self, parser):
        self._common(parser)

    def add_orbits_arguments(self, parser):
        self._common(parser)
        parser.add_argument('--k', type=int, required=True)
        parser.add_argument('--burnside', action='store_true', help='Cross-check the count with Burnside')

    def add_fixed_arguments(self, parser):
        self._common(parser)
        parser.add_argument('--k', type=int, required=True)

    def handle_closure(self, generators, **options):
        group = load_group(generators)
        self.emit({'v': group.v, 'order': group.order, 'generators': len(group.generators)},
                  f'order={group.order}')

    def handle_orbits(self, generators, k, burnside=False, **options):
        group = load_group(generators)
        decomposition = orbits(group, k)
        sizes = dict(sorted(Counter(decomposition.sizes).items()))
        payload = {
            'v': group.v,
            'k': k,
            'order': group.order,
            'orbits': len(decomposition),
            'size_histogram': sizes,
            'representatives': [str(s) for s in decomposition.representatives],
        }
        lines = [f'orbits={len(decomposition)} order={group.order}', f'  sizes={sizes}']
        if burnside:
            count = burnside_orbit_count(group, k)
            payload['burnside'] = str(count)
            lines.append(f'  burnside={count}')
        self.emit(payload, '\n'.join(lines))

    def handle_fixed(self, generators, k, **options):
        group = load_group(generators)
        fixed = fixed_subspaces(group, k)
        self.emit(
            {'v': group.v, 'k': k, 'fixed': [str(s) for s in fixed]},
            '\n'.join([f'fixed={len(fixed)}'] + [f'  {s}' for s in fixed]),
        )
