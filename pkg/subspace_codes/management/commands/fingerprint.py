from collections import Counter

from django.core.management.base import CommandError

from subspace_codes.codes import fingerprint, fingerprint_with_duality, is_isomorphic_bruteforce, read_code
from subspace_codes.management.base import EXIT_USAGE, SubspaceCommand


def _histogram(values):
    return dict(sorted(Counter(values).items()))


def _as_dict(fp):
    return {
        'v': fp.v,
        'M': fp.M,
        'dims': list(fp.dims),
        'distances': dict(fp.distances),
        'point_degrees': _histogram(fp.point_degrees),
        'hyperplane_degrees': _histogram(fp.hyperplane_degrees),
    }


class Command(SubspaceCommand):
    help = 'Isomorphism invariants of one code, or a comparison of two codes'

    def add_command_arguments(self, parser):
        parser.add_argument('codes', nargs='+', help='One or two code files')
        parser.add_argument('--duality', action='store_true', help='Identify a code with its dual')
        parser.add_argument('--bruteforce', action='store_true', help='Decide isomorphism over GL(v,2), v <= 4')

    def run(self, codes, duality=False, bruteforce=False, **options):
        if len(codes) > 2:
            raise CommandError('give one or two code files', returncode=EXIT_USAGE)
        loaded = [read_code(path) for path in codes]
        make = fingerprint_with_duality if duality else fingerprint
        prints = [make(c) for c in loaded]
        payload = {'fingerprints': [_as_dict(fp) for fp in prints], 'duality': duality}
        lines = []
        for path, fp in zip(codes, prints):
            lines.append(f'{path}: v={fp.v} M={fp.M} dims={fp.dims}')
            lines.append(f'  distances={dict(fp.distances)}')
            lines.append(f'  point degrees={_histogram(fp.point_degrees)}')
            lines.append(f'  hyperplane degrees={_histogram(fp.hyperplane_degrees)}')
        if len(loaded) == 2:
            same = prints[0] == prints[1]
            payload['same_fingerprint'] = same
            lines.append('fingerprints agree' if same else 'fingerprints differ: not isomorphic')
            if bruteforce:
                iso = is_isomorphic_bruteforce(loaded[0], loaded[1], allow_duality=duality)
                payload['isomorphic'] = iso
                lines.append('isomorphic' if iso else 'not isomorphic')
        self.emit(payload, '\n'.join(lines))
