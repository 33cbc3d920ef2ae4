"""Console entry point: ``subspace <command> ...`` runs the management commands of this app."""
import os
import sys

COMMANDS = ('distance', 'verify', 'fingerprint', 'construct', 'bounds', 'group', 'ilp', 'divis')


def run(argv=None):
    """Run one command and return its exit code instead of exiting."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'subspace_lab.settings')
    from django.core.management import execute_from_command_line

    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in COMMANDS:
        sys.stderr.write(f'usage: subspace {{{",".join(COMMANDS)}}} ...\n')
        return 2
    try:
        execute_from_command_line(['subspace', *argv])
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 1
    return 0


def main():
    sys.exit(run())
