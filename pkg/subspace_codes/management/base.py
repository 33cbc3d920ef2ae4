import json
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError, CommandParser
from django.core.serializers.json import DjangoJSONEncoder

from subspace_codes.exceptions import CodeFormatError, SolverError, SubspaceCodesError
from subspace_codes.group import closure, packaged_generators, read_generators
from subspace_codes.linalg2 import Subspace

JSON_SCHEMA = 1

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


class UsageParser(CommandParser):
    """Argument errors exit with code 2, from the shell and from call_command alike.

    Long options never match by prefix, so ``--v`` is not read as ``--version``
    or ``--verbosity``.
    """

    def __init__(self, **kwargs):
        kwargs.setdefault('allow_abbrev', False)
        super().__init__(**kwargs)

    def error(self, message):
        if self.called_from_command_line:
            super().error(message)
        raise CommandError(f'Error: {message}', returncode=EXIT_USAGE)


class SubspaceCommand(BaseCommand):
    """Shared plumbing: --json/--csv output, sub-actions and the exit-code contract."""

    actions = ()
    csv_output = False

    def create_parser(self, prog_name, subcommand, **kwargs):
        kwargs.setdefault('allow_abbrev', False)
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        # BaseCommand always builds a plain CommandParser
        parser.__class__ = UsageParser
        return parser

    def add_arguments(self, parser):
        parser.add_argument('--json', action='store_true', help='Print a JSON document instead of text')
        if self.csv_output:
            parser.add_argument('--csv', action='store_true', help='Print CSV instead of text')
        if self.actions:
            subparsers = parser.add_subparsers(
                dest='action', required=True, metavar='ACTION', parser_class=UsageParser,
            )
            for name, help_text in self.actions:
                sub = subparsers.add_parser(
                    name,
                    help=help_text,
                    called_from_command_line=getattr(parser, 'called_from_command_line', None),
                )
                getattr(self, f'add_{name.replace("-", "_")}_arguments', lambda p: None)(sub)
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        self.options = options
        action = options.get('action')
        method = getattr(self, f'handle_{action.replace("-", "_")}') if action else self.run
        try:
            method(**options)
        except CommandError:
            raise
        except SolverError as exc:
            raise CommandError(str(exc), returncode=EXIT_VERIFY_FAILED)
        except (CodeFormatError, OSError) as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)
        except SubspaceCodesError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)

    def run(self, **options):
        raise NotImplementedError('subclasses of SubspaceCommand must provide a run() method')

    def emit(self, payload, text=None):
        if self.options.get('json'):
            document = {'schema': JSON_SCHEMA, 'command': self.command_name, **payload}
            self.stdout.write(json.dumps(document, cls=DjangoJSONEncoder, indent=2))
        elif text is not None:
            self.stdout.write(text.rstrip('\n'))

    def success(self, message):
        if not self.options.get('json'):
            self.stdout.write(self.style.SUCCESS(message))

    def fail(self, message, payload=None):
        """Report a verification failure and exit with code 1."""
        if payload is not None:
            self.emit(payload)
        raise CommandError(message, returncode=EXIT_VERIFY_FAILED)

    @property
    def command_name(self):
        return self.__class__.__module__.rsplit('.', 1)[-1]

    def output_path(self, name):
        path = Path(name)
        if path.parent == Path('.') and not path.is_absolute():
            path = Path(settings.SUBSPACE_OUTPUT_DIR) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        return path


def parse_dims(text, v=None):
    if text in (None, '', 'all'):
        return None
    try:
        dims = sorted({int(k) for k in text.split(',') if k.strip()})
    except ValueError:
        raise CommandError(f'bad dimension list {text!r}', returncode=EXIT_USAGE) from None
    if v is not None and any(not 0 <= k <= v for k in dims):
        raise CommandError(f'dimensions must lie in 0..{v}', returncode=EXIT_USAGE)
    return dims


def parse_subspace(text, v=None):
    """Rows separated by commas or semicolons; '-' with a known v is the zero space."""
    text = text.strip()
    if text == '-':
        if v is None:
            raise CommandError('the zero space needs --v', returncode=EXIT_USAGE)
        return Subspace.zero(v)
    rows = [r for r in text.replace(';', ',').split(',') if r]
    return Subspace.from_strings(rows, v)


def dims_text(dims):
    return ','.join(str(k) for k in sorted(dims))


def load_group(source, cap=None):
    """Closure of a generator file, or of a generator set shipped with the package (e.g. ``c3xc3``)."""
    v, generators = read_generators(source) if Path(source).exists() else packaged_generators(source)
    return closure(generators, v, cap=cap or settings.SUBSPACE_GROUP_CAP)
