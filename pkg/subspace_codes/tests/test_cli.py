import tempfile
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path

from django.test import SimpleTestCase

from subspace_codes.cli import run
from subspace_codes.codes import SubspaceCode, write_code
from subspace_codes.linalg2 import Subspace


def run_quietly(argv):
    out, err = StringIO(), StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(argv)
    return code, out.getvalue(), err.getvalue()


class RunTests(SimpleTestCase):
    def test_success(self):
        code, out, _ = run_quietly(['distance', '1000,0100', '0010,0001'])
        self.assertEqual(code, 0)
        self.assertIn('d=4', out)

    def test_unknown_command(self):
        for argv in ([], ['migrate'], ['plot']):
            with self.subTest(argv=argv):
                code, _, err = run_quietly(argv)
                self.assertEqual(code, 2)
                self.assertIn('usage: subspace', err)

    def test_missing_action(self):
        code, _, _ = run_quietly(['ilp'])
        self.assertEqual(code, 2)

    def test_verification_failure(self):
        with tempfile.TemporaryDirectory() as tmp:
            words = [Subspace.from_strings(['100']), Subspace.from_strings(['010'])]
            path = write_code(SubspaceCode.of(3, words), Path(tmp) / 'points.txt')
            code, out, _ = run_quietly(['verify', str(path), '--d', '3'])
        self.assertEqual(code, 1)
        self.assertTrue(out.startswith('FAIL M=2 d=2'))

    def test_input_errors(self):
        code, _, err = run_quietly(['verify', 'no-such-code.txt', '--d', '1'])
        self.assertEqual(code, 2)
        self.assertIn('no-such-code.txt', err)
        code, _, _ = run_quietly(['ilp', 'build', '--v', '4'])
        self.assertEqual(code, 2)

    def test_named_options(self):
        code, out, _ = run_quietly(['construct', 'gabidulin', '--v', '8', '--k', '4', '--delta', '3'])
        self.assertEqual(code, 0)
        self.assertIn('M=256 d=6', out)
        code, out, _ = run_quietly(['ilp', 'solve', '--v', '4', '--d', '3'])
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith('optimum=5'))

    def test_option_prefixes_are_not_expanded(self):
        code, _, err = run_quietly(['construct', 'gabidulin', '--v', '8', '--k', '4', '--del', '3'])
        self.assertEqual(code, 2)
        self.assertIn('--del', err)
