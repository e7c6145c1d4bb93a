"""runs/tests/test_photocell_command.py - Testy komendy zarządzania `photocell`.

Uruchomienie:
    python manage.py test runs.tests.test_photocell_command --verbosity=2
"""

import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from core.exceptions import ConfigError, DegenerateNetworkError, DivergenceError
from runs.management.commands.photocell import EXIT_CONFIG, EXIT_NUMERICAL
from runs.services.commands import COMMANDS, run_command
from runs.services.config import parse_config
from runs.services.output import format_value, render_csv, render_summary


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

def run(*args):
    stdout, stderr = StringIO(), StringIO()
    call_command('photocell', *args, stdout=stdout, stderr=stderr, no_color=True)
    return stdout.getvalue(), stderr.getvalue()


class TempDirMixin:

    def setUp(self):
        super().setUp()
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()
        super().tearDown()

    def write(self, name, text):
        path = self.tmp / name
        path.write_text(text, encoding='utf-8')
        return str(path)


# ---------------------------------------------------------------------------
# Formatowanie wyników
# ---------------------------------------------------------------------------

class TestOutputFormatting(SimpleTestCase):

    def test_format_value(self):
        self.assertEqual(format_value(None), '')
        self.assertEqual(format_value(True), 'true')
        self.assertEqual(format_value(3), '3')
        self.assertEqual(format_value(1.0 / 3.0, digits=4), '0.3333')
        self.assertEqual(format_value('m0001'), 'm0001')

    def test_empty_rows_keep_header(self):
        self.assertEqual(render_csv(('a', 'b'), []), 'a,b\n')

    def test_missing_values_are_blank(self):
        self.assertEqual(render_csv(('a', 'b'), [{'a': 1}]), 'a,b\n1,\n')

    def test_summary_lines(self):
        self.assertEqual(render_summary([('candidates', 0), ('best', 0.5)]), 'candidates: 0\nbest: 0.5\n')


# ---------------------------------------------------------------------------
# Czasowniki
# ---------------------------------------------------------------------------

class TestPhotocellCommand(TempDirMixin, SimpleTestCase):

    def test_preset_prints_config_text(self):
        stdout, stderr = run('preset', '--preset', 'fig4')
        self.assertEqual(stdout, parse_config(preset='fig4').to_text())
        self.assertEqual(stderr, 'preset: fig4\n')

    def test_iv_output_is_reproducible(self):
        first, second = self.tmp / 'first.csv', self.tmp / 'second.csv'
        stdout, _ = run('iv', '--preset', 'ivpv', '--out', str(first))
        run('iv', '--preset', 'ivpv', '--out', str(second))
        self.assertEqual(first.read_bytes(), second.read_bytes())
        self.assertTrue(first.read_text(encoding='utf-8').startswith('gamma_alphabeta,current,voltage,power\n'))
        self.assertIn('optimum_power: ', stdout)
        self.assertIn(f'Results written to {first}', stdout)

    def test_thread_count_does_not_change_results(self):
        config = self.write('theta.conf', 'theta_rc_grid = 0.75pi, pi\n')
        serial, _ = run('theta-rc', '--preset', 'fig8', '--config', config, '--workers', '1')
        threaded, _ = run('theta-rc', '--preset', 'fig8', '--config', config, '--workers', '4')
        self.assertEqual(serial, threaded)
        self.assertEqual(len(serial.splitlines()), 1 + 2)

    def test_screen_on_header_only_database(self):
        db = self.write('molecules.csv', 'id,e_g,mu_g,e_e,mu_e\n')
        out = self.tmp / 'pairs.csv'
        stdout, _ = run('screen', '--db', db, '--out', str(out))
        self.assertEqual(len(out.read_text(encoding='utf-8').splitlines()), 1)
        self.assertIn('candidates: 0\n', stdout)


# ---------------------------------------------------------------------------
# Powtarzalność wszystkich czasowników
# ---------------------------------------------------------------------------

SMALL_RUN = """\
gamma_1alpha_grid = 1e-9, 1e-6
gamma_alphabeta_grid = logspace(-8, -4, 5)
delta_eps_grid = 0.05, 0.09
j12_grid = 0.01, 0.04
deviation_grid = -0.01, 0, 0.01
asym_delta_eps = 0.1
theta_rc_grid = 0.75pi, pi
phi_grid = 0, 0.2pi
tan2_bins = linspace(0, 0.05, 6)
anchor_id = aF
anchor_role = acceptor
evaluate_q = true
top_k = 2
"""

SMALL_DB = """\
id,e_g,mu_g,e_e,mu_e
d1,2.73,3.54,2.45,3.32
a1,2.61,0.94,1.97,0.06
d3,2.93,3.52,2.56,4.13
a3,2.82,0.90,2.18,0.00
dF,2.94,3.48,2.65,3.52
aF,2.82,1.09,2.43,0.93
"""


class TestEveryVerbIsDeterministic(TempDirMixin, SimpleTestCase):

    def test_repeated_and_threaded_runs_are_identical(self):
        config = self.write('small.conf', SMALL_RUN)
        db = self.write('molecules.csv', SMALL_DB)
        for verb in COMMANDS:
            with self.subTest(verb=verb):
                args = (verb, '--config', config, '--db', db)
                first = run(*args, '--workers', '1')
                again = run(*args, '--workers', '1')
                threaded = run(*args, '--workers', '4')
                self.assertTrue(first[0])
                self.assertEqual(first, again)
                self.assertEqual(first, threaded)

    def test_histogram_reports_out_of_range_partners(self):
        config = self.write('small.conf', SMALL_RUN)
        db = self.write('molecules.csv', SMALL_DB)
        _, summary = run('histogram', '--config', config, '--db', db)
        self.assertIn('partners: 0\n', summary)
        self.assertIn('below_range: 0\n', summary)
        self.assertIn('above_range: 2\n', summary)


# ---------------------------------------------------------------------------
# Kody wyjścia
# ---------------------------------------------------------------------------

class TestExitCodes(TempDirMixin, SimpleTestCase):

    def test_invalid_config_exits_with_config_code(self):
        config = self.write('bad.conf', 'j12 = 0.01\nchi = -1\n')
        with self.assertRaises(CommandError) as ctx:
            run('optimize', '--config', config)
        self.assertEqual(ctx.exception.returncode, EXIT_CONFIG)
        self.assertIn("key 'chi'", str(ctx.exception))

    def test_screen_without_database(self):
        with self.assertRaises(CommandError) as ctx:
            run('screen')
        self.assertEqual(ctx.exception.returncode, EXIT_CONFIG)

    def test_missing_config_file(self):
        with self.assertRaises(CommandError) as ctx:
            run('optimize', '--config', str(self.tmp / 'nope.conf'))
        self.assertEqual(ctx.exception.returncode, EXIT_CONFIG)

    def test_numerical_failure_exits_with_numerical_code(self):
        with mock.patch('runs.services.commands.iv_curve', side_effect=DegenerateNetworkError('singular')):
            with self.assertRaises(CommandError) as ctx:
                run('iv', '--preset', 'ivpv')
        self.assertEqual(ctx.exception.returncode, EXIT_NUMERICAL)
        self.assertIn('numerical failure', str(ctx.exception))

    def test_unknown_verb_in_service_layer(self):
        with self.assertRaises(ConfigError):
            run_command('spectrum', parse_config())

    def test_zero_benchmark_power_exits_with_numerical_code(self):
        config = self.write('dark.conf', 'gamma_1g = 0\ngamma_2g = 0\n')
        with self.assertRaises(CommandError) as ctx:
            run('optimize', '--config', config)
        self.assertEqual(ctx.exception.returncode, EXIT_NUMERICAL)
        self.assertIn('benchmark power is zero', str(ctx.exception))

    def test_divergent_formula_exits_with_numerical_code(self):
        with mock.patch('runs.services.commands.deviation_sweep', side_effect=DivergenceError('diverges at z = 1')):
            with self.assertRaises(CommandError) as ctx:
                run('deviation', '--preset', 'fig5')
        self.assertEqual(ctx.exception.returncode, EXIT_NUMERICAL)
