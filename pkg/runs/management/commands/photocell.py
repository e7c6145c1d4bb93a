"""
Management command: photocell

Symulacje fotoogniwa z ciemnym stanem: krzywe I-V, maksymalizacja mocy,
przeglądy parametrów, porównanie z teorią Redfielda i screening dimerów.
CSV trafia do --out (lub na stdout), podsumowanie na stdout (lub stderr).

Kody wyjścia: 0 sukces, 2 błąd konfiguracji/danych, 3 błąd numeryczny.

Użycie:
    python manage.py photocell iv --preset ivpv --out iv.csv
    python manage.py photocell sweep-trapping --preset fig3 --workers 8
    python manage.py photocell redfield-compare --preset fig3 --nonsecular --dephase 5e-4
    python manage.py photocell screen --db molecules.csv --config screen.conf --out pairs.csv
    python manage.py photocell preset --preset fig4 > fig4.conf
"""

import logging
from pathlib import Path

import numpy as np
from django.core.management.base import BaseCommand, CommandError

from core.exceptions import NumericalError, PhotocellError
from runs.services.commands import COMMANDS, run_command
from runs.services.config import parse_config
from runs.services.output import render_csv, render_summary, write_text

logger = logging.getLogger('runs.photocell')

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class Command(BaseCommand):
    help = 'Run a dark-state photocell simulation or screening and write CSV results.'

    def add_arguments(self, parser):
        parser.add_argument('verb', choices=COMMANDS, help='What to compute')
        parser.add_argument('--config', help='Config file with key = value lines')
        parser.add_argument('--preset', help='Parameter preset (fig3, fig4, fig5, fig8, ivpv; default fig3)')
        parser.add_argument('--out', help='Output CSV path (default: stdout)')
        parser.add_argument('--db', help='Molecule database CSV (screen, histogram)')
        parser.add_argument(
            '--secular', dest='secular', action='store_true', default=None,
            help='Secular Redfield generator',
        )
        parser.add_argument(
            '--nonsecular', dest='secular', action='store_false', default=None,
            help='Full (nonsecular) Redfield generator (default)',
        )
        parser.add_argument('--dephase', type=float, help='Pure dephasing rate, eV')
        parser.add_argument('--workers', type=int, help='Sweep threads (default: PHOTOCELL_MAX_WORKERS)')

    def handle(self, *args, **options):
        verb = options['verb']
        try:
            config = self._load_config(options)
            output = run_command(verb, config, db=options['db'], max_workers=options['workers'])
            self._emit(output, config.out)
        except (NumericalError, ArithmeticError, np.linalg.LinAlgError) as e:
            raise CommandError(f"{verb}: numerical failure: {e}", returncode=EXIT_NUMERICAL) from e
        except (PhotocellError, ValueError, OSError) as e:
            raise CommandError(f"{verb}: {e}", returncode=EXIT_CONFIG) from e
        except Exception as e:
            logger.exception(f"Unexpected failure in '{verb}'")
            raise CommandError(f"{verb}: unexpected failure: {e}", returncode=EXIT_NUMERICAL) from e

    def _load_config(self, options):
        text = Path(options['config']).read_text(encoding='utf-8') if options['config'] else ''
        overrides = {}
        if options['secular'] is not None:
            overrides['secular'] = options['secular']
        if options['dephase'] is not None:
            overrides['dephasing'] = options['dephase']
        if options['out']:
            overrides['out'] = options['out']
        return parse_config(text, preset=options['preset'], overrides=overrides)

    def _emit(self, output, out_path):
        body = output.text if output.text is not None else render_csv(output.columns, output.rows)
        summary = render_summary(output.summary)
        if out_path:
            write_text(out_path, body)
            self.stdout.write(summary, ending='')
            self.stdout.write(self.style.SUCCESS(f'Results written to {out_path}'))
        else:
            self.stdout.write(body, ending='')
            self.stderr.write(summary, ending='')
