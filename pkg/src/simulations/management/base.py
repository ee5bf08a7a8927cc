import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from core.exceptions import NonConvergenceException, SeizLabException
from ..presets import PRESET_NAMES
from ..services import RunLogService, ScenarioConfigService

logger = logging.getLogger(__name__)


class ScenarioCommand(BaseCommand):
    """
    Shared plumbing of the scenario commands: scenario selection flags,
    output directory, run log bookkeeping and the exit-code contract
    (0 success, 2 configuration, 3 numerical failure, 4 non-convergence).
    """

    command_name = None
    controlled = False

    def add_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--config', help='Path to an INI scenario file')
        source.add_argument('--preset', choices=PRESET_NAMES, help='Builtin scenario')
        parser.add_argument('--out', help='Output directory (default: SEIZ_OUTPUT_DIR/<label>/<command>)')
        parser.add_argument(
            '--set',
            dest='overrides',
            action='append',
            default=[],
            metavar='SECTION.KEY=VALUE',
            help='Override one scenario key; may be repeated',
        )
        parser.add_argument('--steps', type=int, help='Number of grid steps (overrides grid.h)')
        parser.add_argument('--horizon', type=float, help='Final time T')

    def load_scenario(self, options):
        return ScenarioConfigService.load_config(
            path=options.get('config'),
            preset=options.get('preset'),
            overrides=options.get('overrides') or (),
            controlled=self.controlled,
            steps=options.get('steps'),
            horizon=options.get('horizon'),
        )

    def output_dir(self, options, cfg):
        if options.get('out'):
            return Path(options['out'])
        return Path(settings.SEIZ_OUTPUT_DIR) / cfg.label / self.command_name

    def execute_scenario(self, cfg, out_dir, options):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            cfg = self.load_scenario(options)
        except SeizLabException as e:
            logger.error(f"{self.command_name}: invalid scenario: {e}")
            raise CommandError(str(e), returncode=e.exit_code)

        out_dir = self.output_dir(options, cfg)
        run = RunLogService.start(self.command_name, cfg, out_dir)
        try:
            summary = self.execute_scenario(cfg, out_dir, options)
        except NonConvergenceException as e:
            RunLogService.fail(run, e, getattr(e, 'summary', None))
            logger.error(f"{self.command_name} {cfg.label}: {e}")
            raise CommandError(f"{cfg.label}: {e}", returncode=e.exit_code)
        except SeizLabException as e:
            RunLogService.fail(run, e)
            logger.error(f"{self.command_name} {cfg.label} failed: {e}")
            raise CommandError(f"{cfg.label}: {e}", returncode=e.exit_code)

        RunLogService.complete(run, summary)
        self.stdout.write(self.style.SUCCESS(f"{self.command_name} {cfg.label}: outputs in {out_dir}"))
        return None

    def write_lines(self, lines):
        for line in lines:
            self.stdout.write(line)
