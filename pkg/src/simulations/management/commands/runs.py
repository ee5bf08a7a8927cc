from django.core.management.base import BaseCommand

from simulations.models import ScenarioRun
from simulations.repositories import ScenarioRunRepository


class Command(BaseCommand):
    help = 'List recorded scenario runs, newest first'

    def add_arguments(self, parser):
        parser.add_argument('--limit', type=int, default=20)
        parser.add_argument('--command', dest='run_command', choices=[c for c, _ in ScenarioRun.COMMAND_CHOICES])
        parser.add_argument('--status', choices=[s for s, _ in ScenarioRun.STATUS_CHOICES])
        parser.add_argument('--label')

    def handle(self, *args, **options):
        runs = ScenarioRunRepository.get_recent_runs(
            limit=options['limit'],
            command=options.get('run_command'),
            status=options.get('status'),
            label=options.get('label'),
        )
        if not runs:
            self.stdout.write('No runs recorded.')
            return

        for run in runs:
            duration = f"{run.duration.total_seconds():.2f}s" if run.duration else '-'
            line = f"#{run.id} {run.created_at:%Y-%m-%d %H:%M:%S} {run.command:<8} {run.label:<12} {run.status:<8} {duration}"
            if run.status == 'failed':
                line += f" exit={run.exit_code} {run.error_message}"
            self.stdout.write(line)
        self.stdout.write(self.style.SUCCESS(f"{len(runs)} run(s)"))
