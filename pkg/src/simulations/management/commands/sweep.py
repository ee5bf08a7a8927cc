from simulations.management.base import ScenarioCommand
from simulations.services import ScenarioConfigService, ScenarioService


class Command(ScenarioCommand):
    help = 'Run one uncontrolled simulation per value of a rate constant and write sweep.csv'

    command_name = 'sweep'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--param', help='Rate constant to sweep (default: [sweep] parameter)')
        parser.add_argument('--values', help='Comma separated values (default: [sweep] values)')

    def execute_scenario(self, cfg, out_dir, options):
        spec = ScenarioConfigService.build_sweep_spec(cfg, options.get('param'), options.get('values'))
        outcome = ScenarioService.run_sweep(spec, out_dir=out_dir)
        for row in outcome.summary['rows']:
            if row.get('status') == 'success':
                self.stdout.write(
                    f"{spec.parameter}={row['value']:g}: R0={row['r0']:.6g} "
                    f"peak i={row['peak_i']:.6g} peak z={row['peak_z']:.6g}"
                )
            else:
                self.stderr.write(f"{spec.parameter}={row['value']:g}: {row.get('error')}")
        return outcome.summary
