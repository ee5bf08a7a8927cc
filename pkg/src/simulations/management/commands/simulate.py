from simulations.management.base import ScenarioCommand
from simulations.services import ScenarioService


class Command(ScenarioCommand):
    help = 'Integrate the uncontrolled SEIZ system and write trajectory.csv with a summary report'

    command_name = 'simulate'

    def execute_scenario(self, cfg, out_dir, options):
        summary = ScenarioService.run_simulate(cfg, out_dir=out_dir).summary
        final = summary['final_state']
        self.write_lines([
            f"R0 = {summary['r0']:.7g} ({summary['verdict']})",
            f"peak i = {summary['peak_i']:.6g} at t = {summary['peak_i_time']:.4g}",
            f"peak z = {summary['peak_z']:.6g} at t = {summary['peak_z_time']:.4g}",
            f"final state s={final['s']:.6g} e={final['e']:.6g} i={final['i']:.6g} z={final['z']:.6g}",
        ])
        return summary
