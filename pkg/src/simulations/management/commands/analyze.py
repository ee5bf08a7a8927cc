from simulations.management.base import ScenarioCommand
from simulations.services import ScenarioService


class Command(ScenarioCommand):
    help = 'Compute R0, the Jacobian spectrum at the rumor-free equilibrium and the endemic point'

    command_name = 'analyze'

    def execute_scenario(self, cfg, out_dir, options):
        outcome = ScenarioService.run_analyze(cfg, out_dir=out_dir)
        report, endemic = outcome.report, outcome.endemic
        lines = [
            f"R0 = {report.r0:.7g}",
            f"a2 = {report.a2:.10g}, a1 = {report.a1:.10g}, a0 = {report.a0:.10g}",
            f"Routh-Hurwitz: {'pass' if report.routh_hurwitz_pass else 'fail'}",
            f"max Re(eigenvalue) = {report.max_real_part:.6g}",
            f"verdict: {report.verdict}",
        ]
        if endemic is None:
            lines.append('endemic point: none')
        else:
            lines.append(
                f"endemic point: s={endemic.s_star:.8g} e={endemic.e_star:.8g} "
                f"i={endemic.i_star:.8g} z={endemic.z_star:.8g} (residual {endemic.residual:.2e})"
            )
        self.write_lines(lines)
        return outcome.summary
