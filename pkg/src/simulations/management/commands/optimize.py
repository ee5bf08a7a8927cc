from core.exceptions import NonConvergenceException
from simulations.management.base import ScenarioCommand
from simulations.services import ScenarioService


class Command(ScenarioCommand):
    help = 'Solve the optimal control problem by forward-backward sweep and compare with the uncontrolled run'

    command_name = 'optimize'
    controlled = True

    def execute_scenario(self, cfg, out_dir, options):
        summary = ScenarioService.run_optimize(cfg, out_dir=out_dir).summary
        self.write_lines([
            f"J controlled = {summary['j_controlled']:.8g}",
            f"J uncontrolled = {summary['j_uncontrolled']:.8g}",
            f"iterations = {summary['iterations']}, converged = {summary['converged']}",
        ])
        if not summary['converged']:
            exc = NonConvergenceException(
                f"no convergence after {summary['iterations']} iterations "
                f"(last change {summary['last_change']:.3e}); outputs written to {out_dir}"
            )
            exc.summary = summary
            raise exc
        return summary
