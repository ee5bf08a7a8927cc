from .config_service import ScenarioConfigService, parse_values
from .report_service import ReportService, read_trajectory_csv, jsonable
from .run_log_service import RunLogService
from .scenario_service import (
    ScenarioService,
    SimulationOutcome,
    AnalysisOutcome,
    OptimizationOutcome,
    SweepOutcome,
    SWEEP_COLUMNS,
)

__all__ = [
    'ScenarioConfigService',
    'parse_values',
    'ReportService',
    'read_trajectory_csv',
    'jsonable',
    'RunLogService',
    'ScenarioService',
    'SimulationOutcome',
    'AnalysisOutcome',
    'OptimizationOutcome',
    'SweepOutcome',
    'SWEEP_COLUMNS',
]
