from pathlib import Path

from celery import shared_task
import logging

from core.exceptions import SeizLabException
from .services import ScenarioService
from .types import ScenarioConfig

logger = logging.getLogger(__name__)


@shared_task
def simulate_sweep_value(base_config, parameter, value, values_dir=None):
    """One uncontrolled run of a sweep; failures come back as an error row."""
    try:
        cfg = ScenarioConfig.from_dict(base_config).with_param(parameter, value)
        out_dir = Path(values_dir) / f"{parameter}={value:g}" if values_dir else None
        row = ScenarioService.sweep_row(cfg, value, out_dir=out_dir)
        logger.info(f"sweep value {parameter}={value} done")
        return row

    except SeizLabException as e:
        logger.error(f"sweep value {parameter}={value} failed: {e}")
        return {
            'value': float(value),
            'status': 'error',
            'error': str(e),
            'exit_code': e.exit_code,
        }
    except Exception as e:
        logger.error(f"Unexpected error in sweep value {parameter}={value}: {e}")
        return {
            'value': float(value),
            'status': 'error',
            'error': str(e),
        }
