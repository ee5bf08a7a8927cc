import logging

from django.conf import settings
from django.db import DatabaseError

from ..repositories import ScenarioRunRepository
from .report_service import jsonable

logger = logging.getLogger(__name__)


class RunLogService:
    """Records command invocations; a broken run log never fails the run itself."""

    @classmethod
    def is_enabled(cls):
        return getattr(settings, 'SEIZ_RECORD_RUNS', True)

    @classmethod
    def start(cls, command, cfg, output_dir=''):
        if not cls.is_enabled():
            return None
        try:
            run = ScenarioRunRepository.create_run(
                command=command,
                label=cfg.label,
                config=jsonable(cfg.to_dict()),
                output_dir=str(output_dir or ''),
            )
            run.mark_as_started()
            return run
        except DatabaseError as e:
            logger.warning(f"could not record {command} run for {cfg.label}: {e}")
            return None

    @classmethod
    def complete(cls, run, summary):
        if run is None:
            return
        try:
            run.mark_as_completed(jsonable(summary))
        except DatabaseError as e:
            logger.warning(f"could not update run {run.id}: {e}")

    @classmethod
    def fail(cls, run, exc, summary=None):
        if run is None:
            return
        try:
            run.mark_as_failed(str(exc), getattr(exc, 'exit_code', 1), jsonable(summary) if summary else None)
        except DatabaseError as e:
            logger.warning(f"could not update run {run.id}: {e}")
