from typing import Any, Dict, Optional

from django.db.models import QuerySet

from ..models import ScenarioRun


class ScenarioRunRepository:
    @staticmethod
    def create_run(command: str, label: str, config: Dict[str, Any], output_dir: str = '') -> ScenarioRun:
        return ScenarioRun.objects.create(
            command=command,
            label=label,
            config=config,
            output_dir=output_dir,
        )

    @staticmethod
    def get_run_by_id(run_id: int) -> Optional[ScenarioRun]:
        try:
            return ScenarioRun.objects.get(id=run_id)
        except ScenarioRun.DoesNotExist:
            return None

    @staticmethod
    def get_recent_runs(limit: int = 20, command: str = None, status: str = None, label: str = None) -> QuerySet:
        queryset = ScenarioRun.objects.all()
        if command:
            queryset = queryset.filter(command=command)
        if status:
            queryset = queryset.filter(status=status)
        if label:
            queryset = queryset.filter(label=label)
        return queryset.order_by('-created_at', '-id')[:limit]

    @staticmethod
    def get_runs_by_label(label: str) -> QuerySet:
        return ScenarioRun.objects.filter(label=label).order_by('-created_at', '-id')

    @staticmethod
    def get_failed_runs() -> QuerySet:
        return ScenarioRun.objects.filter(status='failed').order_by('-created_at', '-id')
