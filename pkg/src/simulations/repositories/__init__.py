from .run_repository import ScenarioRunRepository

__all__ = ['ScenarioRunRepository']
