import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'


def jsonable(value):
    """Plain-Python copy of a summary: numpy scalars and arrays unwrapped, complex as [re, im]."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.generic):
        return value.item()
    return value


class ReportService:
    @classmethod
    def ensure_dir(cls, out_dir):
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        return path

    @classmethod
    def write_frame(cls, frame, path):
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
        logger.debug(f"wrote {len(frame)} rows to {path}")
        return Path(path)

    @classmethod
    def write_trajectory(cls, trajectory, path):
        return cls.write_frame(trajectory.to_frame(), path)

    @classmethod
    def read_trajectory_csv(cls, path):
        return pd.read_csv(path, float_precision='round_trip')

    @classmethod
    def write_json(cls, summary, path):
        with open(path, 'w', encoding='utf-8') as fh:
            json.dump(jsonable(summary), fh, indent=2)
            fh.write('\n')
        return Path(path)

    @classmethod
    def render_text(cls, title, summary):
        lines = [title, '=' * len(title)]
        cls._render_lines(jsonable(summary), lines, indent=0)
        return '\n'.join(lines) + '\n'

    @classmethod
    def _render_lines(cls, data, lines, indent):
        pad = '  ' * indent
        for key, value in data.items():
            if isinstance(value, dict):
                lines.append(f"{pad}{key}:")
                cls._render_lines(value, lines, indent + 1)
            elif isinstance(value, float):
                lines.append(f"{pad}{key}: {value:.10g}")
            elif isinstance(value, list) and value and all(isinstance(v, list) for v in value):
                lines.append(f"{pad}{key}:")
                for row in value:
                    lines.append(f"{pad}  " + '  '.join(
                        f"{v:.10g}" if isinstance(v, float) else str(v) for v in row
                    ))
            else:
                lines.append(f"{pad}{key}: {value}")

    @classmethod
    def write_text(cls, title, summary, path):
        Path(path).write_text(cls.render_text(title, summary), encoding='utf-8')
        return Path(path)

    @classmethod
    def write_reports(cls, out_dir, title, summary):
        path = cls.ensure_dir(out_dir)
        return [
            cls.write_json(summary, path / 'report.json'),
            cls.write_text(title, summary, path / 'report.txt'),
        ]


def read_trajectory_csv(path):
    return ReportService.read_trajectory_csv(path)
