"""
Deterministic report files: JSON with sorted keys and floats cut to
``REPORT_SIGNIFICANT_DIGITS``, JSON-lines run logs, CSV summaries and the
run manifest.
"""
import csv
import io
import json
import logging
import math
import numbers
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from django.conf import settings

logger = logging.getLogger(__name__)


def normalize(value, digits=None):
    """JSON-safe copy with every real rounded to ``digits`` significant digits."""
    digits = settings.REPORT_SIGNIFICANT_DIGITS if digits is None else digits
    if isinstance(value, Enum):
        return normalize(value.value, digits)
    if isinstance(value, dict):
        return {str(key): normalize(item, digits) for key, item in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [normalize(item, digits) for item in items]
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real):
        value = float(value)
        if not math.isfinite(value):
            return str(value)
        return float(f'{value:.{digits}g}')
    if hasattr(value, 'tolist'):
        return normalize(value.tolist(), digits)
    return str(value)


def dumps(document):
    return json.dumps(normalize(document), sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def dumps_line(record):
    return json.dumps(normalize(record), sort_keys=True, ensure_ascii=False) + '\n'


def append_jsonl(path, records):
    path = Path(path)
    with path.open('a', encoding='utf-8') as handle:
        for record in records:
            handle.write(dumps_line(record))
    logger.info(f'Appended {len(records)} records to {path}')


def csv_text(rows):
    buffer = io.StringIO()
    rows = [normalize(row) for row in rows]
    columns = []
    for row in rows:
        columns.extend(key for key in row if key not in columns)
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({
            key: json.dumps(item, sort_keys=True) if isinstance(item, (dict, list)) else item
            for key, item in row.items()
        })
    return buffer.getvalue()


def table_text(rows):
    """Aligned plain-text table of ``rows`` for terminals."""
    rows = [normalize(row) for row in rows]
    if not rows:
        return '(no rows)\n'
    columns = []
    for row in rows:
        columns.extend(key for key in row if key not in columns)
    cells = [[str(row.get(column, '')) for column in columns] for row in rows]
    widths = [max(len(column), *(len(line[i]) for line in cells)) for i, column in enumerate(columns)]
    lines = ['  '.join(column.ljust(width) for column, width in zip(columns, widths))]
    lines.append('  '.join('-' * width for width in widths))
    lines.extend('  '.join(cell.ljust(width) for cell, width in zip(line, widths)) for line in cells)
    return '\n'.join(line.rstrip() for line in lines) + '\n'


def write_text(path, text):
    path = Path(path)
    path.write_text(text, encoding='utf-8')
    logger.info(f'Wrote {path}')
    return str(path)


@dataclass
class RunManifest:
    """What a command was asked to do and every file it wrote."""

    command: str
    parameters: dict
    tool_version: str = ''
    tolerances: dict = field(default_factory=dict)
    started: str = ''
    wall_clock: float = 0.0
    outputs: list = field(default_factory=list)

    def __post_init__(self):
        if not self.tool_version:
            self.tool_version = settings.TOOL_VERSION
        if not self.tolerances:
            self.tolerances = current_tolerances()


def current_tolerances():
    return {
        name: getattr(settings, name)
        for name in (
            'SPECTRAL_TOLERANCE', 'SPECTRAL_MAX_ITER', 'IDENTITY_TOLERANCE', 'STRICT_GAP',
            'ZERO_BAND', 'ARGMAX_TOLERANCE', 'PUBLISHED_VALUE_TOLERANCE',
        )
    }
