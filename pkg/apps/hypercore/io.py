"""Reading and writing hypergraph files (canonical JSON or plain text)."""
import json
import logging
from pathlib import Path

from rest_framework.exceptions import ValidationError

from .exceptions import HypergraphError
from .serializers import HypergraphSerializer

logger = logging.getLogger(__name__)


def parse_document(text):
    """Parse file contents into the raw payload dict (``vertex_count``, ``edges``, extras)."""
    stripped = text.strip()
    if stripped.startswith('{'):
        try:
            payload = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise HypergraphError(f'Invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}')
        if not isinstance(payload, dict):
            raise HypergraphError('Hypergraph JSON must be an object')
        return payload
    return _parse_plain_text(stripped)


def _parse_plain_text(text):
    lines = [line.split('#', 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise HypergraphError('Empty hypergraph file')
    try:
        vertex_count = int(lines[0])
        edges = [[int(token) for token in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise HypergraphError(f'Plain-text hypergraph expects integers: {exc}')
    return {'vertex_count': vertex_count, 'edges': edges}


def loads(text):
    payload = parse_document(text)
    serializer = HypergraphSerializer(data=payload)
    try:
        serializer.is_valid(raise_exception=True)
    except ValidationError as exc:
        raise HypergraphError(f'Invalid hypergraph: {exc.detail}')
    return serializer.validated_data['hypergraph']


def load(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise HypergraphError(f'Cannot read {path}: {exc.strerror}')
    g = loads(text)
    logger.debug(f'Loaded {path}: {g.vertex_count} vertices, {g.edge_count} edges')
    return g


def dumps(g):
    return json.dumps(HypergraphSerializer(g).data, sort_keys=True) + '\n'


def dump(g, path):
    Path(path).write_text(dumps(g))
