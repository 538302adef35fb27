"""
Parameter grids for sweeps.

A grid maps a parameter name to a list of values; its points are the
cartesian product taken in sorted key order. A value written ``lo..hi`` is
the inclusive integer range; an empty range (``hi < lo``) empties the grid.
"""
import itertools
import json
import re

from .exceptions import SweepSpecError

_RANGE = re.compile(r'^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$')
_INTEGER = re.compile(r'^\s*-?\d+\s*$')


def parse_token(token):
    if isinstance(token, bool):
        raise SweepSpecError(f'Grid values must be integers or names, got {token!r}')
    if isinstance(token, int):
        return [token]
    token = str(token)
    match = _RANGE.match(token)
    if match:
        lo, hi = int(match.group(1)), int(match.group(2))
        return list(range(lo, hi + 1))
    if _INTEGER.match(token):
        return [int(token)]
    if not token.strip():
        raise SweepSpecError('Empty grid value')
    return [token.strip()]


def parse_values(value):
    """``3``, ``"5..7"``, ``"1,2,4"`` or a list of those, flattened in order."""
    if isinstance(value, (list, tuple)):
        tokens = list(value)
    elif isinstance(value, str):
        tokens = value.split(',')
    else:
        tokens = [value]
    values = []
    for token in tokens:
        values.extend(parse_token(token))
    return values


def normalize(grid):
    return {str(key): parse_values(value) for key, value in grid.items()}


def points(grid):
    keys = sorted(grid)
    return [dict(zip(keys, combination)) for combination in itertools.product(*(grid[key] for key in keys))]


def _agrees(grid, overrides):
    return all(set(grid[key]) & set(values) for key, values in overrides.items() if key in grid)


def expand(grids, overrides=None):
    """
    Points of the grids in order, with ``overrides`` replacing the same keys.
    Grids sharing no value with an override are dropped unless that would
    drop all of them. Duplicate points keep their first position.
    """
    overrides = normalize(overrides or {})
    grids = [normalize(grid) for grid in grids]
    matching = [grid for grid in grids if _agrees(grid, overrides)]
    seen, result = set(), []
    for grid in matching or grids:
        merged = dict(grid, **overrides)
        for point in points(merged):
            fingerprint = json.dumps(point, sort_keys=True)
            if fingerprint not in seen:
                seen.add(fingerprint)
                result.append(point)
    return result
