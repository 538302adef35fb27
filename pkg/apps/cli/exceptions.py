class SweepSpecError(ValueError):
    """Malformed grid, unknown target, or a key the target does not take."""
