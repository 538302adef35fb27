from apps.hypercore.exceptions import HypergraphError


class GraftPreconditionError(HypergraphError):
    """The instance does not satisfy the hypotheses of the transformation."""
