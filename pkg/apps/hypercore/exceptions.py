class HypergraphError(ValueError):
    """Invalid hypergraph, vertex id, or edit precondition."""


class EdgeMoveError(HypergraphError):
    """An edge selected for moving does not satisfy the move precondition."""

    def __init__(self, message, offending_edges=()):
        super().__init__(message)
        self.offending_edges = tuple(offending_edges)


class DisconnectedHypergraphError(HypergraphError):
    def __init__(self, components):
        self.components = tuple(tuple(component) for component in components)
        sizes = ', '.join(str(len(component)) for component in self.components)
        super().__init__(
            f'Hypergraph is disconnected: {len(self.components)} components of sizes {sizes}'
        )
