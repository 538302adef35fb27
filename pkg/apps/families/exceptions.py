from apps.hypercore.exceptions import HypergraphError


class FamilyParameterError(HypergraphError):
    """Constructor parameters outside the family's valid range."""


class FamilySpecError(FamilyParameterError):
    """Malformed family mini-language string; ``position`` is the 0-based offset."""

    def __init__(self, message, spec='', position=0):
        self.spec = spec
        self.position = position
        super().__init__(f'{message} at position {position} in {spec!r}')
