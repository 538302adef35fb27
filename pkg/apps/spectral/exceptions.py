class SpectralError(ValueError):
    """Invalid input to a spectral computation or identity check."""


class PerronConvergenceError(ArithmeticError):
    """Power iteration hit its iteration cap; ``result`` holds the last iterate."""

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result
