"""Exception types shared across the package."""


class NumericalContractError(RuntimeError):
    """A numerical invariant (hermiticity, trace, unitarity, ...) was violated."""


class TruncationError(ValueError):
    """Hilbert-space truncation lost more weight than the allowed budget."""

    def __init__(self, message: str, loss: float):
        super().__init__(f"{message} (measured loss {loss:.3e})")
        self.loss = loss


class GridError(ValueError):
    """Phase-space grid too small or too coarse for the requested computation."""
