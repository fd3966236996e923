"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a formula."""


class CutoffError(DomainError):
    """The Fock cutoff is too small for the requested coherent amplitude."""

    def __init__(self, alpha, cutoff, minimal):
        self.alpha = alpha
        self.cutoff = cutoff
        self.minimal = minimal
        super().__init__(
            f"Fock cutoff N={cutoff} too small for alpha={alpha}; "
            f"need N >= {minimal}"
        )


class ContractError(ValueError):
    """A numerical contract (Hermiticity, normalization, PSD) was violated."""


class ConsistencyError(RuntimeError):
    """Two independent construction paths disagree beyond tolerance."""


class PropagationError(RuntimeError):
    """Time propagation lost unitarity beyond the allowed drift."""
