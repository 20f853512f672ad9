"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Malformed configuration input (bad key, unparseable number, ...)."""


class PreconditionError(ValueError):
    """A physics precondition was violated (bad regime, degenerate input)."""


class ContractViolation(RuntimeError):
    """A numerical contract did not hold at runtime."""


class NormDriftError(ContractViolation):
    """State norm drifted beyond the integrator contract."""

    def __init__(self, drift, limit=1e-10):
        self.drift = drift
        self.limit = limit
        super().__init__(
            f"norm drift {drift:.3e} exceeds integrator contract {limit:.1e}"
        )
