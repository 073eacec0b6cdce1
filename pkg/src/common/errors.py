class ParafloquetError(Exception):
    """Base class for every error raised by the lab."""


class DimensionError(ParafloquetError, ValueError):
    """Operator dimensions or indices do not fit together."""


class HermiticityError(ParafloquetError, ValueError):
    pass


class UnitarityError(ParafloquetError, ValueError):
    pass


class SizeCapError(ParafloquetError, ValueError):
    """Requested Hilbert space exceeds the dense-matrix cap."""


class DegenerateSpectralError(ParafloquetError, ArithmeticError):
    """The operator has no weight on the sampled eigenstates."""


class BranchCutError(ParafloquetError, ArithmeticError):
    pass


class ConfigurationError(ParafloquetError, ValueError):
    pass


class VerificationError(ParafloquetError):
    """A checked identity exceeded its tolerance."""

    def __init__(self, failures):
        self.failures = failures
        names = ", ".join(sorted(failures))
        super().__init__(f"Verification failed for: {names}")


class OrbitError(ParafloquetError, ArithmeticError):
    """Repeated conjugation did not return to the seed operator."""
