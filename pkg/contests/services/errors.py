"""Exception hierarchy shared by the contest services."""


class ContestError(Exception):
    """Base class for every error raised by the contest services."""


class ModelSpecError(ContestError, ValueError):
    """Marginal-benefit parameters or model literal are invalid."""


class ContestSpecError(ContestError, ValueError):
    """Contest literal, period index or player count is invalid."""


class DomainError(ContestError, ValueError):
    """Evaluation point lies outside (0, X̄]."""


class JetDivisionError(ContestError, ZeroDivisionError):
    """Division by a jet whose constant term is zero."""


class SolverError(ContestError):
    """The characterization solver could not produce an equilibrium."""


class NoRootFound(SolverError):
    """f0 has no sign change on the scan grid."""


class NonMonotoneAtRoot(SolverError):
    """f0 is not increasing at the located root."""

    def __init__(self, x, slope):
        super().__init__(f"f0'({x:.12g}) = {slope:.6g} is not positive")
        self.x = x
        self.slope = slope


class NegativeEffort(SolverError):
    """A period effort came out negative."""

    def __init__(self, period, effort):
        super().__init__(f"period {period} effort {effort:.6g} is negative")
        self.period = period
        self.effort = effort


class OracleError(ContestError):
    """The backward-induction oracle failed."""


class OracleNoConvergence(OracleError):
    """Iterated best response cycles on the grid."""

    def __init__(self, period, cycle_length):
        super().__init__(
            f"best response in period {period} cycles with length {cycle_length}"
        )
        self.period = period
        self.cycle_length = cycle_length


class OracleResolutionError(OracleError):
    """Best-response gap stays above the configured tolerance."""
