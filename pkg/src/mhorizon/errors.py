"""Exception hierarchy.

Validation problems (bad input data, malformed cases) derive from
:class:`ValidationError`; anything raised while solving derives from
:class:`SolverError`. The CLI maps the two families to exit codes 1 and 2.
"""

from __future__ import annotations


class MhorizonError(Exception):
    """Base class for all package errors."""


class ValidationError(MhorizonError, ValueError):
    """Input data violates a documented invariant."""


class SolverError(MhorizonError, RuntimeError):
    """The LP could not be solved to a usable answer."""


# time structure
class NonPositiveProbability(ValidationError):
    pass


class ProbabilitySumMismatch(ValidationError):
    pass


class EmptyDimension(ValidationError):
    pass


class SeasonWeightMismatch(ValidationError):
    pass


class UnknownHour(ValidationError, KeyError):
    pass


class NegativeRate(ValidationError):
    pass


# catalog
class DuplicateAssetId(ValidationError):
    pass


class UnknownCommodity(ValidationError):
    pass


class UnknownNode(ValidationError):
    pass


class DanglingConversion(ValidationError):
    pass


class InvalidAsset(ValidationError):
    pass


class NegativeEmission(ValidationError):
    pass


class RateOutOfRange(ValidationError):
    pass


class NegativeOutput(ValidationError):
    pass


class NonPositiveCOP(ValidationError):
    pass


# model builder
class NoSupplyPath(ValidationError):
    pass


class MissingCapTrajectory(ValidationError):
    pass


class InfeasibleDemand(ValidationError):
    pass


class MissingCostTrack(ValidationError):
    pass


# case io
class MissingTable(ValidationError):
    def __init__(self, table: str):
        super().__init__(table)
        self.table = table

    def __str__(self) -> str:
        return f"MissingTable({self.table!r})"


class SchemaMismatch(ValidationError):
    def __init__(self, message: str, table: str | None = None, row: int | None = None,
                 column: str | None = None):
        super().__init__(message)
        self.table = table
        self.row = row
        self.column = column

    def __str__(self) -> str:
        locus = []
        if self.table is not None:
            locus.append(self.table)
        if self.row is not None:
            locus.append(f"row {self.row}")
        if self.column is not None:
            locus.append(f"column {self.column!r}")
        where = ", ".join(locus)
        return f"{self.args[0]} [{where}]" if where else str(self.args[0])


class NegativeQuantity(SchemaMismatch):
    pass


class UncoveredPeriod(ValidationError):
    pass


class ProfileGap(ValidationError):
    pass


class UntaggedRussianSupply(ValidationError):
    pass


# lp core
class NonFiniteCoefficient(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


class NameTooLong(ValidationError):
    pass


class MpsParseError(ValidationError):
    pass


class IterationLimit(SolverError):
    pass


class NumericalBreakdown(SolverError):
    pass


class NonOptimalSolution(SolverError):
    pass


class IoFailure(MhorizonError, OSError):
    pass


class UnknownSubcommand(ValidationError):
    """Command-line usage error (unknown subcommand or bad arguments)."""
