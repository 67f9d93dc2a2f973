"""Exception and warning types shared across the package."""

from __future__ import annotations


class SeasizerError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(SeasizerError):
    """Bad or missing configuration (scenario files, CLI arguments)."""


class FormatError(SeasizerError):
    """A dataset file does not match its expected layout."""


class RowParseError(FormatError):
    """A single data row could not be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ParameterError(SeasizerError):
    """A physical or economic parameter is out of its valid range."""


class IncompleteProfileError(SeasizerError):
    """A typical-day profile could not be built for every clock hour."""

    def __init__(self, missing_hours: list[int]):
        hours = ", ".join(str(h) for h in missing_hours)
        super().__init__(f"no observations for clock hours: {hours}")
        self.missing_hours = list(missing_hours)


class AssemblyError(SeasizerError):
    """The sizing problem could not be assembled from the scenario."""


class SolverError(SeasizerError):
    """The solver failed in a way that is not an ordinary status."""


class PivotError(SolverError):
    """A simplex pivot element fell below the numerical tolerance."""

    def __init__(self, row: int, col: int):
        super().__init__(f"numerically singular pivot at row {row}, column {col}")
        self.row = row
        self.col = col


class OracleBudgetError(SeasizerError):
    """Brute-force enumeration would exceed the configured budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"enumeration needs {required} combinations, budget is {budget}"
        )
        self.required = required
        self.budget = budget


class IngestWarning(UserWarning):
    """Non-fatal oddity found while parsing a dataset."""
