"""Exception types and machine-readable validation codes.

Every constraint a five-number summary can violate maps to exactly one
code in :data:`VALIDATION_CODES`; the CSV pipeline, the CLI and the HTTP
service all report these codes verbatim so that clients (including the
browser calculator) can mirror the checks.
"""

from __future__ import annotations


class FivenumError(Exception):
    """Base class for all package errors."""


class DomainError(FivenumError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ValidationError(FivenumError, ValueError):
    """A study row or summary fails an input constraint.

    Parameters
    ----------
    code : str
        One of the keys of :data:`VALIDATION_CODES`.
    message : str
        Human-readable description, typically naming the offending field
        or inequality.
    field : str, optional
        Input field the error is attached to, when meaningful.
    """

    def __init__(self, code: str, message: str, field: str | None = None):
        if code not in VALIDATION_CODES:
            raise ValueError(f"unknown validation code {code!r}")
        super().__init__(message)
        self.code = code
        self.message = message
        self.field = field

    def to_dict(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.field is not None:
            out["field"] = self.field
        return out


class ScenarioError(ValidationError):
    """The summary does not carry the fields an estimator needs."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__("INSUFFICIENT_SUMMARY", message, field)


class NumericError(FivenumError, ArithmeticError):
    """A numerical routine failed to reach its tolerance.

    Attributes
    ----------
    achieved_tol : float
        Best error estimate reached before giving up.
    """

    def __init__(self, message: str, achieved_tol: float = float("nan")):
        super().__init__(message)
        self.achieved_tol = achieved_tol


class FitError(FivenumError, RuntimeError):
    """A curve fit cannot be performed on the given samples."""


class ConfigError(FivenumError, ValueError):
    """A simulation configuration violates its constraints."""


#: code -> description.  One entry per FiveNumberSummary invariant.
VALIDATION_CODES: dict[str, str] = {
    "MISSING_N": "the sample size n is required",
    "N_INVALID": "the sample size n must be a positive integer",
    "N_TOO_SMALL": "the sample size n is below the scenario minimum "
                   "(5 for min/max scenarios, 4 for quartile-only)",
    "MISSING_MEDIAN": "the median is required in every scenario",
    "INSUFFICIENT_SUMMARY": "the reported fields match none of the "
                            "supported scenarios {min,median,max}, "
                            "{q1,median,q3}, or all five",
    "ORDER_VIOLATION": "reported values violate min <= q1 <= median "
                       "<= q3 <= max",
    "NON_FINITE_VALUE": "a reported value is not a finite number",
    "NOT_A_NUMBER": "a cell could not be parsed as a number",
}
