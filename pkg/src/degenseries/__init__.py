"""Exact computation of degenerate special numbers and polynomials, with identity checks."""

__version__ = "0.1.0"

from .errors import DegenerateError, DomainError, UsageError  # noqa: E402
from .exact import (  # noqa: E402
    LambdaPoly,
    TruncatedSeries,
    format_lambda_poly,
    parse_rational,
    series_compose,
    series_div,
    series_mul,
    series_pow,
)

__all__ = [
    "DegenerateError",
    "DomainError",
    "LambdaPoly",
    "TruncatedSeries",
    "UsageError",
    "format_lambda_poly",
    "parse_rational",
    "series_compose",
    "series_div",
    "series_mul",
    "series_pow",
]
