"""Exact-rational domain types shared by every other module.

Every quantity that enters the optimization (file size, per-helper rate,
storage levels, unit costs) is a ``fractions.Fraction``, so feasibility
tests and corner-point comparisons never round.  Floats show up only when
results are serialized for CSV/JSON output, via :func:`format_ratio`.
"""
from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction

Ratio = Fraction

RatioLike = Fraction | int | str


def parse_ratio(value: RatioLike) -> Fraction:
    """Parse a decimal string ("3.3") or integer fraction ("33/10") exactly.

    Floats are rejected: a binary float has already lost the decimal value
    the caller meant, and everything downstream assumes exact inputs.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact {type(value).__name__} {value!r}; pass a str, int or Fraction")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot parse {type(value).__name__} as a ratio")


def format_ratio(value: Ratio, significant_digits: int = 12) -> str:
    """Serialize a ratio as a plain decimal string.

    Values with a terminating decimal expansion are emitted exactly, however
    many digits that takes; only non-terminating ones are rounded to
    ``significant_digits``.  This keeps parse/format round-trips lossless for
    decimal inputs.
    """
    num, den = value.numerator, value.denominator
    rest, exp2, exp5 = den, 0, 0
    while rest % 2 == 0:
        rest //= 2
        exp2 += 1
    while rest % 5 == 0:
        rest //= 5
        exp5 += 1
    if rest == 1:
        shift = max(exp2, exp5)
        scaled = num * 10**shift // den
        return _place_point(scaled, shift)
    with decimal.localcontext() as ctx:
        ctx.prec = significant_digits
        approx = decimal.Decimal(num) / decimal.Decimal(den)
    return format(approx.normalize(), "f")


def _place_point(scaled: int, shift: int) -> str:
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(shift + 1, "0")
    if shift == 0:
        return sign + digits
    whole, frac = digits[:-shift], digits[-shift:]
    frac = frac.rstrip("0")
    return sign + (whole + "." + frac if frac else whole)


@dataclass(frozen=True)
class SystemParams:
    """One problem instance: node counts, degrees, file size, rate and costs.

    Nodes 1..n1 are type 1 (unit cost ``c1``), nodes n1+1..n1+n2 are type 2
    (unit cost ``c2``).  A collector reads any ``k`` nodes; a repair downloads
    ``beta`` units from each of ``d`` helpers.
    """

    n1: int
    n2: int
    k: int
    d: int
    file_size: Ratio
    beta: Ratio
    c1: Ratio = Fraction(1)
    c2: Ratio = Fraction(1)

    def __post_init__(self) -> None:
        for name in ("file_size", "beta", "c1", "c2"):
            object.__setattr__(self, name, parse_ratio(getattr(self, name)))

    @property
    def n(self) -> int:
        return self.n1 + self.n2


@dataclass(frozen=True)
class Allocation:
    """A candidate storage point: units per type-1 node and per type-2 node."""

    alpha1: Ratio
    alpha2: Ratio

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha1", parse_ratio(self.alpha1))
        object.__setattr__(self, "alpha2", parse_ratio(self.alpha2))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(params: SystemParams) -> ValidationReport:
    """Check the structural invariants of a parameter set.

    Returns a report rather than raising, so callers can surface every
    violated condition at once.  All other modules assume a validated input.
    """
    bad: list[str] = []
    for name in ("n1", "n2", "k", "d"):
        value = getattr(params, name)
        if isinstance(value, bool) or not isinstance(value, int):
            bad.append(f"{name} must be an integer, got {value!r}")
    if bad:
        return ValidationReport(tuple(bad))
    if params.n1 < 0:
        bad.append(f"n1 must be >= 0, got {params.n1}")
    if params.n2 < 0:
        bad.append(f"n2 must be >= 0, got {params.n2}")
    if params.n < 1:
        bad.append("need at least one storage node (n1 + n2 >= 1)")
    if not 1 <= params.k <= params.n:
        bad.append(f"k must satisfy 1 <= k <= n, got k={params.k}, n={params.n}")
    if not params.k <= params.d <= params.n - 1:
        bad.append(
            f"d must satisfy k <= d <= n - 1 (d helpers must survive one failure), "
            f"got k={params.k}, d={params.d}, n={params.n}"
        )
    if params.file_size <= 0:
        bad.append(f"file_size must be positive, got {params.file_size}")
    if params.beta < 0:
        bad.append(f"beta must be non-negative, got {params.beta}")
    if params.c1 <= 0:
        bad.append(f"c1 must be positive, got {params.c1}")
    if params.c2 <= 0:
        bad.append(f"c2 must be positive, got {params.c2}")
    return ValidationReport(tuple(bad))


def storage_cost(params: SystemParams, alloc: Allocation) -> Ratio:
    """Total cost of an allocation: c1*n1*alpha1 + c2*n2*alpha2, exactly."""
    return params.c1 * params.n1 * alloc.alpha1 + params.c2 * params.n2 * alloc.alpha2
