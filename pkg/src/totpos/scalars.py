"""Scalar domains: exact rationals and floats under an explicit tolerance policy.

Every public operation in the library runs on one of two backends.  The exact
backend uses ``int``/``fractions.Fraction`` entries and decides signs exactly;
the float backend decides signs against a :class:`TolerancePolicy`, whose zero
band turns "is this minor positive?" into a three-way question.  Callers that
need a boolean collapse the indeterminate band pessimistically and emit a
:class:`totpos.errors.StrictnessWarning`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InputError, StrictnessWarning

Scalar = Union[int, Fraction, float]


def is_exact_scalar(x: object) -> bool:
    """True for int/Fraction (bool excluded), false for float and anything else."""
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class TolerancePolicy:
    """Absolute/relative zero thresholds for float-backend sign decisions."""

    eps_abs: float = 1e-9
    eps_rel: float = 1e-9

    def __post_init__(self) -> None:
        if not (self.eps_abs > 0.0 and self.eps_rel > 0.0):
            raise InputError("tolerance policy requires positive eps_abs and eps_rel")

    def zero_threshold(self, scale: float = 1.0) -> float:
        return self.eps_abs + self.eps_rel * abs(scale)

    def is_zero(self, x: float, scale: float = 1.0) -> bool:
        return abs(x) <= self.zero_threshold(scale)


DEFAULT_POLICY = TolerancePolicy()


def sign_of(x: Scalar, policy: TolerancePolicy | None = None, scale: float = 1.0) -> int:
    """Sign in {-1, 0, +1}; floats inside the policy's zero band flatten to 0."""
    if is_exact_scalar(x):
        return (x > 0) - (x < 0)
    p = policy or DEFAULT_POLICY
    if p.is_zero(float(x), scale):
        return 0
    return 1 if x > 0 else -1


def strict_sign_of(
    x: Scalar,
    policy: TolerancePolicy | None = None,
    scale: float = 1.0,
    context: str = "value",
) -> int:
    """Like :func:`sign_of` but warns when a float lands in the zero band.

    The indeterminate band still maps to 0; the warning lets callers notice
    that a strict positivity verdict was decided by tolerance, not by data.
    """
    if is_exact_scalar(x):
        return (x > 0) - (x < 0)
    p = policy or DEFAULT_POLICY
    if p.is_zero(float(x), scale):
        if x != 0.0:
            warnings.warn(
                f"{context} = {x!r} lies inside the zero band "
                f"(threshold {p.zero_threshold(scale):.3e}); treating as zero",
                StrictnessWarning,
                stacklevel=2,
            )
        return 0
    return 1 if x > 0 else -1


def parse_scalar(text: str, exact: bool = True) -> Scalar:
    """Parse ``int``, ``p/q`` or decimal notation.

    The exact backend maps decimals to the rational they denote, so "0.25"
    becomes 1/4 with no binary rounding.
    """
    s = text.strip()
    if not s:
        raise InputError("empty scalar")
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse scalar {text!r}") from exc
    if exact:
        return value
    return float(value)


def format_scalar(x: Scalar) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def as_fraction(x: Scalar) -> Fraction:
    """Exact conversion; floats convert via their binary expansion."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)
