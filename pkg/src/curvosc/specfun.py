"""Special functions for spectra and normalization constants.

Everything in the package funnels its Gamma-function and terminating
hypergeometric needs through this module, so overflow handling lives in
exactly one place (the LogValue carrier).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError

__all__ = [
    "LogValue",
    "log_gamma",
    "hyp2f1_terminating",
    "hyp2f1_terms",
    "hyp1f1_terminating",
    "hyp1f1_terms",
    "log_ratio_product",
]

# Lanczos g=7, 9-term coefficient set; relative error of the reconstructed
# Gamma is a few ulp for positive real arguments.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.9189385332046727417803297


@dataclass(frozen=True)
class LogValue:
    """A real number stored as sign * exp(log_magnitude).

    sign == 0 encodes an exact zero, in which case log_magnitude is
    meaningless and ignored.
    """

    log_magnitude: float
    sign: int

    @staticmethod
    def of(x: float) -> "LogValue":
        if x == 0.0:
            return LogValue(0.0, 0)
        return LogValue(math.log(abs(x)), 1 if x > 0 else -1)

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def __mul__(self, other: "LogValue") -> "LogValue":
        if self.sign == 0 or other.sign == 0:
            return LogValue(0.0, 0)
        return LogValue(self.log_magnitude + other.log_magnitude, self.sign * other.sign)


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0.

    Lanczos approximation (g=7, 9 terms), with the reflection formula below
    x = 1/2. Relative accuracy is well inside 1e-13 across (0, 1e6).
    """
    if not (x > 0.0) or math.isinf(x):
        raise DomainError(f"log_gamma requires finite x > 0, got {x!r}")
    if x < 0.5:
        # ln Gamma(x) = ln(pi / sin(pi x)) - ln Gamma(1 - x)
        return math.log(math.pi / math.sin(math.pi * x)) - _lanczos_log_gamma(1.0 - x)
    return _lanczos_log_gamma(x)


def _lanczos_log_gamma(x: float) -> float:
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def hyp2f1_terms(n: int, b: float, c: float, x: float) -> list[float]:
    """Terms of the terminating series 2F1(-n, b; c; x), exactly n+1 of them.

    term_0 = 1 and term_{k+1} = term_k * (k-n)(b+k) x / ((c+k)(k+1)).
    Exposed separately so callers can inspect cancellation (sum of |terms|
    versus |sum of terms|).
    """
    if n < 0 or n != int(n):
        raise DomainError(f"polynomial degree must be a non-negative integer, got {n!r}")
    terms = [1.0]
    t = 1.0
    for k in range(int(n)):
        denom = c + k
        if denom == 0.0:
            raise DomainError(
                f"2F1 denominator parameter hits a pole: c + k = 0 at k={k} (c={c!r})"
            )
        t *= (k - n) * (b + k) * x / (denom * (k + 1))
        terms.append(t)
    return terms


def hyp2f1_terminating(n: int, b: float, c: float, x: float) -> float:
    """2F1(-n, b; c; x) summed by forward term-ratio recurrence.

    The series terminates after n+1 terms, so there is no truncation error;
    for large n with alternating signs the usual cancellation caveat applies.
    """
    return math.fsum(hyp2f1_terms(n, b, c, x))


def hyp1f1_terms(n: int, c: float, x: float) -> list[float]:
    """Terms of the confluent polynomial 1F1(-n; c; x)."""
    if n < 0 or n != int(n):
        raise DomainError(f"polynomial degree must be a non-negative integer, got {n!r}")
    terms = [1.0]
    t = 1.0
    for k in range(int(n)):
        denom = c + k
        if denom == 0.0:
            raise DomainError(
                f"1F1 denominator parameter hits a pole: c + k = 0 at k={k} (c={c!r})"
            )
        t *= (k - n) * x / (denom * (k + 1))
        terms.append(t)
    return terms


def hyp1f1_terminating(n: int, c: float, x: float) -> float:
    """1F1(-n; c; x), the confluent hypergeometric polynomial."""
    return math.fsum(hyp1f1_terms(n, c, x))


def log_ratio_product(
    numerator_args: Sequence[float] | Iterable[float],
    denominator_args: Sequence[float] | Iterable[float],
) -> LogValue:
    """Product of Gamma(a_i) over product of Gamma(b_j), kept in log space.

    All arguments must be strictly positive, so the sign is always +1.
    """
    acc = 0.0
    for a in numerator_args:
        acc += log_gamma(a)
    for b in denominator_args:
        acc -= log_gamma(b)
    return LogValue(acc, 1)
