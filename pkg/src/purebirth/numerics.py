"""Scalar backends shared by every computation.

Three backends are supported:

* ``exact``: :class:`fractions.Fraction` (Python ints are accepted as exact too).
* ``float``: IEEE-754 double precision.
* ``logfloat``: :class:`LogFloat`, a nonnegative number stored as its natural log.

Higher-level code stays generic by building constants with :func:`one` and
:func:`zero` and by never mixing backends.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

BACKENDS = ("exact", "float", "logfloat")

Rational = Fraction


@dataclass(frozen=True, slots=True)
class LogFloat:
    """A nonnegative real stored as ``ln(x)``; ``-inf`` encodes exact zero."""

    log: float

    def __post_init__(self) -> None:
        if math.isnan(self.log) or self.log == math.inf:
            raise ArithmeticError(f"LogFloat log must be finite or -inf, got {self.log}")

    @classmethod
    def from_float(cls, x: float) -> "LogFloat":
        if x < 0 or math.isnan(x):
            raise ValueError(f"LogFloat cannot represent {x}")
        return cls(math.log(x) if x > 0 else -math.inf)

    @classmethod
    def from_rational(cls, x: Fraction | int) -> "LogFloat":
        # math.log accepts arbitrarily large ints, so huge rationals stay representable
        x = Fraction(x)
        if x < 0:
            raise ValueError(f"LogFloat cannot represent {x}")
        if x == 0:
            return cls(-math.inf)
        return cls(math.log(x.numerator) - math.log(x.denominator))

    @property
    def is_zero(self) -> bool:
        return self.log == -math.inf

    def __float__(self) -> float:
        return math.exp(self.log)

    def __add__(self, other: object) -> "LogFloat":
        if not isinstance(other, LogFloat):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        return LogFloat(float(_logaddexp(self.log, other.log)))

    def __sub__(self, other: object) -> "LogFloat":
        raise TypeError("LogFloat supports only nonnegative addition; subtraction is undefined")

    def __mul__(self, other: object) -> "LogFloat":
        if not isinstance(other, LogFloat):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return LogFloat(-math.inf)
        return LogFloat(self.log + other.log)

    def __truediv__(self, other: object) -> "LogFloat":
        if not isinstance(other, LogFloat):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("LogFloat division by zero")
        if self.is_zero:
            return self
        return LogFloat(self.log - other.log)

    def __pow__(self, exponent: int) -> "LogFloat":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent == 0:
            return LogFloat(0.0)
        if self.is_zero:
            if exponent < 0:
                raise ZeroDivisionError("0 ** negative")
            return self
        return LogFloat(self.log * exponent)

    def __lt__(self, other: "LogFloat") -> bool:
        return self.log < other.log

    def __le__(self, other: "LogFloat") -> bool:
        return self.log <= other.log

    def __repr__(self) -> str:
        return f"LogFloat(log={self.log!r})"


def _logaddexp(a: float, b: float) -> float:
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(math.exp(lo - hi))


Scalar = Union[Fraction, int, float, LogFloat]


def backend_of(x: Scalar) -> str:
    if isinstance(x, LogFloat):
        return "logfloat"
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (Fraction, int)):
        return "exact"
    if isinstance(x, float):
        return "float"
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def common_backend(values) -> str:
    """Backend shared by all ``values``; raises on an empty or mixed list."""
    backends = {backend_of(v) for v in values}
    if not backends:
        raise ValueError("empty value list has no backend")
    if len(backends) > 1:
        raise TypeError(f"mixed backends: {sorted(backends)}")
    return backends.pop()


def check_backend(backend: str) -> str:
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    return backend


def one(backend: str) -> Scalar:
    return {"exact": Fraction(1), "float": 1.0, "logfloat": LogFloat(0.0)}[check_backend(backend)]


def zero(backend: str) -> Scalar:
    return {"exact": Fraction(0), "float": 0.0, "logfloat": LogFloat(-math.inf)}[check_backend(backend)]


def convert(x: Scalar | str, backend: str) -> Scalar:
    """Convert ``x`` into ``backend``.

    Floats are never silently converted into the exact backend; strings are parsed
    with :func:`parse_scalar` first.
    """
    check_backend(backend)
    if isinstance(x, str):
        x = parse_scalar(x)
    src = backend_of(x)
    if backend == "exact":
        if src != "exact":
            raise TypeError(f"refusing to convert {src} value {x!r} to exact")
        return Fraction(x)
    if backend == "float":
        if src == "exact":
            return rational_to_float(Fraction(x))
        return float(x)
    if src == "logfloat":
        return x
    if src == "exact":
        return LogFloat.from_rational(x)
    return LogFloat.from_float(x)


_OPS = {"add": operator.add, "sub": operator.sub, "mul": operator.mul, "div": operator.truediv}


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Checked binary arithmetic: same backend, no division by zero, finite floats."""
    if op not in _OPS:
        raise ValueError(f"unknown op {op!r}")
    backend = common_backend((a, b))
    if op == "div" and _is_zero(b):
        raise ZeroDivisionError("division by zero")
    result = _OPS[op](a, b)
    if backend == "exact":
        return Fraction(result)
    if backend == "float" and not math.isfinite(result):
        raise ArithmeticError(f"non-finite float result from {a!r} {op} {b!r}")
    return result


def _is_zero(x: Scalar) -> bool:
    return x.is_zero if isinstance(x, LogFloat) else x == 0


def rational_to_float(r: Fraction | int) -> float:
    """Correctly rounded float value of ``r``; raises OverflowError out of range."""
    # Fraction.__float__ divides the integers with correct rounding (int / int is exact-rounded)
    r = Fraction(r)
    return r.numerator / r.denominator


def to_float(x: Scalar) -> float:
    if isinstance(x, (Fraction, int)):
        return rational_to_float(x)
    return float(x)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"a/b"`` or an integer literal as exact, anything else as float."""
    s = text.strip()
    try:
        return Fraction(int(s))
    except ValueError:
        pass
    if "/" in s:
        num, _, den = s.partition("/")
        try:
            return Fraction(int(num), int(den))
        except ValueError as exc:
            raise ValueError(f"rational literal must be a/b with integers, got {text!r}") from exc
        except ZeroDivisionError as exc:
            raise ValueError(f"zero denominator in {text!r}") from exc
    value = float(s)
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {text!r}")
    return value


def format_scalar(x: Scalar) -> str:
    """Render exact values as ``num/den`` (or ``num``) and floats in shortest round-trip form."""
    if isinstance(x, LogFloat):
        return repr(float(x))
    if isinstance(x, (Fraction, int)):
        return str(Fraction(x))
    return repr(float(x))
