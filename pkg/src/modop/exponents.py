"""Lebesgue exponents stored by reciprocal.

An exponent p in [1, inf] is represented by u = 1/p in [0, 1], with
u = 0 standing for p = inf.  The reciprocal scale makes the two
operations this package needs exact and total: the conjugate exponent
is 1 - u, and the geometry of embedding regions lives naturally on the
unit square of (1/p, 1/q) pairs.
"""

import math
from dataclasses import dataclass

from .errors import UnsupportedExponent


@dataclass(frozen=True)
class ExponentValue:
    """A Lebesgue exponent in [1, inf], held as its reciprocal.

    Attributes
    ----------
    u : float
        Reciprocal 1/p, in [0, 1].  u = 0 encodes p = inf, u = 1
        encodes p = 1.
    """

    u: float

    def __post_init__(self):
        if not (isinstance(self.u, (int, float)) and math.isfinite(self.u)):
            raise UnsupportedExponent(f"reciprocal exponent must be finite, got {self.u!r}")
        if not 0.0 <= self.u <= 1.0:
            raise UnsupportedExponent(f"reciprocal exponent {self.u} outside [0, 1]")
        object.__setattr__(self, "u", float(self.u))

    @classmethod
    def from_p(cls, p):
        """Build from the exponent itself; accepts numbers, 'inf', or 'a/b' strings."""
        if isinstance(p, ExponentValue):
            return p
        if isinstance(p, str):
            text = p.strip().lower()
            if text in ("inf", "infinity", "oo"):
                return cls(0.0)
            if "/" in text:
                num, _, den = text.partition("/")
                try:
                    value = float(num) / float(den)
                except (ValueError, ZeroDivisionError) as exc:
                    raise UnsupportedExponent(f"cannot parse exponent {p!r}") from exc
                return cls.from_p(value)
            try:
                return cls.from_p(float(text))
            except ValueError as exc:
                raise UnsupportedExponent(f"cannot parse exponent {p!r}") from exc
        if math.isinf(p):
            return cls(0.0)
        if not p >= 1.0:
            raise UnsupportedExponent(f"exponent must satisfy p >= 1, got {p}")
        return cls(1.0 / float(p))

    @property
    def p(self):
        """The exponent as a float, math.inf when u = 0."""
        return math.inf if self.u == 0.0 else 1.0 / self.u

    @property
    def conjugate(self):
        """The Holder conjugate, exact on the reciprocal scale."""
        return ExponentValue(1.0 - self.u)

    @property
    def is_infinite(self):
        return self.u == 0.0

    def __str__(self):
        if self.u == 0.0:
            return "inf"
        p = self.p
        return f"{p:g}" if float(p).is_integer() else f"{p!r}"


def power_mean(magnitudes, exponent, cell_measure, axis=None):
    """Discrete L^p norm of ``magnitudes`` with quadrature weight ``cell_measure``.

    For finite p this is (cell_measure * sum |a|^p)^(1/p); for p = inf
    it is the maximum.  ``axis`` behaves as in numpy reductions.
    """
    e = ExponentValue.from_p(exponent)
    if e.is_infinite:
        return magnitudes.max(axis=axis)
    p = e.p
    return (cell_measure * (magnitudes**p).sum(axis=axis)) ** e.u


def from_p(p):
    """Coerce to ExponentValue; see ExponentValue.from_p."""
    return ExponentValue.from_p(p)
