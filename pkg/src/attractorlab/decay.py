"""Parametric decreasing decay laws used as target envelopes for set attraction.

Three families are supported, each strictly decreasing to 0 on its domain:

    exponential      C * exp(-beta * (t - shift))        domain t > shift (any t)
    polynomial       C * (t - shift)**(-beta)            domain t > shift
    log_polynomial   C * log(t - shift)**(-beta)         domain t - shift > 1

``shift`` defaults to 0 and moves the time origin; it is how a law calibrated
on one clock is replayed against a delayed one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["DecayLaw", "decay_eval", "DECAY_KINDS"]

DECAY_KINDS = ("exponential", "polynomial", "log_polynomial")


@dataclass(frozen=True)
class DecayLaw:
    kind: str
    amplitude: float
    rate: float
    shift: float = 0.0

    def __post_init__(self):
        if self.kind not in DECAY_KINDS:
            raise ValueError(f"unknown decay kind {self.kind!r}, expected one of {DECAY_KINDS}")
        if not (self.amplitude > 0 and math.isfinite(self.amplitude)):
            raise ValueError("amplitude must be a positive finite number")
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise ValueError("rate must be a positive finite number")
        if not (self.shift >= 0 and math.isfinite(self.shift)):
            raise ValueError("shift must be a nonnegative finite number")

    def eval(self, t: float) -> float:
        s = t - self.shift
        if self.kind == "exponential":
            return self.amplitude * math.exp(-self.rate * s)
        if self.kind == "polynomial":
            if s <= 0:
                raise ValueError(f"polynomial law needs t > {self.shift}, got t = {t}")
            return self.amplitude * s ** (-self.rate)
        if s <= 1:
            raise ValueError(f"log_polynomial law needs t > {self.shift + 1}, got t = {t}")
        return self.amplitude * math.log(s) ** (-self.rate)

    def invert(self, value: float) -> float:
        """Time at which the law reaches ``value`` (laws are strictly decreasing)."""
        if not (0 < value and math.isfinite(value)):
            raise ValueError("can only invert at a positive finite value")
        ratio = self.amplitude / value
        if self.kind == "exponential":
            return self.shift + math.log(ratio) / self.rate
        if self.kind == "polynomial":
            return self.shift + ratio ** (1.0 / self.rate)
        return self.shift + math.exp(ratio ** (1.0 / self.rate))

    def with_shift(self, shift: float) -> "DecayLaw":
        return DecayLaw(self.kind, self.amplitude, self.rate, shift)


def decay_eval(law: DecayLaw, t: float) -> float:
    """Functional form of ``DecayLaw.eval``."""
    return law.eval(t)
