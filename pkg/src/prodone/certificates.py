"""Certificates that qualify every computed value's completeness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable


@dataclass(frozen=True)
class Exact:
    """The value is exactly right, with no bound in play."""

    def to_json(self) -> dict:
        return {"kind": "exact"}


@dataclass(frozen=True)
class CompleteUpToLength:
    """Every object of length <= bound is included; longer ones may exist."""

    bound: int

    def to_json(self) -> dict:
        return {"kind": "complete-up-to-length", "bound": self.bound}


@dataclass(frozen=True)
class ExactWithinBound:
    """Exact provided the true value is governed by searches within bound."""

    bound: int

    def to_json(self) -> dict:
        return {"kind": "exact-within-bound", "bound": self.bound}


@dataclass(frozen=True)
class LowerBound:
    """Only a lower bound: the search hit its budget while still growing."""

    bound: int

    def to_json(self) -> dict:
        return {"kind": "lower-bound", "bound": self.bound}


Certificate = Exact | CompleteUpToLength | ExactWithinBound | LowerBound


@dataclass(frozen=True)
class TaggedValue:
    """A number together with the certificate that qualifies it."""

    value: int
    certificate: Certificate

    def is_exact(self) -> bool:
        return isinstance(self.certificate, Exact)

    def to_json(self) -> dict:
        return {"value": self.value, "certificate": self.certificate.to_json()}


@dataclass(frozen=True)
class WitnessFamily:
    """An indexed family of sequences witnessing an unbounded quantity."""

    description: str
    make: Callable[[int], object]

    def to_json(self) -> dict:
        return {"family": self.description}
