"""Catalog of real characteristic functions of symmetric non-lattice laws.

These are the building blocks for the unit deviances in
:mod:`chardisp.deviance`.  Every member evaluates to a real number, equals
1 at the origin, is even, and is strictly below 1 in modulus away from the
origin.  The catalog is a closed set of five families; new families can be
added through :func:`register_family`.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, fields
from typing import Union

import numpy as np

ArrayLike = Union[float, np.ndarray]

# Arguments are clamped to this magnitude before evaluation so that the
# exponentials underflow cleanly to 0.0 instead of producing NaN.
T_CAP = 1e8


class InvalidSpecError(ValueError):
    """Raised when an operation requires a spec that failed validation."""


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _clamp(t: ArrayLike) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return np.clip(t, -T_CAP, T_CAP)


def _scalar_ok(x: float, positive: bool = True) -> bool:
    return np.isfinite(x) and (x > 0 if positive else True)


class CharFn(ABC):
    """A real, even characteristic function with known moment behaviour."""

    family: str = ""

    @abstractmethod
    def eval(self, t: ArrayLike) -> ArrayLike:
        """Evaluate the characteristic function at ``t`` (scalar or array)."""

    @abstractmethod
    def validate(self) -> ValidationResult:
        """Check that the parameters lie in their admissible domain."""

    @abstractmethod
    def has_finite_second_moment(self) -> bool:
        """True when the underlying law has finite first two moments."""

    def params(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def to_dict(self) -> dict:
        """Serialize as ``{"family": ..., "params": {...}}``."""
        return {"family": self.family, "params": self.params()}

    def require_valid(self) -> "CharFn":
        res = self.validate()
        if not res.ok:
            raise InvalidSpecError(res.message)
        return self

    @staticmethod
    def _finish(out: np.ndarray, t: ArrayLike):
        return float(out) if np.ndim(t) == 0 else out


@dataclass(frozen=True)
class Normal(CharFn):
    """Gaussian law with scale ``sigma``: exp(-sigma^2 t^2 / 2)."""

    scale: float = 1.0
    family = "normal"

    def eval(self, t):
        tt = _clamp(t)
        return self._finish(np.exp(-0.5 * (self.scale * tt) ** 2), t)

    def validate(self):
        if not _scalar_ok(self.scale):
            return ValidationResult(False, f"normal scale must be positive and finite, got {self.scale}")
        return ValidationResult(True)

    def has_finite_second_moment(self):
        return True


@dataclass(frozen=True)
class Cauchy(CharFn):
    """Cauchy law with scale ``gamma``: exp(-gamma |t|).  No finite moments."""

    scale: float = 1.0
    family = "cauchy"

    def eval(self, t):
        tt = _clamp(t)
        return self._finish(np.exp(-self.scale * np.abs(tt)), t)

    def validate(self):
        if not _scalar_ok(self.scale):
            return ValidationResult(False, f"cauchy scale must be positive and finite, got {self.scale}")
        return ValidationResult(True)

    def has_finite_second_moment(self):
        return False


@dataclass(frozen=True)
class Laplace(CharFn):
    """Laplace (double exponential) law with scale ``b``: 1 / (1 + b^2 t^2)."""

    scale: float = 1.0
    family = "laplace"

    def eval(self, t):
        tt = _clamp(t)
        return self._finish(1.0 / (1.0 + (self.scale * tt) ** 2), t)

    def validate(self):
        if not _scalar_ok(self.scale):
            return ValidationResult(False, f"laplace scale must be positive and finite, got {self.scale}")
        return ValidationResult(True)

    def has_finite_second_moment(self):
        return True


@dataclass(frozen=True)
class SymmetricStable(CharFn):
    """Symmetric alpha-stable law: exp(-|c t|^alpha), 0 < alpha <= 2.

    alpha = 2 is the Gaussian boundary; for alpha < 2 the variance is
    infinite, so the second moment is finite only at the boundary.
    """

    alpha: float = 1.5
    scale: float = 1.0
    family = "stable"

    def eval(self, t):
        tt = _clamp(t)
        return self._finish(np.exp(-np.abs(self.scale * tt) ** self.alpha), t)

    def validate(self):
        if not (np.isfinite(self.alpha) and 0.0 < self.alpha <= 2.0):
            return ValidationResult(False, f"stable index alpha must lie in (0, 2], got {self.alpha}")
        if not _scalar_ok(self.scale):
            return ValidationResult(False, f"stable scale must be positive and finite, got {self.scale}")
        return ValidationResult(True)

    def has_finite_second_moment(self):
        return self.alpha == 2.0


@dataclass(frozen=True)
class SymmetricNIG(CharFn):
    """Normal inverse Gaussian law with zero asymmetry.

    Characteristic function exp(delta * (alpha - sqrt(alpha^2 + t^2))).
    All moments are finite.
    """

    alpha: float = 1.0
    delta: float = 1.0
    family = "nig"

    def eval(self, t):
        tt = _clamp(t)
        out = np.exp(self.delta * (self.alpha - np.sqrt(self.alpha ** 2 + tt ** 2)))
        return self._finish(out, t)

    def validate(self):
        if not _scalar_ok(self.alpha):
            return ValidationResult(False, f"nig tail parameter alpha must be positive and finite, got {self.alpha}")
        if not _scalar_ok(self.delta):
            return ValidationResult(False, f"nig scale delta must be positive and finite, got {self.delta}")
        return ValidationResult(True)

    def has_finite_second_moment(self):
        return True


FAMILIES: dict[str, type] = {
    "normal": Normal,
    "cauchy": Cauchy,
    "laplace": Laplace,
    "stable": SymmetricStable,
    "nig": SymmetricNIG,
}


def register_family(cls: type) -> type:
    """Extension point: add a :class:`CharFn` subclass to the catalog."""
    if not (isinstance(cls, type) and issubclass(cls, CharFn)):
        raise TypeError(f"{cls!r} is not a CharFn subclass")
    if not cls.family:
        raise ValueError("family name must be a non-empty string")
    FAMILIES[cls.family] = cls
    return cls


def from_dict(d: dict) -> CharFn:
    """Inverse of :meth:`CharFn.to_dict`."""
    try:
        family = d["family"]
        params = d["params"]
    except (TypeError, KeyError) as exc:
        raise InvalidSpecError(f"characteristic function record needs 'family' and 'params': {d!r}") from exc
    try:
        cls = FAMILIES[family]
    except KeyError:
        raise InvalidSpecError(f"unknown characteristic function family {family!r}") from None
    try:
        return cls(**params)
    except TypeError as exc:
        raise InvalidSpecError(f"bad parameters for family {family!r}: {params!r}") from exc


# Functional aliases mirroring the operation names.
def evaluate(spec: CharFn, t: ArrayLike) -> ArrayLike:
    return spec.eval(t)


def validate(spec: CharFn) -> ValidationResult:
    return spec.validate()


def has_finite_second_moment(spec: CharFn) -> bool:
    return spec.has_finite_second_moment()
