"""Kernels, normalizing functions, and the integral equation they solve.

A dispersion-model density needs a factor ``a(y)`` such that

    integral over the support of  a(y) * K(mu - y) dy  =  1   for all mu,

where ``K(y) = exp(-lambda * d(y; 0))`` is the kernel induced by a unit
deviance.  Because ``K`` tends to 1 at infinity (the characteristic
functions decay to zero), the full-line integral of ``K`` diverges; every
computation here therefore lives on a finite window and the mu-dependence
that the truncation introduces is measured and reported, never hidden.

On the window the equation has a constant solution ``a ~ 1/integral(K)``,
and adding a perturbation to that constant yields non-constant normalizing
functions whose residuals the rest of the package quantifies.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .deviance import UnitDeviancePair
from .quadrature import DEFAULT_TOL, integrate

ArrayLike = Union[float, np.ndarray]

DEFAULT_WINDOW = (-20.0, 20.0)
POSITIVITY_OVERSAMPLE = 4


class PositivityError(ValueError):
    """A perturbed normalizing function dips to zero or below on the window."""

    def __init__(self, y: float, value: float):
        self.y = y
        self.value = value
        super().__init__(f"normalizing function is not positive: value {value!r} at y={y!r}")


@dataclass(frozen=True)
class Window:
    """Truncated support [lo, hi] with a uniform grid size for discrete ops."""

    lo: float = DEFAULT_WINDOW[0]
    hi: float = DEFAULT_WINDOW[1]
    n_grid: int = 1024

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi) and self.hi > self.lo):
            raise ValueError(f"window needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.n_grid < 16:
            raise ValueError(f"n_grid must be at least 16, got {self.n_grid}")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def grid(self, oversample: int = 1) -> np.ndarray:
        """Inclusive uniform grid with oversample * n_grid intervals."""
        return np.linspace(self.lo, self.hi, oversample * self.n_grid + 1)

    def periodic_grid(self) -> np.ndarray:
        """n_grid equispaced points, right endpoint excluded (circular)."""
        dy = self.width / self.n_grid
        return self.lo + dy * np.arange(self.n_grid)

    def middle_half(self) -> tuple[float, float]:
        q = 0.25 * self.width
        return (self.lo + q, self.hi - q)

    def contains(self, y: ArrayLike) -> bool:
        y = np.asarray(y, dtype=float)
        return bool(np.all((y >= self.lo) & (y <= self.hi)))


@dataclass(frozen=True)
class KernelSpec:
    """Kernel K(y) = exp(-lam * d(y; 0)) for a deviance pair and index lam.

    ``lam = 0`` is admitted as the flat-kernel boundary (K identically 1);
    dispersion models proper use lam > 0.
    """

    pair: UnitDeviancePair
    lam: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.lam) and self.lam >= 0.0):
            raise ValueError(f"index parameter lam must be >= 0, got {self.lam}")

    def eval(self, y: ArrayLike) -> ArrayLike:
        out = np.exp(-self.lam * np.asarray(self.pair.deviance(y, 0.0), dtype=float))
        return float(out) if np.ndim(y) == 0 else out

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Abscissae where the kernel may have a corner (the deviance zero)."""
        return (0.0,)


def kernel_eval(k: KernelSpec, y: ArrayLike) -> ArrayLike:
    return k.eval(y)


def kernel_integral(k: KernelSpec, w: Window, tol: float = DEFAULT_TOL) -> float:
    """Adaptive quadrature of K over the window, absolute tolerance tol.

    Raises :class:`QuadratureError` (carrying the best estimate and its
    error bound) if the subdivision budget is exhausted first.
    """
    res = integrate(k.eval, w.lo, w.hi, tol=tol, breakpoints=k.breakpoints)
    return res.require()


# ---------------------------------------------------------------------------
# Perturbations of the constant normalizer
# ---------------------------------------------------------------------------

class Perturbation(ABC):
    """Square-integrable perturbation added to the constant normalizer.

    Even members (symmetric about zero) form the class from which
    non-constant normalizing functions are drawn; odd members are kept in
    the catalog as controls and flagged as outside that class.
    """

    family: str = ""

    @abstractmethod
    def eval(self, y: ArrayLike) -> ArrayLike: ...

    @property
    @abstractmethod
    def even(self) -> bool:
        """True when f(y) = f(-y) for all y."""

    def is_zero(self) -> bool:
        return isinstance(self, Zero)

    def to_dict(self) -> dict:
        return {"family": self.family, "params": {}}


@dataclass(frozen=True)
class Zero(Perturbation):
    """The trivial perturbation, identically zero."""

    family = "zero"

    def eval(self, y):
        out = np.zeros_like(np.asarray(y, dtype=float))
        return float(out) if np.ndim(y) == 0 else out

    @property
    def even(self):
        return True


@dataclass(frozen=True)
class CosineGaussian(Perturbation):
    """f(y) = A (cos(omega y) + 1) exp(-y^2 / (2 s^2)); even, nonnegative for A > 0."""

    amplitude: float = 1.0
    frequency: float = 3.0
    width: float = np.sqrt(5.0)
    family = "cosgauss"

    def eval(self, y):
        yy = np.asarray(y, dtype=float)
        out = self.amplitude * (np.cos(self.frequency * yy) + 1.0) * np.exp(
            -yy ** 2 / (2.0 * self.width ** 2)
        )
        return float(out) if np.ndim(y) == 0 else out

    @property
    def even(self):
        return True

    def to_dict(self):
        return {
            "family": self.family,
            "params": {"amplitude": self.amplitude, "frequency": self.frequency, "width": self.width},
        }


@dataclass(frozen=True)
class OddGaussian(Perturbation):
    """f(y) = A y exp(-y^2 / (2 s^2)); odd, hence outside the even class."""

    amplitude: float = 1.0
    width: float = 1.0
    family = "oddgauss"

    def eval(self, y):
        yy = np.asarray(y, dtype=float)
        out = self.amplitude * yy * np.exp(-yy ** 2 / (2.0 * self.width ** 2))
        return float(out) if np.ndim(y) == 0 else out

    @property
    def even(self):
        return False

    def to_dict(self):
        return {"family": self.family, "params": {"amplitude": self.amplitude, "width": self.width}}


@dataclass(frozen=True)
class TabulatedEven(Perturbation):
    """Even perturbation given by a table on y >= 0, linearly interpolated.

    Evaluation reflects through the origin, so symmetry holds by
    construction; the function is zero beyond the last knot.
    """

    knots: tuple[float, ...]
    values: tuple[float, ...]
    family = "custom"

    def __post_init__(self):
        k = np.asarray(self.knots, dtype=float)
        if k.size < 2 or np.any(k < 0) or np.any(np.diff(k) <= 0):
            raise ValueError("knots must be >= 0, strictly increasing, with at least two entries")
        if len(self.values) != k.size:
            raise ValueError("knots and values must have equal length")

    def eval(self, y):
        yy = np.abs(np.asarray(y, dtype=float))
        out = np.interp(yy, self.knots, self.values, right=0.0)
        return float(out) if np.ndim(y) == 0 else out

    @property
    def even(self):
        return True

    def to_dict(self):
        return {"family": self.family, "params": {"knots": list(self.knots), "values": list(self.values)}}


PERTURBATION_FAMILIES: dict[str, type] = {
    "zero": Zero,
    "cosgauss": CosineGaussian,
    "oddgauss": OddGaussian,
    "custom": TabulatedEven,
}


def perturbation_from_dict(d: dict) -> Perturbation:
    from .charfn import InvalidSpecError

    try:
        cls = PERTURBATION_FAMILIES[d["family"]]
    except (TypeError, KeyError):
        raise InvalidSpecError(f"unknown perturbation record {d!r}") from None
    params = dict(d.get("params", {}))
    for key in ("knots", "values"):
        if key in params:
            params[key] = tuple(params[key])
    try:
        return cls(**params)
    except TypeError as exc:
        raise InvalidSpecError(f"bad perturbation parameters {params!r}") from exc


# ---------------------------------------------------------------------------
# Normalizing functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalizerSpec:
    """Normalizing function on a window: a constant, optionally perturbed.

    ``perturbation is None`` marks the trivial (constant) solution; a
    :class:`Zero` instance is a perturbed spec that happens to add nothing.
    """

    a_tilde: float
    window: Window
    perturbation: Optional[Perturbation] = None

    def __post_init__(self):
        if not (np.isfinite(self.a_tilde) and self.a_tilde > 0.0):
            raise ValueError(f"constant part a_tilde must be positive, got {self.a_tilde}")

    @property
    def kind(self) -> str:
        return "trivial" if self.perturbation is None else "perturbed"

    def value(self, y: ArrayLike) -> ArrayLike:
        if self.perturbation is None:
            out = np.full_like(np.asarray(y, dtype=float), self.a_tilde)
            return float(out) if np.ndim(y) == 0 else out
        return self.a_tilde + self.perturbation.eval(y)

    def is_constant(self) -> bool:
        return self.perturbation is None or self.perturbation.is_zero()

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "a_tilde": self.a_tilde,
            "window": {"lo": self.window.lo, "hi": self.window.hi, "n_grid": self.window.n_grid},
        }
        if self.perturbation is not None:
            d["perturbation"] = self.perturbation.to_dict()
        return d


def trivial_normalizer(k: KernelSpec, w: Window, tol: float = DEFAULT_TOL) -> NormalizerSpec:
    """Constant solution of the window-restricted integral equation."""
    return NormalizerSpec(a_tilde=1.0 / kernel_integral(k, w, tol), window=w)


def perturbed_normalizer(base: NormalizerSpec, f: Perturbation) -> NormalizerSpec:
    """Attach a perturbation to a trivial normalizer, enforcing positivity.

    The sum a_tilde + f is checked on a grid oversampled by
    ``POSITIVITY_OVERSAMPLE``; the first offending abscissa is raised in
    :class:`PositivityError`.
    """
    if base.kind != "trivial":
        raise ValueError("base normalizer must be trivial (constant)")
    ys = base.window.grid(POSITIVITY_OVERSAMPLE)
    vals = base.a_tilde + np.asarray(f.eval(ys), dtype=float)
    bad = vals <= 0.0
    if bad.any():
        i = int(np.argmin(vals))
        raise PositivityError(float(ys[i]), float(vals[i]))
    return NormalizerSpec(a_tilde=base.a_tilde, window=base.window, perturbation=f)


def convolution_residual(
    norm: NormalizerSpec,
    k: KernelSpec,
    mu_grid,
    tol: float = 1e-8,
) -> np.ndarray:
    """Residual r(mu) = integral over the window of a(y) K(mu - y) dy - 1.

    A measurement, not an assertion: truncation makes the residual drift
    away from zero near the window edges, and non-orthogonal perturbations
    shift it everywhere.
    """
    mu_grid = np.atleast_1d(np.asarray(mu_grid, dtype=float))
    if not norm.window.contains(mu_grid):
        raise ValueError("mu grid must lie inside the window")
    w = norm.window
    out = np.empty(mu_grid.shape)
    for i, mu in enumerate(mu_grid):
        res = integrate(
            lambda y: np.asarray(norm.value(y)) * np.asarray(k.eval(mu - y)),
            w.lo,
            w.hi,
            tol=tol,
            breakpoints=(mu, 0.0),
        )
        out[i] = res.require() - 1.0
    return out


# ---------------------------------------------------------------------------
# Discrete deconvolution on the window grid
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DeconvolutionReport:
    """Solution of the periodized discrete convolution equation a * K = 1.

    The right-hand side is constant, so its transform is supported at
    frequency zero only and the discrete solution must be the constant
    1 / (dy * sum K).  ``nonconstancy`` (max - min of the solution) and the
    DC value let callers confirm that against the quadrature normalizer.
    ``n_guarded`` counts kernel transform bins too close to zero to divide
    by; the right-hand side is zero there, so the solution is unaffected.
    """

    ys: np.ndarray = field(repr=False)
    solution: np.ndarray = field(repr=False)
    dc_value: float = 0.0
    nonconstancy: float = 0.0
    n_guarded: int = 0

    def to_dict(self) -> dict:
        return {
            "dc_value": self.dc_value,
            "nonconstancy": self.nonconstancy,
            "n_guarded": self.n_guarded,
            "n_grid": int(self.solution.size),
        }


def fft_deconvolve_check(k: KernelSpec, w: Window) -> DeconvolutionReport:
    """Solve dy * (a circ-conv K) = 1 on the window grid by discrete Fourier
    transform and report how constant the solution is.

    Requires ``w.n_grid`` to be a power of two.  Kernel transform bins with
    magnitude below 1e-12 of the DC bin are guarded (set to zero in the
    quotient) and counted.
    """
    n = w.n_grid
    if n & (n - 1) != 0:
        raise ValueError(f"n_grid must be a power of two, got {n}")
    dy = w.width / n
    # Kernel sampled at signed circular displacements j*dy, j = -n/2..n/2-1.
    j = np.arange(n)
    disp = np.where(j <= n // 2, j, j - n) * dy
    kv = np.asarray(k.eval(disp), dtype=float)

    khat = np.fft.fft(kv)
    bhat = np.fft.fft(np.ones(n))
    guard = np.abs(khat) < 1e-12 * np.abs(khat[0])
    denom = np.where(guard, 1.0, dy * khat)
    ahat = np.where(guard, 0.0, bhat / denom)
    a = np.fft.ifft(ahat).real

    return DeconvolutionReport(
        ys=w.periodic_grid(),
        solution=a,
        dc_value=float(ahat[0].real / n),
        nonconstancy=float(a.max() - a.min()),
        n_guarded=int(guard.sum()),
    )
