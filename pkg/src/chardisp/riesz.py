"""Numerical probes of kernel-translate systems on the window.

The translates K(. - mu) of a kernel span a subspace whose finite sections
can be examined exactly: the Gram matrix of n translates gives, through its
extreme eigenvalues, the best possible frame constants for that finite
system.  Two claims about the infinite system are treated here as
hypotheses under measurement rather than facts:

* tightness of the frame bounds, probed through ``tight_claim_gap`` (the
  largest off-diagonal inner product, which would vanish if distinct
  translates were orthogonal; for strictly positive kernels it cannot);
* orthogonality of even perturbations to every translate, probed through
  the inner products f against K(mu - .), reported as residual curves.

Inner products of translates depend only on the displacement between the
translation points, so each Gram entry is computed in the displaced
coordinate over the window.  That makes the diagonal exactly equal to the
squared kernel norm, at the price of working with the window attached to
the relative coordinate rather than to a fixed absolute frame.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import NamedTuple

import numpy as np

from .normalizer import KernelSpec, Perturbation, Window
from .quadrature import DEFAULT_TOL, integrate


def rational_enumeration(n: int) -> list[float]:
    """First n terms of a fixed enumeration of the rationals.

    Zero first, then each positive rational in Calkin-Wilf order followed
    immediately by its negative: 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3,
    3/2, -3/2, ...  Deterministic and duplicate-free.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out = [0.0]
    q = Fraction(1)
    while len(out) < n:
        out.append(float(q))
        if len(out) < n:
            out.append(float(-q))
        q = 1 / (2 * floor(q) - q + 1)
    return out[:n]


@dataclass(frozen=True)
class TranslateSystem:
    """Finitely many kernel translates K(. - p) over a common window.

    Translation points must be pairwise distinct and stay in the middle
    half of the window so the translated kernels keep their mass away from
    the truncation edges.
    """

    kernel: KernelSpec
    points: tuple[float, ...]
    window: Window

    def __post_init__(self):
        pts = tuple(float(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise ValueError("translation points must be pairwise distinct")
        lo, hi = self.window.middle_half()
        outside = [p for p in pts if not lo <= p <= hi]
        if outside:
            raise ValueError(
                f"translation points {outside} lie outside the window's middle half [{lo}, {hi}]"
            )


@dataclass(frozen=True, eq=False)
class GramReport:
    """Gram matrix of a translate system with its eigenvalue range.

    ``tight_claim_gap`` is the largest off-diagonal magnitude: the distance
    of the finite system from an exactly orthogonal (tight) one.
    """

    gram: np.ndarray = field(repr=False)
    min_eigenvalue: float = 0.0
    max_eigenvalue: float = 0.0
    k_norm_sq: float = 0.0
    tight_claim_gap: float = 0.0

    def to_dict(self) -> dict:
        return {
            "gram": self.gram.tolist(),
            "min_eigenvalue": self.min_eigenvalue,
            "max_eigenvalue": self.max_eigenvalue,
            "k_norm_sq": self.k_norm_sq,
            "tight_claim_gap": self.tight_claim_gap,
        }


def gram_matrix(sys: TranslateSystem, tol: float = DEFAULT_TOL) -> GramReport:
    """Pairwise inner products of the translates, one quadrature per distinct
    displacement.

    Entry (i, j) is the integral over the window of K(u) K(u - (p_i - p_j)),
    the inner product of the two translates written in the coordinate of
    the first one.  Entries with equal displacement (the whole diagonal in
    particular) share a single computed value, so the matrix is symmetric
    exactly as stored and the diagonal is constant by construction.
    """
    k = sys.kernel
    w = sys.window
    pts = sys.points
    n = len(pts)

    cache: dict[float, float] = {}

    def inner(delta: float) -> float:
        delta = abs(delta)  # K is even, so the overlap depends on |delta|
        if delta not in cache:
            res = integrate(
                lambda u: np.asarray(k.eval(u)) * np.asarray(k.eval(u - delta)),
                w.lo,
                w.hi,
                tol=tol,
                breakpoints=(0.0, delta),
            )
            cache[delta] = res.require()
        return cache[delta]

    gram = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            gram[i, j] = gram[j, i] = inner(pts[i] - pts[j])

    eigs = np.linalg.eigvalsh(gram)
    off_gap = 0.0
    if n > 1:
        off = np.abs(gram[~np.eye(n, dtype=bool)])
        off_gap = float(off.max())
    return GramReport(
        gram=gram,
        min_eigenvalue=float(eigs[0]),
        max_eigenvalue=float(eigs[-1]),
        k_norm_sq=inner(0.0),
        tight_claim_gap=off_gap,
    )


class FrameBounds(NamedTuple):
    lower: float
    upper: float


def frame_bounds_estimate(report: GramReport) -> FrameBounds:
    """Best Riesz constants of the finite system: the extreme Gram eigenvalues.

    Divide by ``report.k_norm_sq`` to compare against the claimed tight
    constant (both ratios equal 1 only for an exactly orthogonal system).
    """
    return FrameBounds(report.min_eigenvalue, report.max_eigenvalue)


def orthogonality_residual(
    f: Perturbation,
    k: KernelSpec,
    mu_grid,
    tol: float = DEFAULT_TOL,
    window: Window | None = None,
) -> np.ndarray:
    """Inner products rho(mu) of the perturbation against each translate.

    rho(mu) = integral over the window of f(y) K(mu - y) dy.  These are the
    quantities whose vanishing would make the perturbation orthogonal to
    the translate span; they are emitted as measurements and never asserted
    to be zero.  For nonnegative even f and a strictly positive kernel they
    are strictly positive.
    """
    w = window if window is not None else Window()
    mu_grid = np.atleast_1d(np.asarray(mu_grid, dtype=float))
    if not w.contains(mu_grid):
        raise ValueError("mu grid must lie inside the window")
    out = np.empty(mu_grid.shape)
    for i, mu in enumerate(mu_grid):
        res = integrate(
            lambda y: np.asarray(f.eval(y)) * np.asarray(k.eval(mu - y)),
            w.lo,
            w.hi,
            tol=tol,
            breakpoints=(0.0, mu),
        )
        out[i] = res.require()
    return out
