"""Walk through the characteristic-function catalog and the unit deviances
it generates.

Each catalog member is a real, even characteristic function that equals 1
only at the origin.  Pairing two of them gives a discrepancy measure

    d(y; mu) = (1 - phi(y - mu)) * |psi(y - mu)|

that vanishes exactly on the diagonal and is positive elsewhere.  This
script evaluates the catalog, checks the deviance axioms on a grid, and
shows how the finite-difference probe separates smooth pairs from pairs
with a corner on the diagonal.
"""
import numpy as np

from chardisp import (
    Cauchy,
    Laplace,
    Normal,
    SymmetricNIG,
    SymmetricStable,
    UnitDeviancePair,
    check_unit_deviance,
    regularity_probe,
)

# --- the catalog ----------------------------------------------------------

members = {
    "normal(1)": Normal(1.0),
    "cauchy(1)": Cauchy(1.0),
    "laplace(1)": Laplace(1.0),
    "stable(1.5,1)": SymmetricStable(1.5, 1.0),
    "nig(1,1)": SymmetricNIG(1.0, 1.0),
}

print("catalog values at t = 0, 1, 2:")
for name, spec in members.items():
    vals = ", ".join(f"{spec.eval(t):.6f}" for t in (0.0, 1.0, 2.0))
    print(f"  {name:>14}: {vals}   finite 2nd moment: {spec.has_finite_second_moment()}")

# --- deviance axioms on a grid -------------------------------------------

pairs = {
    "normal/normal": UnitDeviancePair(Normal(1.0), Normal(1.0)),
    "cauchy/normal": UnitDeviancePair(Cauchy(1.0), Normal(1.0)),
    "laplace/laplace": UnitDeviancePair(Laplace(1.0), Laplace(1.0)),
}

grid = np.linspace(-5.0, 5.0, 101)
print("\naxiom check on the 101 x 101 grid over [-5, 5]^2:")
for name, pair in pairs.items():
    rep = check_unit_deviance(pair, grid, grid)
    print(
        f"  {name:>16}: passed={rep.passed}  max|diag|={rep.max_abs_diagonal:.2e}"
        f"  min offdiag={rep.min_off_diagonal:.3e}"
    )

# --- the deviance profile has a maximum of 1/4 for the normal pair -------

nn = pairs["normal/normal"]
ts = np.linspace(0.0, 5.0, 100_001)
prof = nn.deviance(ts, 0.0)
print(f"\nnormal/normal deviance peaks at t={ts[np.argmax(prof)]:.4f} "
      f"with value {prof.max():.6f} (analytically 1/4 at sqrt(2 ln 2))")

# --- regularity probe ------------------------------------------------------

print("\nfinite-difference regularity probe at the diagonal (h = 1e-4):")
for name, pair in pairs.items():
    rep = regularity_probe(pair, mu=0.0, h=1e-4)
    print(
        f"  {name:>16}: d2={rep.second_derivative_at_diagonal:9.4f}"
        f"  slopes=({rep.left_slope:+.4f}, {rep.right_slope:+.4f})"
        f"  kink={rep.kink_detected}  regular={rep.is_regular}"
    )

print("\nthe cauchy-based pair shows the +-1 slope pair of a |t| corner;")
print("the smooth pairs have slopes of order h and a positive curvature.")
