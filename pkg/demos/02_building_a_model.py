"""Build dispersion models: kernel, normalizing constant, density, classes.

The kernel K(y) = exp(-lam * d(y; 0)) is bounded between exp(-2 lam) and 1
and tends back to 1 far from the origin, so its full-line integral
diverges.  All models therefore live on a finite window; the constant
normalizing function is the reciprocal of the window integral of K.
Adding an even perturbation to the constant yields a non-constant
normalizing function and a density that is no longer a proper dispersion
model.
"""
import numpy as np

from chardisp import (
    CosineGaussian,
    DispersionModel,
    KernelSpec,
    Laplace,
    Normal,
    UnitDeviancePair,
    Window,
    classify,
    kernel_integral,
    perturbed_normalizer,
    trivial_normalizer,
)

window = Window(-20.0, 20.0, 1024)

# --- kernel and its window integral ----------------------------------------

pair = UnitDeviancePair(Normal(1.0), Normal(1.0))
print("window integral of the normal/normal kernel as lam grows:")
for lam in (0.0, 0.1, 1.0, 10.0):
    k = KernelSpec(pair, lam)
    val = kernel_integral(k, window, tol=1e-10)
    print(f"  lam={lam:5.1f}: integral={val:.12f}  (bounds: "
          f"{window.width * np.exp(-2 * lam):.4f} .. {window.width})")

# --- a proper model ---------------------------------------------------------

k = KernelSpec(pair, 1.0)
norm = trivial_normalizer(k, window, tol=1e-10)
model = DispersionModel(k, norm)
print(f"\ntrivial normalizer constant: {norm.a_tilde:.12f}")
print(f"classification: {classify(model).value}")
print("density at separations 0, 1, 2, 4 (mu = 0):")
for t in (0.0, 1.0, 2.0, 4.0):
    print(f"  p({t:3.1f}; 0) = {model.density(t, 0.0):.10f}")

# --- a perturbed (non-standard candidate) model -----------------------------

pairL = UnitDeviancePair(Laplace(1.0), Laplace(1.0))
kL = KernelSpec(pairL, 1.0)
baseL = trivial_normalizer(kL, window, tol=1e-10)
f = CosineGaussian()  # (cos(3y) + 1) exp(-y^2 / 10)
pert = perturbed_normalizer(baseL, f)
model_pert = DispersionModel(kL, pert)
print(f"\nperturbed model classification: {classify(model_pert).value}")
print("the perturbation adds an oscillation on top of the constant:")
for y in (0.0, 0.5, 1.0, 2.0):
    print(f"  a({y:3.1f}) = {pert.value(y):.6f}   vs constant {baseL.a_tilde:.6f}")

# --- the perturbed density is the proper one reweighted --------------------

ys = np.linspace(-5.0, 5.0, 11)
ratio = model_pert.density(ys, 0.0) / DispersionModel(kL, baseL).density(ys, 0.0)
print("\npointwise density ratio perturbed/proper equals (a_tilde + f)/a_tilde:")
print("  max deviation:", np.max(np.abs(ratio - (baseL.a_tilde + f.eval(ys)) / baseL.a_tilde)))
