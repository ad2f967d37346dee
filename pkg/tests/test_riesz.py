from fractions import Fraction

import numpy as np
import pytest

from chardisp.charfn import Laplace, Normal
from chardisp.deviance import UnitDeviancePair
from chardisp.normalizer import CosineGaussian, KernelSpec, OddGaussian, Window, Zero
from chardisp.riesz import (
    TranslateSystem,
    frame_bounds_estimate,
    gram_matrix,
    orthogonality_residual,
    rational_enumeration,
)

from oracles import midpoint_convolution

NN = UnitDeviancePair(Normal(1.0), Normal(1.0))
LL = UnitDeviancePair(Laplace(1.0), Laplace(1.0))
W20 = Window(-20.0, 20.0, 1024)

# Laplace/Laplace lam=1 on [-20,20]: Gram entries from the 1e7-point
# midpoint oracle, eigenvalues from mpmath's dense symmetric solver
# (numpy agreed to 6e-14 at freeze time).
GOLDEN_KNORM_LL = 37.406218289536646
GOLDEN_OVERLAP1_LL = 37.371926252993589
GOLDEN_EIGS_LL_8 = [
    0.00012331941925924865,
    0.003168487945447134,
    0.013738767443848063,
    0.031906988444613558,
    0.043431483018851552,
    0.05977110877566439,
    0.075895596895705603,
    299.0217105643498,
]
GOLDEN_RHO_COSGAUSS_LL = {
    0.0: 5.0045054856715687,
    1.0: 4.777776653672305,
    2.5: 5.0590296257351524,
    5.0: 5.2971616730933606,
}


class TestEnumeration:
    def test_first_terms(self):
        assert rational_enumeration(1) == [0.0]
        assert rational_enumeration(3) == [0.0, 1.0, -1.0]
        assert rational_enumeration(7) == [0.0, 1.0, -1.0, 0.5, -0.5, 2.0, -2.0]

    def test_deterministic_and_duplicate_free(self):
        a = rational_enumeration(501)
        assert a == rational_enumeration(501)
        assert len(set(a)) == len(a)

    def test_signed_pairing(self):
        a = rational_enumeration(41)
        # after the leading zero, entries come in (q, -q) pairs
        for i in range(1, 40, 2):
            assert a[i] == -a[i + 1]
            assert a[i] > 0.0

    def test_enumerates_small_rationals(self):
        # every rational with numerator and denominator up to 4 shows up
        a = set(rational_enumeration(200))
        for p in range(1, 5):
            for q in range(1, 5):
                assert float(Fraction(p, q)) in a
                assert float(Fraction(-p, q)) in a

    def test_requires_positive_n(self):
        with pytest.raises(ValueError):
            rational_enumeration(0)


class TestTranslateSystem:
    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            TranslateSystem(KernelSpec(NN, 1.0), (0.0, 1.0, 1.0), W20)

    def test_rejects_points_outside_middle_half(self):
        with pytest.raises(ValueError, match="middle half"):
            TranslateSystem(KernelSpec(NN, 1.0), (0.0, 15.0), W20)

    def test_accepts_enumeration_prefix(self):
        pts = tuple(rational_enumeration(8))
        sys_ = TranslateSystem(KernelSpec(LL, 1.0), pts, W20)
        assert sys_.points == pts


class TestGramMatrix:
    def test_single_translate(self):
        sys_ = TranslateSystem(KernelSpec(LL, 1.0), (0.0,), W20)
        rep = gram_matrix(sys_, tol=1e-10)
        assert rep.gram.shape == (1, 1)
        assert rep.min_eigenvalue == pytest.approx(rep.k_norm_sq, rel=1e-12)
        assert rep.max_eigenvalue == pytest.approx(rep.k_norm_sq, rel=1e-12)
        assert rep.tight_claim_gap == 0.0
        assert rep.k_norm_sq == pytest.approx(GOLDEN_KNORM_LL, rel=1e-9)

    def test_two_translates_overlap_positive(self):
        sys_ = TranslateSystem(KernelSpec(NN, 1.0), (0.0, 1.0), W20)
        rep = gram_matrix(sys_, tol=1e-10)
        off = rep.gram[0, 1]
        assert off > 0.0  # strictly positive kernels overlap
        assert rep.tight_claim_gap == off
        # eigenvalues of [[a, b], [b, a]] are a -/+ b
        assert rep.min_eigenvalue == pytest.approx(rep.k_norm_sq - off, abs=1e-8)
        assert rep.max_eigenvalue == pytest.approx(rep.k_norm_sq + off, abs=1e-8)

    def test_symmetry_and_diagonal_exact(self):
        pts = tuple(rational_enumeration(8))
        rep = gram_matrix(TranslateSystem(KernelSpec(LL, 1.0), pts, W20), tol=1e-10)
        assert np.array_equal(rep.gram, rep.gram.T)  # exact, single evaluation per pair
        assert np.all(rep.gram.diagonal() == rep.k_norm_sq)
        rel = np.abs(rep.gram.diagonal() / rep.k_norm_sq - 1.0)
        assert np.max(rel) <= 1e-10

    def test_positive_semidefinite(self):
        pts = tuple(rational_enumeration(8))
        rep = gram_matrix(TranslateSystem(KernelSpec(LL, 1.0), pts, W20), tol=1e-10)
        assert rep.min_eigenvalue >= -1e-10 * rep.max_eigenvalue

    def test_golden_eigenvalues_laplace_8(self):
        pts = tuple(rational_enumeration(8))
        rep = gram_matrix(TranslateSystem(KernelSpec(LL, 1.0), pts, W20), tol=1e-10)
        eigs = np.sort(np.linalg.eigvalsh(rep.gram))
        assert np.allclose(eigs, GOLDEN_EIGS_LL_8, rtol=0, atol=1e-8)
        assert rep.min_eigenvalue == pytest.approx(GOLDEN_EIGS_LL_8[0], abs=1e-8)
        assert rep.max_eigenvalue == pytest.approx(GOLDEN_EIGS_LL_8[-1], abs=1e-8)
        assert rep.gram[0, 1] == pytest.approx(GOLDEN_OVERLAP1_LL, rel=1e-9)


class TestFrameBounds:
    def test_single_translate_tight(self):
        rep = gram_matrix(TranslateSystem(KernelSpec(LL, 1.0), (0.0,), W20), tol=1e-10)
        lo, hi = frame_bounds_estimate(rep)
        assert lo == hi == rep.k_norm_sq

    def test_two_translates_straddle_k_norm(self):
        rep = gram_matrix(TranslateSystem(KernelSpec(NN, 1.0), (0.0, 1.0), W20), tol=1e-10)
        lo, hi = frame_bounds_estimate(rep)
        assert lo < rep.k_norm_sq < hi

    def test_nested_monotone_containment(self):
        pts = rational_enumeration(8)
        lowers, uppers = [], []
        for n in (1, 2, 4, 8):
            rep = gram_matrix(TranslateSystem(KernelSpec(LL, 1.0), tuple(pts[:n]), W20), tol=1e-10)
            lo, hi = frame_bounds_estimate(rep)
            lowers.append(lo)
            uppers.append(hi)
        assert all(a >= b for a, b in zip(lowers, lowers[1:]))
        assert all(a <= b for a, b in zip(uppers, uppers[1:]))


class TestOrthogonalityResidual:
    def test_zero_perturbation_vanishes(self):
        rho = orthogonality_residual(Zero(), KernelSpec(LL, 1.0), [0.0, 1.0, -2.0], window=W20)
        assert np.array_equal(rho, np.zeros(3))

    def test_odd_perturbation_parity_null_at_center(self):
        tol = 1e-10
        rho = orthogonality_residual(
            OddGaussian(amplitude=1.0, width=2.0), KernelSpec(LL, 1.0), [0.0], tol=tol, window=W20
        )
        assert abs(rho[0]) <= 10.0 * tol

    def test_catalog_cosine_gaussian_golden_curve(self):
        k = KernelSpec(LL, 1.0)
        mus = sorted(GOLDEN_RHO_COSGAUSS_LL)
        rho = orthogonality_residual(CosineGaussian(), k, mus, tol=1e-10, window=W20)
        for mu, r in zip(mus, rho):
            assert r == pytest.approx(GOLDEN_RHO_COSGAUSS_LL[mu], abs=1e-8)
        assert np.all(rho > 0.0)  # nonnegative f against a positive kernel

    def test_matches_live_oracle(self):
        k = KernelSpec(LL, 1.0)
        f = CosineGaussian()
        for mu in (-3.0, 0.5):
            got = orthogonality_residual(f, k, [mu], tol=1e-10, window=W20)[0]
            oracle = midpoint_convolution(f.eval, k.eval, mu, -20.0, 20.0, n=4_000_000)
            assert got == pytest.approx(oracle, abs=1e-8)

    def test_grid_outside_window_rejected(self):
        with pytest.raises(ValueError):
            orthogonality_residual(Zero(), KernelSpec(LL, 1.0), [30.0], window=W20)
