import numpy as np
import pytest

from conftest import assert_signals_close
from hardylab import (
    BoundaryGrid,
    ContractionMatrix,
    DomainError,
    HankelOperatorData,
    Polynomial,
    RationalFunction,
    Signal,
    best_causal_approx,
    blaschke_factor,
    bmoa_carleson_estimate,
    fourier_grid,
    hankel_bilinear_form,
    hankel_from_symbol,
    hankel_matrix,
    hankel_norm,
    nehari_distance,
    toeplitz_apply,
    toeplitz_norm_lower,
    von_neumann_check,
)

HILBERT_SIGMA = {
    # frozen from the DERIVED oracle: SVD of increasing truncations of
    # [(i + j + 1)^{-1}]; converges to pi from below at O(1/log N)
    64: 2.116080858571032,
    128: 2.216860766325954,
    256: 2.3038089954245757,
}


def power_iteration_norm(mat, iters=3000):
    x = np.ones(mat.shape[1], dtype=complex)
    x = x / np.linalg.norm(x)
    for _ in range(iters):
        z = mat.conj().T @ (mat @ x)
        nz = np.linalg.norm(z)
        if nz == 0:
            return 0.0
        x = z / nz
    return float(np.linalg.norm(mat @ x))


class TestHankelFromSymbol:
    def test_single_negative_coefficient(self):
        data = hankel_from_symbol(Signal([1], offset=-1))
        assert np.allclose(data.alpha, [1.0])

    def test_causal_symbol_vanishes(self):
        data = hankel_from_symbol(Signal([1, 2, 3], offset=0))
        assert np.max(np.abs(data.alpha)) == 0.0
        assert hankel_norm(data).sigma == 0.0

    def test_hilbert_sequence(self):
        # phi_hat(-j-1) = 1/(j+1) generates the classical matrix
        phi = Signal.from_pairs(range(-8, 0), [1.0 / (-k) for k in range(-8, 0)])
        data = hankel_from_symbol(phi)
        assert np.allclose(data.alpha, 1.0 / (np.arange(8) + 1))
        mat = hankel_matrix(data, 4)
        i, j = np.indices((4, 4))
        assert np.allclose(mat, 1.0 / (i + j + 1))

    def test_conjugation_convention(self):
        data = hankel_from_symbol(Signal([2j], offset=-3))
        # alpha(2) = conj(coefficient at -3)
        assert data.alpha[2] == pytest.approx(-2j)

    def test_ignores_analytic_part(self, rng):
        # adding a causal polynomial to the symbol leaves alpha unchanged
        neg = Signal.from_pairs([-1, -2], [1.0, 2j])
        pos = Signal([3.0, -1j, 0.5], offset=0)
        assert np.allclose(
            hankel_from_symbol(neg).alpha, hankel_from_symbol(neg + pos).alpha
        )

    def test_entries_depend_on_index_sum(self, rng):
        data = HankelOperatorData(alpha=rng.standard_normal(9), n=5)
        mat = hankel_matrix(data)
        for m in range(5):
            for n in range(5):
                for mp in range(5):
                    np_ = m + n - mp
                    if 0 <= np_ < 5:
                        assert mat[m, n] == mat[mp, np_]


class TestHankelNorm:
    def test_rank_one(self):
        data = HankelOperatorData(alpha=np.array([1.0]), n=4)
        res = hankel_norm(data)
        assert res.sigma == pytest.approx(1.0)
        assert res.converged

    def test_hilbert_truncations_frozen_oracle(self):
        sigmas = {}
        for n, expected in HILBERT_SIGMA.items():
            res = hankel_norm(HankelOperatorData.from_rule(lambda j: 1.0 / (j + 1), n))
            sigmas[n] = res.sigma
            assert res.sigma == pytest.approx(expected, rel=1e-12)
            assert res.sigma < np.pi
            # truncations converge to pi only logarithmically
            assert not res.converged
        assert sigmas[64] < sigmas[128] < sigmas[256]

    def test_geometric_symbol_power_iteration_oracle(self):
        r = 0.5
        data = HankelOperatorData.from_rule(lambda j: r**j, 128)
        res = hankel_norm(data)
        oracle = power_iteration_norm(hankel_matrix(data))
        assert res.sigma == pytest.approx(oracle, abs=1e-10)
        # alpha(j) = r^j is rank one with norm 1/(1 - r^2)
        assert res.sigma == pytest.approx(1.0 / (1 - r**2), rel=1e-12)
        assert res.converged

    def test_schmidt_pair_relation(self, rng):
        data = HankelOperatorData(alpha=rng.standard_normal(7) + 1j * rng.standard_normal(7), n=4)
        res = hankel_norm(data)
        mat = hankel_matrix(data)
        assert np.allclose(mat @ res.pair.u, res.sigma * res.pair.v, atol=1e-12)
        assert np.linalg.norm(res.pair.u) == pytest.approx(1.0)
        assert np.linalg.norm(res.pair.v) == pytest.approx(1.0)


class TestBilinearForm:
    def test_zero_symbol(self):
        data = HankelOperatorData(alpha=np.zeros(3), n=4)
        assert hankel_bilinear_form(data, Signal([1, 2]), Signal([3])) == 0

    def test_matrix_vs_quadrature(self, rng):
        # two independent routes: coefficient double sum vs circle integral
        for _ in range(10):
            depth = 8
            neg_vals = rng.standard_normal(depth) + 1j * rng.standard_normal(depth)
            phi = Signal.from_pairs(range(-depth, 0), neg_vals[::-1])
            f = Signal(rng.standard_normal(5) + 1j * rng.standard_normal(5))
            g = Signal(rng.standard_normal(6) + 1j * rng.standard_normal(6))
            data = hankel_from_symbol(phi, n=16)
            val = hankel_bilinear_form(data, f, g)
            n = 128
            z = fourier_grid(phi, n).values
            fz = fourier_grid(f, n).values
            gz = fourier_grid(g, n).values
            e_it = np.exp(2j * np.pi * np.arange(n) / n)
            quad = np.mean(fz * gz * e_it * z)
            assert val == pytest.approx(quad, abs=1e-10)

    def test_bounded_symbol_bound(self, rng):
        # |B_gamma(f, g)| <= sup|gamma| ||f|| ||g||
        for _ in range(10):
            coeffs = rng.standard_normal(9) + 1j * rng.standard_normal(9)
            gamma = Signal(coeffs, offset=-4)
            f = Signal(rng.standard_normal(4) + 1j * rng.standard_normal(4))
            g = Signal(rng.standard_normal(4) + 1j * rng.standard_normal(4))
            data = hankel_from_symbol(gamma, n=8)
            val = abs(hankel_bilinear_form(data, f, g))
            sup = np.max(np.abs(fourier_grid(gamma, 512).values))
            fn = np.sqrt(np.sum(np.abs(f.values) ** 2))
            gn = np.sqrt(np.sum(np.abs(g.values) ** 2))
            assert val <= sup * fn * gn + 1e-10

    def test_support_overflow(self):
        data = HankelOperatorData(alpha=np.ones(3), n=2)
        with pytest.raises(DomainError, match="overflow"):
            hankel_bilinear_form(data, Signal([1, 1, 1]), Signal([1]))

    def test_noncausal_rejected(self):
        data = HankelOperatorData(alpha=np.ones(3), n=4)
        with pytest.raises(DomainError, match="causal"):
            hankel_bilinear_form(data, Signal([1], offset=-1), Signal([1]))


class TestNehariDistance:
    def test_single_backward_mode(self):
        # two-sided oracle: the pairing with f = g = 1 forces >= 1, the
        # causal candidate 0 forces <= 1
        phi = Signal([1], offset=-1)
        res = nehari_distance(phi)
        assert res.sigma == pytest.approx(1.0, abs=1e-14)
        assert res.converged
        sup = np.max(np.abs(fourier_grid(phi, 256).values))
        assert sup == pytest.approx(1.0, abs=1e-12)

    def test_causal_distance_zero(self):
        assert nehari_distance(Signal([1, 2, 3])).sigma == 0.0

    def test_analytic_part_is_free(self):
        phi = Signal.from_pairs([-1, 1], [1.0, 5.0])
        assert nehari_distance(phi).sigma == pytest.approx(1.0, abs=1e-14)


class TestBestCausalApprox:
    def test_single_backward_mode(self):
        phi = Signal([1], offset=-1)
        res = best_causal_approx(phi)
        assert res.achieved == pytest.approx(1.0)
        assert np.max(np.abs(res.approximant.values)) <= 1e-12 or res.approximant.is_zero
        # |phi - b| is identically 1 on the circle
        err = fourier_grid(phi, 2048).values - res.boundary.values
        assert np.max(np.abs(np.abs(err) - 1.0)) <= 1e-10

    def test_causal_passthrough(self):
        phi = Signal([1.0, 0.5, -2.0])
        res = best_causal_approx(phi)
        assert res.achieved == 0.0
        assert_signals_close(res.approximant, phi, tol=0)

    def test_conjugate_blaschke_symbol(self):
        # antianalytic part of conj(blaschke(1/2)) on the circle
        a = 0.5
        L = 60
        z = np.exp(2j * np.pi * np.arange(4096) / 4096)
        taylor = np.zeros(L, dtype=complex)
        taylor[0] = a
        taylor[1:] = (a**2 - 1) * a ** np.arange(L - 1)
        # conj on the circle: coefficients conjugate at negated indices
        phi = Signal.from_pairs(-np.arange(L), np.conj(taylor))
        data_norm = hankel_norm(hankel_from_symbol(phi))
        res = best_causal_approx(phi)
        assert res.achieved == pytest.approx(data_norm.sigma, abs=1e-8)
        # distance from a conjugated inner function is 1
        assert res.achieved == pytest.approx(1.0, abs=1e-10)
        assert res.modulus_deviation <= 1e-6
        bl = blaschke_factor(a, z)
        assert np.max(np.abs(fourier_grid(phi, 4096).values - np.conj(bl))) <= 1e-12

    def test_degenerate_top_pair_rejected(self):
        # symbol e^{-2it}: double top singular value, no unique approximant
        phi = Signal([1], offset=-2)
        with pytest.raises(DomainError, match="nonunique|ambiguous"):
            best_causal_approx(phi)


class TestToeplitzApply:
    def test_identity_symbol(self, rng):
        psi = BoundaryGrid(np.ones(64))
        f = Signal(rng.standard_normal(5))
        assert_signals_close(toeplitz_apply(psi, f), f, tol=1e-12)

    def test_forward_shift(self):
        n = 64
        z = np.exp(2j * np.pi * np.arange(n) / n)
        psi = BoundaryGrid(z)
        out = toeplitz_apply(psi, Signal([1.0, 2.0]))
        assert_signals_close(out, Signal([0, 1.0, 2.0]), tol=1e-12)

    def test_backward_shift(self):
        n = 64
        z = np.exp(2j * np.pi * np.arange(n) / n)
        psi = BoundaryGrid(np.conj(z))
        assert_signals_close(toeplitz_apply(psi, Signal.delta(1)), Signal.delta(0), tol=1e-12)
        out = toeplitz_apply(psi, Signal.delta(0))
        assert out.is_zero or np.max(np.abs(out.values)) <= 1e-12

    def test_matrix_is_toeplitz(self):
        # matrix elements in the monomial basis satisfy F[i+1, j+1] = F[i, j]
        n = 64
        t = 2 * np.pi * np.arange(n) / n
        psi = BoundaryGrid(np.exp(1j * t) + 2.0 + np.exp(-2j * t) * 0.5)
        size = 6
        mat = np.zeros((size, size), dtype=complex)
        for j in range(size):
            out = toeplitz_apply(psi, Signal.delta(j))
            for i in range(size):
                mat[i, j] = out.at(i)
        for i in range(size - 1):
            for j in range(size - 1):
                assert mat[i + 1, j + 1] == pytest.approx(mat[i, j], abs=1e-12)

    def test_bandwidth_overflow(self):
        psi = BoundaryGrid(np.ones(8))
        with pytest.raises(DomainError, match="bandwidth|support"):
            toeplitz_apply(psi, Signal(np.ones(5)))


class TestToeplitzNormLower:
    def test_constant_symbol(self):
        psi = BoundaryGrid(np.full(1024, -3.0 + 0j))
        bracket = toeplitz_norm_lower(psi, radii=(0.5, 0.9))
        assert bracket.lower == pytest.approx(3.0, rel=1e-6)
        assert bracket.upper == pytest.approx(3.0)

    def test_probe_finer_than_grid_rejected(self):
        with pytest.raises(DomainError, match="grid"):
            toeplitz_norm_lower(BoundaryGrid(np.ones(64)), radii=(0.999,))

    def test_cosine_symbol_brackets_four(self):
        n = 16384
        t = 2 * np.pi * np.arange(n) / n
        psi = BoundaryGrid(2 + 2 * np.cos(t) + 0j)
        bracket = toeplitz_norm_lower(psi, radii=(0.9, 0.99, 0.999), n_angles=128)
        assert bracket.upper == pytest.approx(4.0, rel=1e-8)
        assert bracket.lower <= bracket.upper + 1e-12
        assert bracket.lower >= 0.98 * bracket.upper

    def test_random_trig_polynomial(self, rng):
        n = 16384
        t = 2 * np.pi * np.arange(n) / n
        vals = np.zeros(n, dtype=complex)
        for k in range(-6, 7):
            c = rng.standard_normal() + 1j * rng.standard_normal()
            vals += c * np.exp(1j * k * t)
        psi = BoundaryGrid(vals)
        bracket = toeplitz_norm_lower(psi, radii=(0.999,), n_angles=256)
        assert bracket.lower >= 0.98 * bracket.upper


class TestVonNeumann:
    def test_zero_contraction(self):
        p = Polynomial([1.5, 2.0, -1.0])
        rep = von_neumann_check(p, np.zeros((3, 3)))
        assert rep.lhs == pytest.approx(abs(p(0.0)))
        assert rep.holds

    def test_truncated_shift_approaches_equality(self):
        p = Polynomial([1.0, 1.0])
        gaps = []
        for n in (64, 512):
            shift = np.diag(np.ones(n - 1), -1)
            rep = von_neumann_check(p, shift)
            assert rep.holds
            gaps.append(rep.rhs - rep.lhs)
        assert gaps[1] < gaps[0]
        assert gaps[1] <= 1e-3

    def test_random_contractions_hold(self, rng):
        for _ in range(50):
            dim = int(rng.integers(1, 6))
            mat = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
            mat /= np.linalg.norm(mat, 2)
            deg = int(rng.integers(0, 7))
            p = Polynomial(rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1))
            assert von_neumann_check(p, mat).holds

    def test_normal_case_equality_at_spectrum(self, rng):
        # diagonal unimodular contraction: norm of p(T) is the max of |p|
        # over the eigenvalues, below the circle sup with near-equality
        # when an eigenvalue is near the maximizer
        thetas = rng.uniform(0, 2 * np.pi, 8)
        T = np.diag(np.exp(1j * thetas))
        p = Polynomial([0.3, 1.0, -0.2j])
        rep = von_neumann_check(p, T)
        spec_max = np.max(np.abs(p(np.exp(1j * thetas))))
        assert rep.lhs == pytest.approx(spec_max, rel=1e-12)
        assert rep.holds

    def test_non_contraction_rejected(self):
        with pytest.raises(DomainError, match="contraction"):
            von_neumann_check(Polynomial([1.0]), 2.0 * np.eye(2))

    def test_contraction_wrapper_validates(self):
        with pytest.raises(DomainError):
            ContractionMatrix(np.array([[1.0, 1.0]]))


class TestCarlesonEstimate:
    def test_constant_vanishes(self):
        assert bmoa_carleson_estimate(RationalFunction([5.0], [1.0])) == 0.0

    def test_coordinate_function(self):
        val = bmoa_carleson_estimate(RationalFunction([0, 1], [1]))
        assert 0 < val < 10
        # independent coarse midpoint-quadrature oracle at the probe a = 0:
        # integral of (1 - |z|^2) over the disk is pi/2
        assert val >= 0.5 * np.pi / 2 - 1e-6

    def test_blaschke_factor_finite(self):
        b = RationalFunction([0.5, -1.0], [1.0, -0.5])  # (1/2 - z)/(1 - z/2)
        val = bmoa_carleson_estimate(b)
        assert np.isfinite(val) and val > 0

    def test_refinement_stability(self):
        b = RationalFunction([0, 1], [1])
        v1 = bmoa_carleson_estimate(b, start_radial=32, start_angles=64)
        v2 = bmoa_carleson_estimate(b, start_radial=64, start_angles=128)
        assert abs(v1 - v2) <= 0.02 * max(v1, v2)

    def test_unstable_rejected(self):
        with pytest.raises(DomainError):
            bmoa_carleson_estimate(RationalFunction([1], [1, -2]))
