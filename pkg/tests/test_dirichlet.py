import numpy as np
import pytest

from hardylab import (
    DomainError,
    DyadicTree,
    I_op,
    TreeFunction,
    TreeMeasure,
    delta_op,
    derivative_area_norm,
    dirichlet_kernel,
    dirichlet_norm,
    embed_tree_in_disk,
    restrict_to_tree,
    tree_carleson_constant,
    tree_inner,
    tree_kernel,
    tree_norm,
)


def random_tree_function(rng, tree, zero_root=False):
    vals = rng.standard_normal(tree.size) + 1j * rng.standard_normal(tree.size)
    if zero_root:
        vals[0] = 0.0
    return TreeFunction(tree, vals)


def brute_path_sum(tree, f, label):
    return sum(f.at(label[:k]) for k in range(len(label) + 1))


class TestTreeStructure:
    def test_vertex_count(self):
        for d in (0, 1, 3, 6):
            assert DyadicTree(d).size == 2 ** (d + 1) - 1

    def test_parent_drops_last_bit(self):
        tree = DyadicTree(3)
        assert tree.labels[tree.parent[tree.index["010"]]] == "01"
        assert tree.parent[0] == -1

    def test_meet_depth(self):
        tree = DyadicTree(4)
        assert tree.meet_depth("0101", "0110") == 2
        assert tree.meet_depth("", "1011") == 0
        assert tree.meet_depth("11", "1100") == 2


class TestCalculus:
    def test_root_indicator_integrates_to_one(self):
        tree = DyadicTree(4)
        chi = np.zeros(tree.size)
        chi[0] = 1.0
        assert np.allclose(I_op(TreeFunction(tree, chi)).values, 1.0)

    def test_integration_matches_brute_path_sums(self, rng):
        tree = DyadicTree(5)
        f = random_tree_function(rng, tree)
        integrated = I_op(f)
        for label in ("", "1", "010", "11011"):
            assert integrated.at(label) == pytest.approx(brute_path_sum(tree, f, label))

    def test_delta_then_integrate(self, rng):
        tree = DyadicTree(6)
        f = random_tree_function(rng, tree, zero_root=True)
        assert np.allclose(I_op(delta_op(f)).values, f.values, atol=1e-12)
        assert np.allclose(delta_op(I_op(f)).values, f.values, atol=1e-12)

    def test_delta_of_constant(self):
        tree = DyadicTree(3)
        out = delta_op(TreeFunction(tree, np.full(tree.size, 2.5)))
        assert np.allclose(out.values, 0.0)


class TestNorms:
    def test_constant_one(self):
        tree = DyadicTree(4)
        assert tree_norm(TreeFunction(tree, np.ones(tree.size))) == pytest.approx(1.0)

    def test_kernel_norm_is_one_plus_depth(self):
        tree = DyadicTree(5)
        for label in ("", "0", "101", "11111"):
            k = tree_kernel(tree, label)
            assert tree_norm(k) ** 2 == pytest.approx(1.0 + len(label))

    def test_zero_function(self):
        tree = DyadicTree(2)
        assert tree_norm(TreeFunction(tree, np.zeros(tree.size))) == 0.0

    def test_inner_polarization(self, rng):
        tree = DyadicTree(4)
        f = random_tree_function(rng, tree)
        assert tree_inner(f, f).real == pytest.approx(tree_norm(f) ** 2)


class TestTreeKernel:
    def test_root_kernel_is_constant(self, rng):
        tree = DyadicTree(4)
        k = tree_kernel(tree, "")
        assert np.allclose(k.values, 1.0)
        f = random_tree_function(rng, tree)
        assert tree_inner(f, k) == pytest.approx(f.at(""))

    def test_reproducing_everywhere_depth6(self, rng):
        tree = DyadicTree(6)
        f = random_tree_function(rng, tree)
        for label in tree.labels:
            assert abs(tree_inner(f, tree_kernel(tree, label)) - f.at(label)) <= 1e-12

    def test_meet_formula(self):
        tree = DyadicTree(4)
        alpha = "0110"
        k = tree_kernel(tree, alpha)
        for beta in tree.labels:
            assert k.at(beta) == pytest.approx(1.0 + tree.meet_depth(alpha, beta))

    def test_missing_vertex_rejected(self):
        with pytest.raises(DomainError):
            tree_kernel(DyadicTree(2), "0000")


class TestCarleson:
    def test_zero_measure(self):
        tree = DyadicTree(4)
        assert tree_carleson_constant(TreeMeasure(tree, np.zeros(tree.size))) == 0.0

    def test_root_point_mass(self):
        tree = DyadicTree(4)
        assert tree_carleson_constant(TreeMeasure.point_mass(tree, "")) == pytest.approx(1.0)

    def test_depth3_point_mass(self):
        tree = DyadicTree(5)
        mu = TreeMeasure.point_mass(tree, "010")
        assert tree_carleson_constant(mu) == pytest.approx(4.0, abs=1e-10)

    def test_kernel_testing_is_lower_bound(self, rng):
        tree = DyadicTree(5)
        mu = TreeMeasure(tree, rng.uniform(0, 1, tree.size))
        constant = tree_carleson_constant(mu)
        for label in tree.labels:
            k = tree_kernel(tree, label)
            ratio = np.sum(mu.weights * np.abs(k.values) ** 2) / tree_norm(k) ** 2
            assert ratio <= constant + 1e-9

    def test_random_function_lower_bounds(self, rng):
        tree = DyadicTree(5)
        mu = TreeMeasure(tree, rng.uniform(0, 1, tree.size))
        constant = tree_carleson_constant(mu)
        for _ in range(30):
            f = random_tree_function(rng, tree)
            ratio = np.sum(mu.weights * np.abs(f.values) ** 2) / tree_norm(f) ** 2
            assert ratio <= constant + 1e-9

    def test_depth_cap(self):
        tree = DyadicTree(13)
        with pytest.raises(DomainError, match="depth"):
            tree_carleson_constant(TreeMeasure(tree, np.zeros(tree.size)))

    def test_negative_weights_rejected(self):
        tree = DyadicTree(2)
        with pytest.raises(DomainError):
            TreeMeasure(tree, -np.ones(tree.size))


class TestDiskKernel:
    def test_at_origin(self):
        for z in (0.0, 0.4, -0.3 + 0.2j):
            assert dirichlet_kernel(z, 0.0) == pytest.approx(1.0)

    def test_hermitian(self, rng):
        for _ in range(10):
            r = 0.9 * np.sqrt(rng.uniform(size=2))
            t = rng.uniform(0, 2 * np.pi, 2)
            z, w = r * np.exp(1j * t)
            assert dirichlet_kernel(z, w) == pytest.approx(np.conj(dirichlet_kernel(w, z)))

    def test_series_matches_closed_form_across_branch(self):
        # straddle the series/closed-form switchover at |s| = 1/2
        for s in (0.49, 0.51, 0.49j, -0.51j):
            z, w = np.sqrt(complex(s)), np.sqrt(complex(s))
            series = sum(s**n / (n + 1) for n in range(200))
            assert dirichlet_kernel(np.conj(z), w) == pytest.approx(complex(series), rel=1e-13)

    def test_reproducing_with_weighted_pairing(self, rng):
        # <f, k_z> under the (n+1)-weighted coefficient pairing gives f(z)
        coeffs = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        z = 0.4 - 0.3j
        n = np.arange(64)
        kernel_coeffs = np.conj(z) ** n / (n + 1)
        pairing = np.sum((np.arange(8) + 1) * coeffs * np.conj(kernel_coeffs[:8]))
        direct = np.polynomial.polynomial.polyval(z, coeffs)
        assert pairing == pytest.approx(direct, rel=1e-10)


class TestCoefficientNorms:
    def test_energy_below_dirichlet(self, rng):
        for _ in range(10):
            c = rng.standard_normal(9) + 1j * rng.standard_normal(9)
            assert dirichlet_norm(c, 0) <= dirichlet_norm(c, 1) + 1e-15

    def test_constant(self):
        assert derivative_area_norm([2.0], 1) == pytest.approx(2.0)
        assert dirichlet_norm([2.0], 1) == pytest.approx(2.0)

    def test_coordinate_function_area_term(self):
        # f = z at weight one: the area integral contributes exactly one
        val = derivative_area_norm([0.0, 1.0], 1)
        assert val**2 == pytest.approx(1.0, rel=1e-12)

    def test_two_sided_comparability(self, rng):
        # area form and coefficient form agree within the convention
        # constants: norm_area^2 <= norm_coef^2 <= 2 norm_area^2
        for alpha in (0, 1):
            for _ in range(5):
                c = rng.standard_normal(9) + 1j * rng.standard_normal(9)
                coef_sq = dirichlet_norm(c, alpha) ** 2
                area_sq = derivative_area_norm(c, alpha) ** 2
                assert area_sq <= coef_sq + 1e-9
                assert coef_sq <= 2.0 * area_sq + 1e-9

    def test_area_weights_match_exact_integrals(self, rng):
        # with weight one the area form equals |a_0|^2 + sum n |a_n|^2
        c = rng.standard_normal(7) + 1j * rng.standard_normal(7)
        exact = abs(c[0]) ** 2 + np.sum(np.arange(1, 7) * np.abs(c[1:]) ** 2)
        assert derivative_area_norm(c, 1) ** 2 == pytest.approx(exact, rel=1e-10)


class TestEmbedding:
    def test_root_at_origin(self):
        assert embed_tree_in_disk(3)[""] == 0

    def test_level_one_radius(self):
        emb = embed_tree_in_disk(2)
        assert abs(emb["0"]) == pytest.approx(0.5)
        assert abs(emb["1"]) == pytest.approx(0.5)
        assert emb["0"] != emb["1"]

    def test_children_stay_in_parent_sector(self):
        emb = embed_tree_in_disk(4)
        tree = DyadicTree(4)
        for lab in tree.labels:
            if 1 <= len(lab) < 4:
                parent_angle = np.angle(emb[lab]) % (2 * np.pi)
                n = len(lab)
                k = int(lab, 2)
                lo, hi = 2 * np.pi * k / 2**n, 2 * np.pi * (k + 1) / 2**n
                for child in (lab + "0", lab + "1"):
                    ca = np.angle(emb[child]) % (2 * np.pi)
                    assert lo <= ca <= hi

    def test_restriction_of_coordinate_function(self):
        tree = DyadicTree(3)
        f = restrict_to_tree([0.0, 1.0], tree)
        emb = embed_tree_in_disk(3)
        for lab in tree.labels:
            assert f.at(lab) == pytest.approx(emb[lab])

    def test_tree_function_roundtrip(self, rng):
        tree = DyadicTree(3)
        f = random_tree_function(rng, tree)
        back = TreeFunction.from_dict(tree, f.to_dict())
        assert np.allclose(back.values, f.values)
