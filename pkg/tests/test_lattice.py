import math

import numpy as np
import pytest

from foamlat import (
    DimensionUnsupported,
    EnumerationBudgetExceeded,
    SingularBasis,
    enumerate_points,
    make_lattice,
    reduce_basis,
    shortest_vector,
)
from foamlat.lattice import canonical_sign, covering_radius_bound

from oracles import (
    HEX_LAMBDA,
    box_points,
    box_shortest,
    hexagonal_basis_unit,
    min_defect_unimodular,
)


class TestMakeLattice:
    def test_identity(self):
        lat = make_lattice(np.eye(2))
        assert lat.covolume == pytest.approx(1.0, rel=1e-12)
        assert np.allclose(lat.gram, np.eye(2))

    def test_hexagonal_covolume(self):
        lat = make_lattice([[1.0, 0.0], [0.5, math.sqrt(3) / 2]])
        assert lat.covolume == pytest.approx(math.sqrt(3) / 2, rel=1e-12)

    def test_singular_rejected(self):
        with pytest.raises(SingularBasis):
            make_lattice([[1.0, 0.0], [2.0, 0.0]])

    def test_dimension_caps(self):
        with pytest.raises(DimensionUnsupported):
            make_lattice(np.eye(9))
        with pytest.raises(DimensionUnsupported):
            make_lattice([[2.0]])

    def test_gram_consistency(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            basis = rng.standard_normal((3, 3))
            lat = make_lattice(basis)
            assert np.allclose(lat.gram, basis @ basis.T, rtol=1e-12, atol=1e-12)
            assert lat.covolume == pytest.approx(abs(np.linalg.det(basis)),
                                                 rel=1e-12)


class TestReduceBasis:
    def test_identity_unchanged(self):
        lat = make_lattice(np.eye(3))
        red = reduce_basis(lat)
        assert np.allclose(red.basis, np.eye(3))

    def test_skew_basis(self):
        lat = make_lattice([[1.0, 0.0], [100.0, 1.0]])
        red = reduce_basis(lat)
        assert red.covolume == pytest.approx(1.0, rel=1e-10)
        assert np.all(np.linalg.norm(red.basis, axis=1) <= math.sqrt(2) + 1e-12)
        change = red.basis @ np.linalg.inv(lat.basis)
        assert np.allclose(change, np.round(change), atol=1e-9)
        assert round(abs(np.linalg.det(change))) == 1

    def test_hexagonal_defect(self):
        basis = 7.0 * hexagonal_basis_unit()
        red = reduce_basis(make_lattice(basis))
        defect = np.prod(np.linalg.norm(red.basis, axis=1)) / red.covolume
        assert defect <= 2.0 / math.sqrt(3.0) + 1e-9
        assert defect <= min_defect_unimodular(basis) + 1e-9

    def test_same_group_random(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            lat = make_lattice(rng.standard_normal((3, 3)))
            red = reduce_basis(lat)
            assert red.covolume == pytest.approx(lat.covolume, rel=1e-10)
            change = red.basis @ np.linalg.inv(lat.basis)
            assert np.allclose(change, np.round(change), atol=1e-7)


class TestShortestVector:
    def test_z2(self):
        inv = shortest_vector(make_lattice(np.eye(2)))
        assert inv.lambda_min == pytest.approx(1.0, abs=1e-12)
        assert inv.packing_radius == inv.lambda_min / 2
        assert sorted(map(tuple, inv.shortest_vectors.tolist())) == [
            (0.0, 1.0), (1.0, 0.0)]

    def test_hexagonal_unit_covolume(self):
        inv = shortest_vector(make_lattice(hexagonal_basis_unit()))
        assert inv.lambda_min == pytest.approx(HEX_LAMBDA, rel=1e-12)
        lam_oracle, count = box_shortest(hexagonal_basis_unit(), box=10)
        assert inv.lambda_min == pytest.approx(lam_oracle, rel=1e-12)
        assert len(inv.shortest_vectors) == count == 3

    def test_d4(self):
        basis = np.array([[1, 1, 0, 0], [1, -1, 0, 0],
                          [0, 1, -1, 0], [0, 0, 1, -1]], dtype=float)
        inv = shortest_vector(make_lattice(basis))
        assert inv.lambda_min == pytest.approx(math.sqrt(2), rel=1e-12)
        assert len(inv.shortest_vectors) == 12

    def test_covering_bound_dominates_packing(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            lat = make_lattice(rng.standard_normal((4, 4)))
            inv = shortest_vector(lat)
            assert inv.covering_radius >= inv.packing_radius - 1e-12

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_agrees_with_box_search(self, n):
        rng = np.random.default_rng(100 + n)
        for _ in range(100):
            lat = make_lattice(rng.standard_normal((n, n)))
            red = reduce_basis(lat)
            lam_oracle, _ = box_shortest(red.basis, box=5)
            assert shortest_vector(lat).lambda_min == pytest.approx(
                lam_oracle, rel=1e-10)


class TestEnumerate:
    def test_z2_radius_1(self):
        pts = enumerate_points(make_lattice(np.eye(2)), 1.0)
        assert sorted(map(tuple, pts.tolist())) == [(0.0, 1.0), (1.0, 0.0)]

    def test_z2_radius_1_5(self):
        pts = enumerate_points(make_lattice(np.eye(2)), 1.5)
        assert len(pts) == 4
        diag = [p for p in pts.tolist() if abs(p[0]) == 1 and abs(p[1]) == 1]
        assert len(diag) == 2  # canonical halves of the 4 diagonal vectors

    def test_z3_radius_2(self):
        pts = enumerate_points(make_lattice(np.eye(3)), 2.0)
        oracle = box_points(np.eye(3), 2.0, box=2)
        assert len(oracle) == 32
        assert len(pts) == 16

    def test_matches_box_oracle_random(self):
        rng = np.random.default_rng(7)
        for n in (2, 3):
            for _ in range(25):
                lat = make_lattice(rng.standard_normal((n, n)))
                red = reduce_basis(lat)
                radius = 1.8 * float(np.min(np.linalg.norm(red.basis, axis=1)))
                got = enumerate_points(lat, radius)
                oracle = box_points(red.basis, radius, box=5)
                assert 2 * len(got) == len(oracle)
                got_set = {tuple(np.round(p, 8)) for p in got}
                oracle_canon = {tuple(np.round(p, 8))
                                for p in canonical_sign(oracle)}
                assert got_set == oracle_canon

    def test_budget_error(self):
        with pytest.raises(EnumerationBudgetExceeded):
            enumerate_points(make_lattice(np.eye(2)), 500.0, budget=100)


class TestInvariances:
    def test_unimodular_invariance(self):
        rng = np.random.default_rng(13)
        u = np.array([[1, 0, 0], [4, 1, 0], [-3, 2, 1]], dtype=float)
        assert round(np.linalg.det(u)) == 1
        for _ in range(10):
            basis = rng.standard_normal((3, 3))
            a, b = make_lattice(basis), make_lattice(u @ basis)
            assert b.covolume == pytest.approx(a.covolume, rel=1e-10)
            assert shortest_vector(b).lambda_min == pytest.approx(
                shortest_vector(a).lambda_min, rel=1e-10)

    def test_scaling_law(self):
        lat = make_lattice(hexagonal_basis_unit())
        s = 2.7
        scaled = lat.scaled(s)
        assert scaled.covolume == pytest.approx(s**2 * lat.covolume, rel=1e-12)
        assert shortest_vector(scaled).lambda_min == pytest.approx(
            s * shortest_vector(lat).lambda_min, rel=1e-10)

    def test_covering_bound_is_bound(self):
        # For Z^n the exact covering radius is sqrt(n)/2.
        for n in (2, 3, 4):
            rhat = covering_radius_bound(make_lattice(np.eye(n)))
            assert rhat == pytest.approx(math.sqrt(n) / 2, rel=1e-12)
