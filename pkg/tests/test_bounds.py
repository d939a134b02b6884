import math

import numpy as np
import pytest

from foamlat import (
    bounds_row,
    build_cell,
    catalog_get,
    euclidean,
    make_lattice,
    mh_lattice_check,
    perimeter,
    unit_ball_volume,
    zeta,
)

from oracles import HEX_PERIMETER, hexagonal_basis_unit


class TestUnitBallVolume:
    def test_disk(self):
        assert unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-14)

    def test_ball(self):
        assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3, rel=1e-14)

    def test_recursion(self):
        # omega_n = omega_{n-2} * 2 pi / n
        for n in range(3, 30):
            assert unit_ball_volume(n) == pytest.approx(
                unit_ball_volume(n - 2) * 2 * math.pi / n, rel=1e-12)

    def test_large_n_finite(self):
        # omega_500 genuinely underflows doubles; the log-form brackets
        # must stay finite and positive anyway.
        row = bounds_row(500)
        assert math.isfinite(row.lower) and row.lower > 0.0
        assert math.isfinite(row.upper) and row.upper > row.lower
        assert math.isfinite(row.mh_packing_radius)
        assert row.mh_packing_radius > 0.0


class TestZeta:
    def test_basel(self):
        assert zeta(2) == pytest.approx(math.pi**2 / 6, rel=1e-12)

    def test_fourth(self):
        assert zeta(4) == pytest.approx(math.pi**4 / 90, rel=1e-12)

    def test_large_n_dominated_by_first_terms(self):
        # 1 + 2^-60 is below double resolution next to 1.0.
        z = zeta(60)
        assert 1.0 <= z <= 1.0 + 1e-15


class TestBoundsRow:
    def test_n2_values(self):
        row = bounds_row(2)
        assert row.lower == pytest.approx(2 * math.sqrt(math.pi), rel=1e-12)
        upper = 2.0 / math.sqrt(math.pi**2 / 3.0) * 2 * math.sqrt(math.pi)
        assert row.upper == pytest.approx(upper, rel=1e-12)
        assert row.lower == pytest.approx(3.5449077, abs=1e-6)
        assert row.upper == pytest.approx(3.9088201, abs=1e-6)

    def test_n3_lower(self):
        row = bounds_row(3)
        assert row.lower == pytest.approx(3 * (4 * math.pi / 3) ** (1 / 3),
                                          rel=1e-12)

    def test_bracket_orders(self):
        for n in range(2, 60):
            row = bounds_row(n)
            assert row.lower < row.upper

    def test_hexagon_witness_in_bracket(self):
        row = bounds_row(2)
        assert row.lower <= HEX_PERIMETER <= row.upper

    def test_bcc_above_lower(self):
        lat = catalog_get("BCC").lattice().with_covolume(1.0)
        per = perimeter(build_cell(lat), euclidean())
        row = bounds_row(3)
        assert row.lower <= per <= row.upper

    def test_ratio_limit(self):
        row = bounds_row(200)
        assert abs(row.upper / row.lower - 2.0) <= 1e-2

    def test_asymptote_limit(self):
        row = bounds_row(200)
        assert abs(row.lower / row.asymptote - 1.0) <= 2e-2
        for n in range(50, 300, 25):
            r = bounds_row(n)
            assert 0.95 <= r.lower / r.asymptote <= 1.05


class TestMinkowskiHlawka:
    def test_hexagonal_beats_bound(self):
        lat = make_lattice(hexagonal_basis_unit())
        # rho ~ 0.53728 vs bound ~ 0.51166
        assert mh_lattice_check(lat)

    def test_z2_misses_bound(self):
        assert not mh_lattice_check(make_lattice(np.eye(2)))

    def test_d4_beats_bound(self):
        assert mh_lattice_check(catalog_get("D4").lattice())

    def test_bound_value_n2(self):
        row = bounds_row(2)
        expected = math.sqrt(math.pi**2 / 6) / (math.sqrt(math.pi) * math.sqrt(2))
        assert row.mh_packing_radius == pytest.approx(expected, rel=1e-12)
