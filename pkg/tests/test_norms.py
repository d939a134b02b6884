import math

import numpy as np
import pytest

from foamlat import (
    InvalidNormSpec,
    build_cell,
    eval_norm,
    euclidean,
    make_lattice,
    norm_from_json_dict,
    p_norm,
    perimeter,
    polyhedral,
    random_lattice,
    shortest_vector,
    weighted_euclidean,
)

from oracles import HEX_PERIMETER, hexagonal_basis_unit


class TestEvalNorm:
    def test_euclidean(self):
        assert eval_norm(euclidean(), [3.0, 4.0]) == 5.0

    def test_l1(self):
        assert eval_norm(p_norm(1.0), [3.0, 4.0]) == pytest.approx(7.0)

    def test_linf(self):
        assert eval_norm(p_norm(math.inf), [3.0, -4.0]) == 4.0

    def test_weighted(self):
        assert eval_norm(weighted_euclidean([4.0, 1.0]), [1.0, 0.0]) == 2.0

    def test_polyhedral(self):
        spec = polyhedral([[1.0, 0.0], [0.0, 1.0]], [1.0, 1.0])
        assert eval_norm(spec, [3.0, -4.0]) == pytest.approx(7.0)

    def test_large_p_no_overflow(self):
        val = eval_norm(p_norm(400.0), [1e10, 1e10])
        assert math.isfinite(val)
        assert val == pytest.approx(1e10, rel=1e-2)

    def test_invalid_specs(self):
        with pytest.raises(InvalidNormSpec):
            p_norm(0.5)
        with pytest.raises(InvalidNormSpec):
            weighted_euclidean([1.0, -1.0])
        with pytest.raises(InvalidNormSpec):
            polyhedral([[1.0, 0.0]], [1.0])  # does not span

    def test_homogeneity_and_evenness(self):
        rng = np.random.default_rng(9)
        specs = [euclidean(), p_norm(1.0), p_norm(2.5), p_norm(math.inf),
                 weighted_euclidean([0.3, 2.0, 1.1]),
                 polyhedral(rng.standard_normal((5, 3)), rng.random(5) + 0.1)]
        for spec in specs:
            for _ in range(50):
                x = rng.standard_normal(3)
                s = rng.standard_normal()
                fx = eval_norm(spec, x)
                assert fx > 0.0
                assert eval_norm(spec, s * x) == pytest.approx(abs(s) * fx,
                                                               rel=1e-10)
                assert eval_norm(spec, -x) == pytest.approx(fx, rel=1e-12)

    def test_euclidean_reproduces_length(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            x = rng.standard_normal(4)
            assert eval_norm(euclidean(), x) == float(np.linalg.norm(x))

    def test_json_round_trip(self):
        for spec in (euclidean(), p_norm(1.5), weighted_euclidean([1.0, 2.0]),
                     polyhedral([[1.0, 0.0], [0.0, 1.0]], [1.0, 2.0])):
            again = norm_from_json_dict(spec.to_json_dict())
            assert again.kind == spec.kind
            x = np.array([0.3, -1.7])
            assert eval_norm(again, x) == pytest.approx(eval_norm(spec, x))


class TestPerimeter:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_cube_cell(self, n):
        cell = build_cell(make_lattice(np.eye(n)))
        assert perimeter(cell, euclidean()) == pytest.approx(2.0 * n,
                                                             rel=1e-12)

    def test_hexagon(self):
        cell = build_cell(make_lattice(hexagonal_basis_unit()))
        assert perimeter(cell, euclidean()) == pytest.approx(HEX_PERIMETER,
                                                             rel=1e-10)

    def test_weighted_square(self):
        cell = build_cell(make_lattice(np.eye(2)))
        spec = weighted_euclidean([4.0, 1.0])
        # phi(e1) * 2 + phi(e2) * 2 = 2*2 + 1*2
        assert perimeter(cell, spec) == pytest.approx(6.0, rel=1e-12)

    def test_euclidean_is_measure_sum(self):
        rng = np.random.default_rng(31)
        for n in (2, 3):
            cell = build_cell(random_lattice(n, rng))
            assert perimeter(cell, euclidean()) == pytest.approx(
                sum(f.measure for f in cell.facets), rel=1e-12)

    def test_scaling_law(self):
        lat = make_lattice(hexagonal_basis_unit())
        s = 1.9
        p1 = perimeter(build_cell(lat), euclidean())
        p2 = perimeter(build_cell(lat.scaled(s)), euclidean())
        assert p2 == pytest.approx(s * p1, rel=1e-10)
        lat3 = make_lattice(np.eye(3))
        p1 = perimeter(build_cell(lat3), euclidean())
        p2 = perimeter(build_cell(lat3.scaled(s)), euclidean())
        assert p2 == pytest.approx(s**2 * p1, rel=1e-10)

    def test_monotone_comparability(self):
        rng = np.random.default_rng(17)
        for n in (2, 3):
            cell = build_cell(random_lattice(n, rng))
            # euclidean <= l1 pointwise, so the perimeters order the same way.
            assert perimeter(cell, euclidean()) <= perimeter(cell, p_norm(1.0)) \
                + 1e-12

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_packing_radius_inequalities(self, n):
        rng = np.random.default_rng(300 + n)
        for _ in range(100):
            lat = random_lattice(n, rng)
            cell = build_cell(lat)
            per = perimeter(cell, euclidean())
            inv = shortest_vector(lat)
            m = lat.covolume
            # lambda >= 2m/Per, equivalently Per >= m/rho.
            assert inv.lambda_min >= 2.0 * m / per - 1e-10
            assert per <= n * m / inv.packing_radius + 1e-10
