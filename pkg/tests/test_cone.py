"""Cone metrics, complex structure, flat oracle, global potential."""

import numpy as np
import pytest

from flagcone.cone import (
    BundleChartPoint,
    ConeChartPoint,
    bundle_round_trip_error,
    bundle_to_cone,
    cone_complex_structure_at,
    cone_kahler_closedness,
    cone_metric_at,
    cone_ricci_flat_check,
    cone_to_bundle,
    fiber_radius_sq,
    cone_radius_sq,
    flat_cone_residual,
    global_potential_identity,
)
from flagcone.errors import ChartError
from flagcone.sampling import angles, chart_points, fiber_values, radii
from flagcone.sasaki import sasaki_metric_at


def cone_points(spec, count, seed):
    pts = chart_points(spec.m, count, seed)
    rs = radii(count, seed)
    ths = angles(count, seed)
    return [
        ConeChartPoint(r=rs[i], theta=ths[i], z=tuple(pts[i]))
        for i in range(count)
    ]


class TestConeMetric:
    def test_slice_reproduces_sasaki(self, cp2_l3):
        z = [0.3 + 0.1j, -0.2 + 0.4j]
        p = ConeChartPoint(r=1.0, theta=0.2, z=tuple(z))
        g = cone_metric_at(cp2_l3, p)
        s = sasaki_metric_at(cp2_l3, z)
        assert abs(g[0, 0] - 1.0) < 1e-15
        assert np.abs(g[1:, 1:] - s.g).max() < 1e-13
        assert np.abs(g[0, 1:]).max() < 1e-15

    def test_radius_scaling(self, cp1):
        z = (0.2 - 0.3j,)
        g1 = cone_metric_at(cp1, ConeChartPoint(1.0, 0.0, z))
        g2 = cone_metric_at(cp1, ConeChartPoint(2.0, 0.0, z))
        assert np.abs(g2[1:, 1:] - 4.0 * g1[1:, 1:]).max() < 1e-13

    def test_invalid_radius(self):
        with pytest.raises(ChartError):
            ConeChartPoint(r=0.0, theta=0.0, z=(0.0,))


class TestRicciFlat:
    @pytest.mark.parametrize(
        "fixture", ["cp1", "cp1_l2", "cp2_l3", "gr24_l4", "su3t2_l2"]
    )
    def test_flat(self, fixture, request):
        spec = request.getfixturevalue(fixture)
        for p in cone_points(spec, 3, seed=7):
            assert cone_ricci_flat_check(spec, p) < 1e-7

    def test_einstein_iff_ricci_flat_pairing(self, cp1_l2):
        """Sasaki-Einstein residual and cone Ricci residual are both tiny."""
        from flagcone.sasaki import sasaki_einstein_residual

        z = [0.3 + 0.2j]
        p = ConeChartPoint(r=1.2, theta=0.1, z=tuple(z))
        assert sasaki_einstein_residual(cp1_l2, z) < 1e-10
        assert cone_ricci_flat_check(cp1_l2, p) < 1e-10

    def test_pairing_fails_together_off_einstein(self, cp1_l2):
        """A potential with the wrong exponent is Kahler but breaks the
        2(n+1) normalization: the Sasaki metric is then not Einstein and
        the cone is not Ricci-flat -- both residuals are large together."""
        import dataclasses

        from flagcone.sasaki import sasaki_einstein_residual

        distorted = dataclasses.replace(
            cp1_l2,
            factors=((cp1_l2.factors[0][0], 3),),  # exponent 3 instead of 2
        )
        z = [0.3 + 0.2j]
        p = ConeChartPoint(r=1.2, theta=0.1, z=tuple(z))
        assert sasaki_einstein_residual(distorted, z) > 1e-2
        assert cone_ricci_flat_check(distorted, p) > 1e-2


class TestFlatOracle:
    def test_residual(self, cp1):
        for p in cone_points(cp1, 5, seed=13):
            assert flat_cone_residual(cp1, p) < 1e-10

    def test_rejects_other_specs(self, cp1_l2):
        with pytest.raises(ChartError):
            flat_cone_residual(cp1_l2, ConeChartPoint(1.0, 0.0, (0.1,)))


class TestComplexStructure:
    @pytest.mark.parametrize("fixture", ["cp1", "cp2_l3", "su3t2_l2"])
    def test_compatibilities(self, fixture, request):
        spec = request.getfixturevalue(fixture)
        for p in cone_points(spec, 3, seed=19):
            cx = cone_complex_structure_at(spec, p)
            assert cx["J_squared"] < 1e-10
            assert cx["metric_compatibility"] < 1e-10
            assert cx["omega_reconstruction"] < 1e-10
            assert cx["omega_assembly"] < 1e-10

    def test_closedness(self, cp2_l3):
        for p in cone_points(cp2_l3, 2, seed=23):
            assert cone_kahler_closedness(cp2_l3, p) < 1e-9


class TestBundleChart:
    def test_radius_conventions_differ_by_two(self, cp1_l2):
        p = BundleChartPoint(z=(0.4 + 0.1j,), b=0.7 - 0.2j)
        assert abs(cone_radius_sq(cp1_l2, p) - 2.0 * fiber_radius_sq(cp1_l2, p)) < 1e-15

    def test_round_trip(self, cp1_l2, su3t2_l2):
        for spec in (cp1_l2, su3t2_l2):
            for p in cone_points(spec, 4, seed=29):
                assert bundle_round_trip_error(spec, p) < 1e-12

    def test_bundle_cone_inverse(self, cp2_l3):
        b = BundleChartPoint(z=(0.2 + 0.3j, -0.1), b=0.5 + 0.8j)
        back = cone_to_bundle(cp2_l3, bundle_to_cone(cp2_l3, b))
        assert abs(back.b - b.b) < 1e-13

    def test_zero_section_rejected(self, cp1_l2):
        with pytest.raises(ChartError):
            bundle_to_cone(cp1_l2, BundleChartPoint(z=(0.0,), b=0.0))


class TestGlobalPotential:
    def test_cp1_l2_special_point(self, cp1_l2):
        p = BundleChartPoint(z=(0.0,), b=1.0 + 0.0j)
        assert global_potential_identity(cp1_l2, p) < 1e-10

    @pytest.mark.parametrize(
        "fixture", ["cp1", "cp1_l2", "cp2", "cp2_l3", "su3t2_l2", "gr24_l4"]
    )
    def test_random_points(self, fixture, request):
        spec = request.getfixturevalue(fixture)
        pts = chart_points(spec.m, 3, seed=31)
        fibers = fiber_values(3, seed=31)
        for z, b in zip(pts, fibers):
            p = BundleChartPoint(z=tuple(z), b=b)
            assert global_potential_identity(spec, p) < 1e-8

    def test_zero_fiber_rejected(self, cp1_l2):
        with pytest.raises(ChartError):
            global_potential_identity(
                cp1_l2, BundleChartPoint(z=(0.1,), b=0.0)
            )
