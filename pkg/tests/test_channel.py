import math

import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

import oracle
from vlclink.channel import (
    AngleConvention,
    LambertianSource,
    OpticalFrontEnd,
    concentrator_gain,
    effective_area,
    incidence_factor,
    lambertian_order,
    los_gain,
    path_loss_db,
    radiant_intensity,
    received_power,
)
from vlclink.errors import InfiniteLoss, InvalidAngle
from vlclink.geometry import LinkGeometry, LuminairePose, Point3, ReceiverPose, link_geometry

LED = LuminairePose(Point3(2.5, 2.5, 3.0))
SRC = LambertianSource(15.0, 1.3, 60.0)
FE = OpticalFrontEnd(area=2.25e-6, fov=90.0, filter_gain=1.0, refractive_index=1.5, responsivity=0.6)
GEOMETRIC = AngleConvention.geometric()
TRAJ = [(v, v) for v in (2.50, 2.23, 1.96, 1.69, 1.42, 1.15, 0.88, 0.61, 0.34, 0.07)]


def geom(x, y):
    return link_geometry(LED, ReceiverPose(Point3(x, y, 0.0)))


CENTER = geom(2.5, 2.5)
CORNER = geom(0.07, 0.07)


class TestLambertianOrder:
    def test_sixty_degrees(self):
        assert lambertian_order(60.0) == pytest.approx(1.0, abs=1e-12)

    def test_forty_five_degrees(self):
        assert lambertian_order(45.0) == pytest.approx(2.0, abs=1e-12)

    def test_thirty_degrees(self):
        # -ln2 / ln cos30 at 40 digits
        assert lambertian_order(30.0) == pytest.approx(4.81884167931, abs=1e-9)

    @pytest.mark.parametrize("angle", [0.0, 90.0, -5.0, 120.0])
    def test_out_of_range(self, angle):
        with pytest.raises(InvalidAngle):
            lambertian_order(angle)

    @given(st.floats(1, 88), st.floats(1, 88))
    def test_strictly_decreasing(self, a, b):
        if abs(a - b) > 1e-6:
            lo, hi = sorted((a, b))
            assert lambertian_order(lo) > lambertian_order(hi)

    def test_source_from_half_power_angle(self):
        src = LambertianSource.from_half_power_angle(10.0, 60.0)
        assert src.lambertian_order == pytest.approx(1.0, abs=1e-12)


class TestRadiantIntensity:
    def test_boresight_m1(self):
        assert radiant_intensity(1.0, 1.0) == pytest.approx(1 / math.pi, rel=1e-15)

    def test_boresight_m13(self):
        assert radiant_intensity(1.3, 1.0) == pytest.approx(0.366056369111, rel=1e-11)

    @pytest.mark.parametrize("m", [0.5, 1.0, 1.3, 4.0])
    def test_grazing(self, m):
        assert radiant_intensity(m, 0.0) == 0.0

    @pytest.mark.parametrize("m", [1.0, 1.3, 2.0, 4.0])
    def test_hemisphere_normalisation(self, m):
        total, _ = integrate.quad(
            lambda phi: radiant_intensity(m, math.cos(phi)) * math.sin(phi), 0, math.pi / 2,
            epsabs=1e-13, epsrel=1e-13,
        )
        assert 2 * math.pi * total == pytest.approx(1.0, abs=1e-6)


class TestConcentrator:
    def test_table_front_end(self):
        assert concentrator_gain(1.5, 90.0, 0.0) == 2.25

    def test_narrow_fov(self):
        assert concentrator_gain(1.5, 60.0, 30.0) == pytest.approx(3.0, rel=1e-14)

    def test_outside_fov(self):
        assert concentrator_gain(1.5, 90.0, 91.0) == 0.0

    @given(st.floats(0, 90))
    def test_independent_of_theta_inside(self, theta):
        assert concentrator_gain(1.5, 90.0, theta) == 2.25


class TestEffectiveArea:
    def test_boresight(self):
        assert effective_area(FE, 1.0, 0.0) == pytest.approx(5.0625e-6, rel=1e-14)

    def test_cutoff(self):
        fe = OpticalFrontEnd(area=2.25e-6, fov=60.0)
        assert effective_area(fe, math.cos(math.radians(60.0001)), 60.0001) == 0.0
        assert effective_area(fe, 0.5, 60.0) > 0

    def test_fov_boundary_cosine_zero(self):
        assert effective_area(FE, 0.0, 90.0) == 0.0


class TestIncidenceFactor:
    def test_elevation_90(self):
        assert incidence_factor(AngleConvention.fixed_elevation(90), CORNER) == (1.0, 0.0)

    def test_elevation_60(self):
        c, t = incidence_factor(AngleConvention.fixed_elevation(60), CORNER)
        assert c == pytest.approx(0.866025403784, rel=1e-11)
        assert t == pytest.approx(30.0, abs=1e-12)

    def test_geometric_corner(self):
        c, t = incidence_factor(GEOMETRIC, CORNER)
        assert c == pytest.approx(0.657638608244, rel=1e-11)
        assert t == pytest.approx(48.8799726761, abs=1e-8)

    @pytest.mark.parametrize("bad", [0.0, -10.0, 90.5])
    def test_invalid_elevation(self, bad):
        with pytest.raises(InvalidAngle):
            AngleConvention.fixed_elevation(bad)


class TestReceivedPower:
    def test_center(self):
        assert received_power(SRC, FE, CENTER, GEOMETRIC) == pytest.approx(3.08860061438e-6, rel=1e-10)

    def test_corner(self):
        assert received_power(SRC, FE, CORNER, GEOMETRIC) == pytest.approx(5.09456550005e-7, rel=1e-10)

    def test_zero_power(self):
        assert received_power(LambertianSource(0.0, 1.3), FE, CENTER, GEOMETRIC) == 0.0

    @given(st.floats(0.01, 100), st.sampled_from(TRAJ))
    def test_linear_in_transmit_power(self, pt, xy):
        g = geom(*xy)
        one = received_power(LambertianSource(pt, 1.3), FE, g, GEOMETRIC)
        two = received_power(LambertianSource(2 * pt, 1.3), FE, g, GEOMETRIC)
        assert two == 2 * one

    def test_decreasing_along_trajectory(self):
        p = [received_power(SRC, FE, geom(*xy), GEOMETRIC) for xy in TRAJ]
        assert all(b < a for a, b in zip(p, p[1:]))

    @pytest.mark.parametrize("xy", TRAJ)
    def test_increasing_in_elevation(self, xy):
        g = geom(*xy)
        p = [
            received_power(SRC, FE, g, AngleConvention.fixed_elevation(t))
            for t in (1, 10, 30, 60, 70, 80, 89, 90)
        ]
        assert all(b > a for a, b in zip(p, p[1:]))

    def test_outside_fov(self):
        fe = OpticalFrontEnd(area=2.25e-6, fov=30.0)
        assert received_power(SRC, fe, CORNER, GEOMETRIC) == 0.0
        assert los_gain(1.3, fe.area, CORNER, GEOMETRIC, fe.fov) == 0.0
        assert received_power(SRC, fe, CENTER, GEOMETRIC) > 0

    @given(st.floats(0.2, 6), st.sampled_from(TRAJ), st.sampled_from([None, 60, 75, 90]))
    def test_gain_matches_power_kernel(self, m, xy, elev):
        """With h = 1 and unit concentrator gain both paths reduce to one kernel."""
        conv = GEOMETRIC if elev is None else AngleConvention.fixed_elevation(elev)
        fe = OpticalFrontEnd(area=2.25e-6, fov=90.0, filter_gain=1.0, refractive_index=1.0)
        g = geom(*xy)
        p = received_power(LambertianSource(7.0, m), fe, g, conv) / 7.0
        assert los_gain(m, fe.area, g, conv) == pytest.approx(p, rel=1e-12)


class TestLosGain:
    def test_center(self):
        assert los_gain(1.3, 2.25e-6, CENTER, GEOMETRIC) == pytest.approx(9.15140922778e-8, rel=1e-10)

    def test_corner(self):
        assert los_gain(1.3, 2.25e-6, CORNER, GEOMETRIC) == pytest.approx(1.5095008889e-8, rel=1e-9)

    def test_grazing(self):
        g = LinkGeometry(distance=2.0, cos_irradiance=0.0, cos_incidence_geometric=0.0)
        assert los_gain(1.3, 2.25e-6, g, AngleConvention.fixed_elevation(90)) == 0.0

    def test_decreasing_in_order_at_corner(self):
        gains = [los_gain(m, 2.25e-6, CORNER, GEOMETRIC) for m in (1, 2, 3, 4)]
        assert all(b < a for a, b in zip(gains, gains[1:]))

    @given(
        st.sampled_from(TRAJ[1:]),
        st.floats(0.2, 8),
        st.floats(0.01, 4),
    )
    def test_order_dependence_off_boresight(self, xy, m1, dm):
        # (m+1) cos^m is not monotone: raising m lowers the gain only when
        # cos^(m2 - m1) < (m1 + 1) / (m2 + 1)
        g = geom(*xy)
        m2 = m1 + dm
        lower = los_gain(m2, 2.25e-6, g, GEOMETRIC) < los_gain(m1, 2.25e-6, g, GEOMETRIC)
        ratio = g.cos_irradiance**dm * (m2 + 1) / (m1 + 1)
        if abs(ratio - 1) > 1e-9:
            assert lower == (ratio < 1)

    def test_increasing_in_order_at_boresight(self):
        gains = [los_gain(m, 2.25e-6, CENTER, GEOMETRIC) for m in (1, 2, 3, 4)]
        assert all(b > a for a, b in zip(gains, gains[1:]))

    def test_matches_oracle_along_trajectory(self):
        for pt in oracle.table_ii_points():
            want = oracle.link(pt)["gain"]
            got = los_gain(1.3, 2.25e-6, geom(float(pt[0]), float(pt[1])), GEOMETRIC)
            assert got == pytest.approx(float(want), rel=1e-12)


class TestPathLoss:
    def test_unity(self):
        assert path_loss_db(1.0) == 0.0

    def test_center_gain(self):
        # -10 log10(9.152e-8)
        assert path_loss_db(9.152e-8) == pytest.approx(70.38483989, abs=1e-6)

    def test_zero(self):
        with pytest.raises(InfiniteLoss):
            path_loss_db(0.0)

    def test_increasing_along_trajectory(self):
        pl = [path_loss_db(los_gain(1.3, 2.25e-6, geom(*xy), GEOMETRIC)) for xy in TRAJ]
        assert all(b > a for a, b in zip(pl, pl[1:]))

    @given(st.floats(1e-12, 1.0), st.floats(1e-12, 1.0))
    def test_strictly_decreasing(self, a, b):
        if a < b:
            assert path_loss_db(a) > path_loss_db(b)
