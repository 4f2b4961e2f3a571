import numpy as np
import pytest

from cmc_kit import capillary, surfaces
from cmc_kit.boundary import boundary_profile
from cmc_kit.capillary import CapillaryVerdict, TJVerdict
from cmc_kit.errors import PreconditionError
from cmc_kit.jets import dot

from conftest import CMC_DISCS, CMC_IDS

ANGLES = (np.pi / 6, np.pi / 3, np.pi / 2, 2 * np.pi / 3)
CASES = CMC_DISCS + [surfaces.cylinder_annulus(1.0)]
CASE_IDS = CMC_IDS + ["cylinder"]


def test_zero_angle_support_is_tangent(enneper_profile):
    p = enneper_profile
    s = capillary.ruled_support(p, 0.0)
    np.testing.assert_array_equal(s.N2, p.N)
    np.testing.assert_array_equal(s.ruling, p.Y)
    c = capillary.compare_torsions(s)
    assert c.max_torsion_gap <= 1e-10
    np.testing.assert_allclose(c.angle_cos, 1.0, atol=1e-14)


def test_orthogonal_support(enneper_profile):
    p = enneper_profile
    s = capillary.ruled_support(p, np.pi / 2)
    np.testing.assert_allclose(s.ruling, p.N, atol=1e-15)
    np.testing.assert_allclose(s.N2, -p.Y, atol=1e-15)
    assert capillary.compare_torsions(s).max_torsion_gap <= 1e-8


def test_support_points(hemisphere_profile):
    s = capillary.ruled_support(hemisphere_profile, np.pi / 2)
    np.testing.assert_array_equal(s.points(0.0), hemisphere_profile.gamma)
    assert s.r_max > 0


@pytest.mark.parametrize("theta", ANGLES)
def test_normals_meet_at_contact_angle(enneper_profile, theta):
    p = enneper_profile
    s = capillary.ruled_support(p, theta)
    np.testing.assert_allclose(dot(p.N, s.N2), np.cos(theta), atol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(s.N2, axis=1), 1, atol=1e-12)
    np.testing.assert_allclose(dot(s.N2, s.ruling), 0, atol=1e-12)
    np.testing.assert_allclose(dot(s.N2, p.X), 0, atol=1e-12)


@pytest.mark.parametrize("s", CASES, ids=CASE_IDS)
def test_constant_angle_gives_equal_torsion(s):
    p = boundary_profile(s, n=512)
    for theta in ANGLES:
        c = capillary.compare_torsions(capillary.ruled_support(p, theta))
        assert c.max_torsion_gap <= 1e-8 * max(1.0, p.curvature_scale(s.nominal_H))
        assert capillary.tj_check(c) is TJVerdict.CONSTANT_ANGLE_EQUAL_TORSION


@pytest.mark.parametrize("fixture,nu", [("enneper_profile", 2.0), ("hemisphere_profile", 1.0)])
def test_modulated_angle_gap_matches_oracle(request, fixture, nu):
    # tau_S - tau_M = d theta / ds = 0.2 cos t / nu for theta = pi/3 + 0.2 sin t
    p = request.getfixturevalue(fixture)
    c = capillary.compare_torsions(capillary.ruled_support(p, lambda t: np.pi / 3 + 0.2 * np.sin(t)))
    np.testing.assert_allclose(c.tau_S - c.tau_M, 0.2 * np.cos(p.t) / nu, atol=1e-10)
    assert c.max_torsion_gap == pytest.approx(0.2 / nu, abs=1e-10)
    assert c.angle_range == pytest.approx(0.4, abs=1e-6)
    assert capillary.tj_check(c) is TJVerdict.VARYING_ANGLE_UNEQUAL_TORSION


def test_tj_check_detects_corruption(enneper_profile):
    c = capillary.compare_torsions(capillary.ruled_support(enneper_profile, np.pi / 4))
    bad = capillary.TorsionComparison(c.t, c.tau_M, c.tau_S + 0.1, c.angle_cos, c.angle_sin)
    assert capillary.tj_check(bad) is TJVerdict.INCONSISTENT


def test_capillary_umbilicity_hemisphere(hemisphere_profile):
    s = capillary.ruled_support(hemisphere_profile, np.pi / 2)
    assert capillary.capillary_umbilicity(hemisphere_profile, s, 1.0) is CapillaryVerdict.UMBILIC_CERTIFIED


def test_capillary_umbilicity_plane():
    p = boundary_profile(surfaces.plane_disc(), n=256)
    s = capillary.ruled_support(p, np.pi / 4)
    assert capillary.capillary_umbilicity(p, s, 0.0) is CapillaryVerdict.UMBILIC_CERTIFIED


def test_capillary_umbilicity_enneper(enneper_profile):
    s = capillary.ruled_support(enneper_profile, np.pi / 3)
    assert capillary.capillary_umbilicity(enneper_profile, s, 0.0) is CapillaryVerdict.NON_UMBILIC


def test_capillary_umbilicity_requires_constant_angle(enneper_profile):
    s = capillary.ruled_support(enneper_profile, lambda t: 1 + 0.1 * np.cos(t))
    with pytest.raises(PreconditionError):
        capillary.capillary_umbilicity(enneper_profile, s, 0.0)


def test_comparison_csv(enneper):
    p = boundary_profile(enneper, n=64)
    text = capillary.compare_torsions(capillary.ruled_support(p, 1.0)).to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == ",".join(capillary.CSV_COLUMNS)
    assert len(lines) == 65
