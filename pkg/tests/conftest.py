import numpy as np
import pytest

from cmc_kit import surfaces
from cmc_kit.boundary import boundary_profile


@pytest.fixture(scope="session")
def enneper():
    return surfaces.enneper()


@pytest.fixture(scope="session")
def hemisphere():
    return surfaces.sphere_cap(1.0)


@pytest.fixture(scope="session")
def cylinder():
    return surfaces.cylinder_annulus(1.0)


@pytest.fixture(scope="session")
def enneper_profile(enneper):
    return boundary_profile(enneper, n=512)


@pytest.fixture(scope="session")
def hemisphere_profile(hemisphere):
    return boundary_profile(hemisphere, n=512)


@pytest.fixture(scope="session")
def cylinder_profile(cylinder):
    return boundary_profile(cylinder, n=512)


def cmc_discs():
    rng = np.random.default_rng(1234)
    out = [surfaces.sphere_cap(H) for H in (0.5, 1.0, 2.0)]
    out += [surfaces.sphere_cap(1.0, 0.6), surfaces.plane_disc(), surfaces.enneper()]
    out += [surfaces.weierstrass_minimal(surfaces.random_weierstrass_data(rng)) for _ in range(3)]
    return out


CMC_DISCS = cmc_discs()
CMC_IDS = [f"{s.kind.value}-{k}" for k, s in enumerate(CMC_DISCS)]
