import pytest

from paracert import strichartz
from paracert.special import Exponents
from paracert.symmetry import GeneralizedGaussian


@pytest.fixture(scope="session")
def e1():
    return Exponents.stein_tomas(1)


@pytest.fixture(scope="session")
def e2():
    return Exponents.stein_tomas(2)


@pytest.fixture(scope="session")
def verdict_d1(e1):
    """The full-size d=1 separation run, shared across test modules."""
    return strichartz.verify_separation(e1)


@pytest.fixture(scope="session")
def verdict_d2(e2):
    box = strichartz.polar_box(20.0, 4.0)
    return strichartz.verify_separation(e2, box, strichartz.grid_steps(box, 0.05))


@pytest.fixture(scope="session")
def mean_report_d1(e1):
    """Default-grid mean identity check, shared across test modules."""
    return strichartz.mean_identity_check(e1)


@pytest.fixture(scope="session")
def equi_gaps(e1):
    """Equidistribution gaps at the three reference frequencies."""
    g = GeneralizedGaussian.standard(1)
    return {
        eta: strichartz.equidistribution_gap(g, (eta,), e1)
        for eta in (2.0, 8.0, 32.0)
    }
