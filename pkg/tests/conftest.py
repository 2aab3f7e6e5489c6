"""
Shared fixtures for the lorentz_euler test suite.

Read more about conftest.py under:
- https://docs.pytest.org/en/stable/fixture.html
"""
import matplotlib

matplotlib.use("Agg")

import pytest  # noqa: E402

from lorentz_euler.families import (  # noqa: E402
    CircleKind,
    CircleSpec,
    FamilyClass,
    FamilySpec,
    circle_curve,
    family_curve,
)


@pytest.fixture
def unit_circle():
    """The origin-centered hyperbolic circle of radius 1, 1-stationary."""
    return circle_curve(CircleSpec(kind=CircleKind.HYPERBOLIC))


@pytest.fixture
def cminus_spec():
    return FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=2.0)


@pytest.fixture
def cminus_curve(cminus_spec):
    """rho = cosh s in the upper component of <p,p> < 0, 2-stationary."""
    return family_curve(cminus_spec)
