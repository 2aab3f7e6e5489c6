import dataclasses
import math

import numpy as np
import pytest
from pydantic import ValidationError

from lorentz_euler import curves as cv
from lorentz_euler.config import DEFAULTS
from lorentz_euler.errors import DomainViolation, UnsupportedAlpha
from lorentz_euler.families import (
    CircleKind,
    CircleSpec,
    ContactType,
    EndKind,
    FamilyClass,
    FamilySpec,
    asymptote_data,
    circle_curve,
    classified_circles,
    family_chart,
    family_cone_coordinates,
    family_curve,
    family_rho,
    glued_mixed_curve,
    inverse_line_curves,
    log_derivatives,
    origin_parameter,
)
from lorentz_euler.minkowski import CausalCharacter, ConeRegion

GRID = DEFAULTS.cli.alpha_grid


def generic_members():
    for family in FamilyClass:
        for alpha in GRID:
            if alpha != family.critical_alpha:
                yield family, alpha


@pytest.mark.parametrize("family, alpha", list(generic_members()))
def test_family_members_are_stationary(family, alpha):
    spec = FamilySpec(family=family, alpha=alpha)
    curve = family_curve(spec)
    report = cv.stationary_residual(curve, alpha, spec.domain.grid(200))
    assert report.verdict
    assert {x.causal for x in report.samples} == {family.causal}
    assert {x.region for x in report.samples} == {family.region}


@pytest.mark.parametrize("family, c", [
    (FamilyClass.SPACELIKE_CMINUS, 0.5),
    (FamilyClass.SPACELIKE_CMINUS, -0.8),
    (FamilyClass.TIMELIKE_CPLUS, 0.5),
    (FamilyClass.SPACELIKE_CPLUS, 2.0),
    (FamilyClass.SPACELIKE_CPLUS, -1.5),
    (FamilyClass.TIMELIKE_CMINUS, 2.0),
])
def test_exponential_branches_are_stationary(family, c):
    spec = FamilySpec(family=family, alpha=family.critical_alpha, c=c)
    assert spec.exponential
    curve = family_curve(spec)
    report = cv.stationary_residual(curve, spec.alpha, spec.domain.grid(200))
    assert report.verdict
    assert {x.causal for x in report.samples} == {family.causal}


def test_perturbed_members_are_not_stationary():
    spec = FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=2.0)
    curve = family_curve(spec)
    s = spec.domain.grid(200)
    assert not cv.stationary_residual(curve, 2.01, s).verdict
    shifted = dataclasses.replace(curve, position=lambda t: curve.position(t) + np.array([0.1, 0.0]),
                                  polar=None)
    assert not cv.stationary_residual(shifted, 2.0, s).verdict


def test_family_spec_validation():
    with pytest.raises(ValidationError):
        FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=1.0)
    with pytest.raises(ValidationError):
        FamilySpec(family=FamilyClass.TIMELIKE_CPLUS, alpha=1.0, c=2.0)
    with pytest.raises(ValidationError):
        FamilySpec(family=FamilyClass.SPACELIKE_CPLUS, alpha=-1.0, c=0.5)
    with pytest.raises(ValidationError):
        FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=2.0, c=0.5)


def test_default_domains():
    assert FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=2.0).domain == (-2.0, 2.0, True, True)
    assert FamilySpec(family=FamilyClass.SPACELIKE_CPLUS, alpha=0.0).domain.lower > 0
    assert FamilySpec(family=FamilyClass.SPACELIKE_CPLUS, alpha=-3.0).domain.upper < 0
    steep = FamilySpec(family=FamilyClass.SPACELIKE_CPLUS, alpha=3.0).domain
    assert steep.lower == pytest.approx(0.1)
    assert steep.upper == pytest.approx(0.1 + 6.0 / 4.0)


@pytest.mark.parametrize("family, alpha", list(generic_members()))
def test_default_domains_keep_members_off_lightlike(family, alpha):
    spec = FamilySpec(family=family, alpha=alpha)
    *_, w2 = log_derivatives(spec, spec.domain.grid(200))
    assert np.min(np.abs(w2)) >= 5e-6


def test_near_lightlike_member_keeps_a_small_residual():
    # sech^2 drops to 6e-8 at the ends, where the curvature exceeds 1e5
    spec = FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=-2.0, domain=(-3.0, 3.0))
    report = cv.stationary_residual(family_curve(spec), -2.0, spec.domain.grid(400))
    assert report.verdict
    assert report.max_abs_residual <= 1e-8
    swapped = cv.swap_curve(family_curve(spec))
    report = cv.stationary_residual(swapped, -2.0, spec.domain.grid(400))
    assert report.verdict
    assert {x.causal for x in report.samples} == {CausalCharacter.TIMELIKE}


def test_sinh_members_need_their_half_line():
    spec = FamilySpec(family=FamilyClass.SPACELIKE_CPLUS, alpha=0.5, domain=(-1.0, 1.0))
    with pytest.raises(DomainViolation):
        family_curve(spec)
    with pytest.raises(DomainViolation):
        family_rho(spec, -0.5)


def test_family_rho_closed_form():
    assert family_rho(FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=2.0), 0.0) == \
        pytest.approx((1.0, 0.0, 1.0))
    spec = FamilySpec(family=FamilyClass.SPACELIKE_CPLUS, alpha=0.0)
    rho, rho1, _ = family_rho(spec, 1.0)
    assert rho == pytest.approx(1.0 / math.sinh(1.0))
    assert rho1 == pytest.approx(-math.cosh(1.0) / math.sinh(1.0) ** 2)


def test_family_chart():
    chart = family_chart(FamilySpec(family=FamilyClass.TIMELIKE_CPLUS, alpha=1.0, c=0.5))
    assert chart.region is ConeRegion.CPLUS_RIGHT
    assert chart.causal is CausalCharacter.TIMELIKE
    assert chart.critical_alpha == 1.0
    assert chart.exponential


def test_general_position_members(cminus_spec):
    curve = family_curve(cminus_spec, boost=0.8, scale=2.5)
    assert cv.stationary_residual(curve, 2.0, cminus_spec.domain.grid(100)).verdict


def test_asymptotic_lines_for_alpha_two(cminus_spec):
    data = asymptote_data(cminus_spec)
    assert [(line.slope, line.intercept) for line in data.lines] == \
        [pytest.approx((-1.0, 0.5)), pytest.approx((1.0, 0.5))]
    u, v = family_cone_coordinates(cminus_spec, 20.0)
    assert abs(v - 0.5) <= 1e-6
    u, v = family_cone_coordinates(cminus_spec, -20.0)
    assert abs(u - 0.5) <= 1e-6


def test_cone_contacts_for_alpha_one_half():
    spec = FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=0.5)
    contacts = asymptote_data(spec).contacts
    assert [tuple(e.point) for e in contacts] == [(-2.0, 2.0), (2.0, 2.0)]
    assert {e.contact for e in contacts} == {ContactType.TANGENTIAL}
    for s, point in ((40.0, (2.0, 2.0)), (-40.0, (-2.0, 2.0))):
        u, v = family_cone_coordinates(spec, s)
        assert math.hypot(0.5 * (u - v) - point[0], 0.5 * (u + v) - point[1]) <= 1e-6
    wide = FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=0.5, domain=(-20.0, 20.0))
    velocity = family_curve(wide).deriv1(20.0)
    assert velocity.y / velocity.x == pytest.approx(1.0, abs=1e-4)


def test_orthogonal_and_transversal_contacts():
    negative = asymptote_data(FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=-1.0))
    assert {e.contact for e in negative.contacts} == {ContactType.ORTHOGONAL}
    b = 2.0 ** -0.5
    assert negative.contacts[1].point == pytest.approx((b, b))
    spec = FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=-1.0, domain=(-10.0, 10.0))
    velocity = family_curve(spec).deriv1(8.0)
    assert velocity.y / velocity.x == pytest.approx(-math.tanh(8.0), rel=1e-9)
    zero = asymptote_data(FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=0.0))
    assert {e.contact for e in zero.contacts} == {ContactType.TRANSVERSAL}


def test_cplus_ends():
    ends = asymptote_data(FamilySpec(family=FamilyClass.SPACELIKE_CPLUS, alpha=-0.5)).ends
    assert ends[0].kind is EndKind.UNBOUNDED
    assert ends[1].kind is EndKind.CONE_CONTACT
    assert ends[1].contact is ContactType.TANGENTIAL
    ends = asymptote_data(FamilySpec(family=FamilyClass.SPACELIKE_CPLUS, alpha=-3.0)).ends
    assert ends[0].kind is EndKind.ASYMPTOTE
    assert ends[0].line.intercept == pytest.approx(2.0 ** -0.5)
    assert ends[1].kind is EndKind.ORIGIN


def test_timelike_asymptotes_are_swapped():
    spacelike = asymptote_data(FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=2.0))
    timelike = asymptote_data(FamilySpec(family=FamilyClass.TIMELIKE_CPLUS, alpha=2.0))
    for a, b in zip(spacelike.ends, timelike.ends):
        assert b.direction == (a.direction.y, a.direction.x)


@pytest.mark.parametrize("alpha", [1.0, 2.0, -2.0])
def test_classified_circles_are_stationary(alpha):
    specs = classified_circles(alpha, radius=1.5)
    assert len(specs) == 4
    for spec in specs:
        curve = circle_curve(spec)
        assert cv.stationary_residual(curve, alpha, spec.domain.grid(200)).verdict, spec.label()


def test_other_alphas_have_no_circles():
    assert classified_circles(0.3) == []


@pytest.mark.parametrize("spec, alpha", [
    (CircleSpec(kind=CircleKind.HYPERBOLIC, radius=1.0), 1.01),
    (CircleSpec(kind=CircleKind.PSEUDO, radius=1.0), 0.99),
    (CircleSpec(kind=CircleKind.HYPERBOLIC, center=(0.0, 0.01)), 1.0),
    (CircleSpec(kind=CircleKind.PSEUDO, center=(0.01, 0.0)), 1.0),
    (CircleSpec(kind=CircleKind.HYPERBOLIC, center=(math.sinh(0.5), math.cosh(0.5) + 0.01)), 2.0),
    (CircleSpec(kind=CircleKind.HYPERBOLIC, center=(math.sinh(0.5), math.cosh(0.5)), radius=1.01), 2.0),
    (CircleSpec(kind=CircleKind.PSEUDO, center=(math.cosh(0.5) + 0.01, math.sinh(0.5))), 2.0),
    (classified_circles(2.0)[0], 2.01),
    (classified_circles(-2.0)[0], -2.01),
    (classified_circles(-2.0)[2], -1.99),
])
def test_perturbed_circles_are_not_stationary(spec, alpha):
    curve = circle_curve(spec)
    assert not cv.stationary_residual(curve, alpha, spec.domain.grid(200)).verdict


def test_components_through_the_origin():
    spec = classified_circles(-2.0)[0]
    s0 = origin_parameter(spec)
    assert s0 is not None
    assert spec.domain.lower > s0
    assert origin_parameter(classified_circles(2.0)[0]) is None


def test_inverse_lines():
    cminus, cplus = inverse_line_curves()
    assert cv.stationary_residual(cminus, 2.0, cminus.domain.grid(200)).verdict
    assert cv.stationary_residual(cplus, -2.0, cplus.domain.grid(200, inset=0.01)).verdict
    assert not cv.stationary_residual(cminus, 1.0, cminus.domain.grid(200)).verdict


def test_glued_curve_for_alpha_minus_two():
    glued = glued_mixed_curve(-2.0)
    b = 2.0 ** (-2.0 / 3.0)
    first, second = glued.pieces[0].curve, glued.pieces[1].curve
    assert np.allclose(first.position(first.domain.upper), (b, b), atol=1e-10)
    assert np.allclose(second.position(second.domain.lower), (b, b), atol=1e-10)
    assert glued.closed
    assert glued.closure_gap() <= 1e-9
    assert [p.causal for p in glued.pieces] == [CausalCharacter.SPACELIKE, CausalCharacter.TIMELIKE] * 2
    assert [p.region for p in glued.pieces] == [ConeRegion.CMINUS_UPPER, ConeRegion.CPLUS_RIGHT,
                                                ConeRegion.CMINUS_LOWER, ConeRegion.CPLUS_LEFT]
    for piece in glued.pieces:
        s = piece.parameters(100, piece.sample_window())
        assert cv.stationary_residual(piece.curve, -2.0, s).verdict
    assert glued.trace(50).shape == (200, 2)


def test_glued_curve_for_alpha_two():
    glued = glued_mixed_curve(2.0)
    assert not glued.closed
    b = 2.0 ** (-2.0 / 3.0)
    assert glued.junctions[0] == pytest.approx((b, b))
    for piece in glued.pieces:
        s = piece.parameters(100, piece.sample_window())
        assert cv.stationary_residual(piece.curve, 2.0, s).verdict
    with pytest.raises(UnsupportedAlpha):
        glued_mixed_curve(1.0)
