import dataclasses
import math

import numpy as np
import pytest

from lorentz_euler import curves as cv
from lorentz_euler import minkowski as mk
from lorentz_euler.curves import Interval, QuadratureSpec
from lorentz_euler.errors import (
    ConeContact,
    DegenerateSpeed,
    DomainViolation,
    NonpositiveScale,
    NotSpacelike,
    NotSpacelikeGraph,
    WrongRegion,
)
from lorentz_euler.families import (
    CircleKind,
    CircleSpec,
    FamilyClass,
    FamilySpec,
    circle_curve,
    family_curve,
    family_rho,
    line_through_origin,
)
from lorentz_euler.minkowski import CausalCharacter, ConeRegion


def test_interval_parse():
    assert Interval.parse("-3:3") == Interval(-3.0, 3.0)
    with pytest.raises(ValueError):
        Interval.parse("3:1")
    with pytest.raises(ValueError):
        Interval.parse("a:b")


def test_interval_open_ends():
    d = Interval(0.0, 2.0, closed_lower=False)
    assert not d.contains(0.0)
    assert d.contains([1e-6, 2.0])
    grid = d.grid(5)
    assert grid[0] > 0.0
    assert grid[-1] == 2.0
    assert Interval(0.5, 1.0).is_within(d)


def test_param_curve_checks_its_domain(unit_circle):
    with pytest.raises(DomainViolation):
        unit_circle.eval(5.0)
    with pytest.raises(DomainViolation):
        unit_circle.restrict(Interval(0.0, 3.0))
    assert unit_circle.restrict(Interval(0.0, 1.0)).domain == Interval(0.0, 1.0)


def test_frame_of_a_hyperbolic_circle():
    circle = circle_curve(CircleSpec(kind=CircleKind.HYPERBOLIC, radius=2.0))
    frame = cv.frame_at(circle, 0.3)
    assert frame.kappa == pytest.approx(0.5)
    assert frame.epsilon == 1.0
    assert frame.tangent == pytest.approx((math.cosh(0.3), math.sinh(0.3)))
    assert frame.normal == pytest.approx((math.sinh(0.3), math.cosh(0.3)))


def test_polar_curvature_matches_frames(cminus_spec, cminus_curve):
    s = np.linspace(-1.5, 1.5, 7)
    rho, rho1, rho2 = family_rho(cminus_spec, s)
    kappa = cv.polar_curvature(rho, rho1, rho2, ConeRegion.CMINUS_UPPER)
    _, velocity, acceleration = cminus_curve.sample(s)
    assert np.allclose(kappa, cv.frames(velocity, acceleration).kappa, rtol=1e-10)


def test_polar_curvature_rejects_lightlike_speed():
    with pytest.raises(DegenerateSpeed):
        cv.polar_curvature(1.0, 1.0, 0.0, ConeRegion.CMINUS_UPPER)


def test_derivative_audit(cminus_curve):
    assert cv.derivative_audit(cminus_curve, np.linspace(-1.5, 1.5, 9)).passed
    broken = dataclasses.replace(cminus_curve, acceleration=cminus_curve.velocity)
    audit = cv.derivative_audit(broken, np.linspace(-1.5, 1.5, 9))
    assert not audit.passed
    assert audit.deriv1_error < 1e-6


def test_energy_of_a_segment_is_the_moment_of_inertia():
    segment = cv.line_curve((1.0, 0.0), (1.0, 0.0), Interval(0.0, 1.0))
    assert cv.energy(segment, 2.0) == pytest.approx(7.0 / 3.0, rel=1e-12)


def test_energy_at_alpha_zero_is_the_length():
    segment = cv.line_curve((2.0, 0.5), (1.0, 0.5), Interval(0.0, 1.0))
    assert cv.energy(segment, 0.0) == pytest.approx(math.sqrt(0.75), rel=1e-12)


def test_energy_scaling_and_boost_invariance(unit_circle):
    energy = cv.energy(unit_circle, 1.5)
    assert energy == pytest.approx(4.0, rel=1e-10)
    assert cv.energy(cv.dilate_curve(unit_circle, 2.0), 1.5) == pytest.approx(2.0 ** 2.5 * energy, rel=1e-9)
    assert cv.energy(cv.boost_curve(unit_circle, 0.7), 1.5) == pytest.approx(energy, rel=1e-9)


def test_energy_without_refinement():
    segment = cv.line_curve((1.0, 0.0), (1.0, 0.0), Interval(0.0, 1.0))
    quad = QuadratureSpec(panels=4, refine=False)
    assert cv.energy(segment, 2.0, quad) == pytest.approx(7.0 / 3.0, rel=1e-12)


def test_energy_needs_a_spacelike_curve_off_the_cone():
    pseudo = circle_curve(CircleSpec(kind=CircleKind.PSEUDO))
    with pytest.raises(NotSpacelike):
        cv.energy(pseudo, 1.0)
    crossing = cv.line_curve((0.0, 0.5), (1.0, 0.0), Interval(0.0, 1.0))
    with pytest.raises(ConeContact):
        cv.energy(crossing, 1.0)


def test_residual_of_origin_circles(unit_circle):
    s = unit_circle.domain.grid(50)
    report = cv.stationary_residual(unit_circle, 1.0, s)
    assert report.verdict
    assert report.max_abs_residual < 1e-12
    assert {x.causal for x in report.samples} == {CausalCharacter.SPACELIKE}
    assert {x.region for x in report.samples} == {ConeRegion.CMINUS_UPPER}
    off = cv.stationary_residual(unit_circle, 2.0, s)
    assert not off.verdict
    assert off.max_abs_residual == pytest.approx(1.0)


def test_residual_of_lines():
    s = np.linspace(0.5, 2.0, 20)
    for alpha in (-2.0, 0.0, 3.0):
        assert cv.stationary_residual(line_through_origin((1.0, 0.3)), alpha, s).verdict
    missing = cv.line_curve((0.0, 1.0), (1.0, 0.0), Interval(-0.5, 0.5))
    assert not cv.stationary_residual(missing, 1.0, np.linspace(-0.5, 0.5, 11)).verdict


def test_residual_rejects_cone_samples():
    through = cv.line_curve((0.0, 0.0), (1.0, 0.2), Interval(0.0, 1.0))
    with pytest.raises(ConeContact):
        cv.stationary_residual(through, 1.0, [0.0, 0.5])


@pytest.mark.parametrize("alpha", [0.5, 3.0])
def test_swap_image_is_timelike_stationary(alpha):
    spec = FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=alpha)
    image = cv.swap_curve(family_curve(spec))
    report = cv.stationary_residual(image, alpha, spec.domain.grid(100))
    assert report.verdict
    assert {x.causal for x in report.samples} == {CausalCharacter.TIMELIKE}
    assert {x.region for x in report.samples} == {ConeRegion.CPLUS_RIGHT}


@pytest.mark.parametrize("family, alpha, domain, inverted", [
    (FamilyClass.SPACELIKE_CMINUS, 0.5, (-2.0, 2.0), 1.5),
    (FamilyClass.SPACELIKE_CMINUS, 3.0, (-2.0, 2.0), -1.0),
    (FamilyClass.SPACELIKE_CPLUS, 0.5, (0.2, 2.0), -2.5),
    (FamilyClass.SPACELIKE_CPLUS, -3.0, (-2.0, -0.2), 1.0),
])
def test_inversion_image_is_stationary(family, alpha, domain, inverted):
    spec = FamilySpec(family=family, alpha=alpha, domain=domain)
    image = cv.inversion_curve(family_curve(spec))
    s = spec.domain.grid(100)
    assert cv.derivative_audit(image, s[1:-1]).passed
    assert cv.stationary_residual(image, inverted, s).verdict
    assert not cv.stationary_residual(image, alpha, s).verdict


def test_curve_transforms_keep_stationarity(unit_circle):
    s = unit_circle.domain.grid(30)
    for image in (cv.boost_curve(unit_circle, 1.2), cv.dilate_curve(unit_circle, 3.0),
                  cv.reflect_x_curve(unit_circle), cv.reflect_y_curve(unit_circle),
                  cv.reversed_curve(unit_circle)):
        assert cv.stationary_residual(image, 1.0, image.domain.grid(30)).verdict
    with pytest.raises(NonpositiveScale):
        cv.dilate_curve(unit_circle, -1.0)
    assert cv.reflect_x_curve(unit_circle).eval(s[3]).y < 0


def test_reparametrize_keeps_the_trace(unit_circle):
    fast = cv.reparametrize(unit_circle, lambda t: 2.0 * t, lambda t: 2.0 + 0.0 * t,
                            lambda t: 0.0 * t, Interval(-1.0, 1.0))
    assert fast.eval(0.5) == pytest.approx(unit_circle.eval(1.0))
    assert cv.derivative_audit(fast, np.linspace(-0.9, 0.9, 5)).passed
    assert cv.stationary_residual(fast, 1.0, fast.domain.grid(20)).verdict


def _images(curve):
    yield curve
    yield cv.boost_curve(curve, 0.7)
    yield cv.dilate_curve(curve, 1.7)
    yield cv.reflect_x_curve(curve)
    yield cv.reflect_y_curve(curve)
    yield cv.swap_curve(cv.boost_curve(curve, -0.4))
    yield cv.inversion_curve(cv.dilate_curve(curve, 0.6))
    yield cv.reversed_curve(cv.reflect_y_curve(curve))


@pytest.mark.parametrize("family", list(FamilyClass))
def test_closed_form_residual_matches_the_sampled_one(family):
    spec = FamilySpec(family=family, alpha=2.0, domain=(0.3, 0.8))
    for image in _images(family_curve(spec)):
        assert image.polar is not None
        plain = dataclasses.replace(image, polar=None)
        s = image.domain.grid(9)
        exact, sampled = cv.residual_values(image, 1.3, s), cv.residual_values(plain, 1.3, s)
        assert np.allclose(exact.residual, sampled.residual, rtol=1e-8, atol=1e-9)
        assert np.allclose(exact.kappa, sampled.kappa, rtol=1e-8, atol=1e-9)
        assert exact.causal == sampled.causal
        assert np.max(np.abs(exact.residual)) > 1e-3


def test_matrices_outside_the_conformal_group_drop_polar_data(cminus_curve):
    assert cv.conformal_action(mk.SWAP) == (-1.0, -1)
    assert cv.conformal_action(2.0 * np.eye(2)) == pytest.approx((0.5, 1))
    assert cv.conformal_action(np.array([[1.0, 0.5], [0.0, 1.0]])) is None
    sheared = cv.linear_image(cminus_curve, np.array([[1.0, 0.5], [0.0, 1.0]]))
    assert sheared.polar is None


def test_graph_el_residual_of_the_hyperbola():
    def y(x):
        return np.sqrt(x * x + 1.0)

    def y1(x):
        return x / y(x)

    def y2(x):
        return 1.0 / y(x) ** 3

    for x in (-1.0, 0.0, 0.7):
        assert cv.graph_el_residual(y, y1, y2, 1.0, x) == pytest.approx(0.0, abs=1e-12)
        assert cv.graph_el_residual(y, y1, y2, 2.0, x) == pytest.approx(-1.0)
    graph = cv.graph_curve(y, y1, y2, Interval(-1.0, 1.0))
    assert cv.stationary_residual(graph, 1.0, graph.domain.grid(15)).verdict


def test_graph_el_residual_errors():
    def line(x):
        return 0.5 * x

    def steep(x):
        return 2.0 * x

    def slope(k):
        return lambda x: k + 0.0 * x

    with pytest.raises(NotSpacelikeGraph):
        cv.graph_el_residual(steep, slope(2.0), slope(0.0), 1.0, 1.0)
    with pytest.raises(WrongRegion):
        cv.graph_el_residual(line, slope(0.5), slope(0.0), 1.0, 1.0)
