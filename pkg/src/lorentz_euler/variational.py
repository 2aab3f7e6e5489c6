"""
Direct variational checks of the Euler energy: first variations along compactly
supported bump fields, and the comparison of a segment through two points collinear
with the origin against random spacelike competitors joining the same points.

Competitors are built in the hyperbolic polar chart rho (+-cosh theta, sinh theta) of
the region <p,p> > 0, where the speed is rho'^2 - rho^2 theta'^2. A spacelike curve in
that region therefore has rho' != 0 everywhere, so rho is strictly monotone along any
admissible competitor.
"""
import math
import typing
from typing import NamedTuple

import numpy as np
from loguru import logger
from pydantic import BaseModel

from lorentz_euler import curves as cv
from lorentz_euler import minkowski as mk
from lorentz_euler.config import DEFAULTS
from lorentz_euler.curves import Interval, ParamCurve, QuadratureSpec
from lorentz_euler.errors import (
    ConeContact,
    InadmissiblePerturbation,
    InvalidEndpoints,
    NotSpacelike,
)
from lorentz_euler.minkowski import ChartSign, Vec2L


_ORIGIN_CLEARANCE = 0.1  # competitors through the origin are straight on t < this


class PerturbationSpec(NamedTuple):
    """The variation field s -> amplitude * bump(s) * direction."""
    bump_center: float
    bump_width: float  # half width of the support
    amplitude: float
    direction: Vec2L
    seed: int = 0  # seed of the suite the bump was drawn from

    @property
    def support(self) -> Interval:
        return Interval(self.bump_center - self.bump_width, self.bump_center + self.bump_width)


class VariationLadder(NamedTuple):
    eps: typing.List[float]
    values: typing.List[float]
    decay_consistent: bool  # values shrink like eps^2, or sit below the noise floor


class DivergencePoint(NamedTuple):
    eps: float
    energy: float


class EndpointPair(NamedTuple):
    p1: Vec2L
    p2: Vec2L
    collinear_with_origin: bool
    origin_between: bool

    @classmethod
    def of(cls, p1, p2, tol: typing.Optional[float] = None) -> "EndpointPair":
        """
        Builds the pair and its flags: collinearity by the determinant test
        |det(p1, p2)| <= tol max(1, |p1||p2|), origin between by opposite directions.
        """
        p1, p2 = Vec2L(*p1), Vec2L(*p2)
        if tol is None:
            tol = DEFAULTS.tolerances.collinearity
        det = p1.x * p2.y - p1.y * p2.x
        scale = max(1.0, math.hypot(*p1) * math.hypot(*p2))
        collinear = abs(det) <= tol * scale
        between = collinear and (p1.x * p2.x + p1.y * p2.y) < 0
        return cls(p1, p2, collinear, between)


class ComparisonReport(BaseModel):
    """
    Outcome of a maximizer check. ``segment_energy`` is None when the segment
    energy diverges; ``divergence`` then holds the energies of the shrinking segments.
    """
    alpha: float
    p1: typing.Tuple[float, float]
    p2: typing.Tuple[float, float]
    origin_between: bool
    segment_energy: typing.Optional[float]
    competitor_energies: typing.List[float]
    max_competitor_energy: typing.Optional[float]
    divergence: typing.Optional[typing.List[typing.Tuple[float, float]]] = None
    verdict: bool


def bump(s, center: float, width: float):
    """
    The smooth bump exp(1 - 1/(1 - u^2)), u = (s - center)/width, and its first two
    derivatives in s. It equals 1 at the center and vanishes with all derivatives
    outside (center - width, center + width).
    """
    s = np.asarray(s, dtype=float)
    u = (s - center) / width
    q = 1.0 - u * u
    # exp(1 - 1/q) is zero in double precision below this
    inside = q > 1.0 / 700.0
    q = np.where(inside, q, 1.0)
    b = np.where(inside, np.exp(1.0 - 1.0 / q), 0.0)
    g = -2.0 * u / (width * q * q)
    g1 = -2.0 / (width ** 2 * q * q) - 8.0 * u * u / (width ** 2 * q ** 3)
    return b, b * g, b * (g * g + g1)


def perturbed_curve(c: ParamCurve, pert: PerturbationSpec, eps: float) -> ParamCurve:
    """c + eps V restricted to the support of the bump (elsewhere the curves agree)."""
    if not pert.support.is_within(c.domain):
        raise InadmissiblePerturbation(f'bump support {tuple(pert.support)[:2]} is not '
                                       f'inside the domain of {c.name}')
    v = eps * pert.amplitude * np.asarray(pert.direction, dtype=float)

    def shifted(field, k):
        def f(s):
            return field(s) + np.asarray(bump(s, pert.bump_center, pert.bump_width)[k])[..., None] * v
        return f

    return ParamCurve(shifted(c.position, 0), shifted(c.velocity, 1),
                      shifted(c.acceleration, 2), pert.support, f'{c.name}+{eps:g}V')


def _variation_quadrature() -> QuadratureSpec:
    return QuadratureSpec(panels=DEFAULTS.quadrature.panels, refine=False)


def first_variation(c: ParamCurve, alpha: float, pert: PerturbationSpec, eps: float,
                    quad: typing.Optional[QuadratureSpec] = None) -> float:
    """
    Centered difference (E[c + eps V] - E[c - eps V]) / (2 eps) along the bump field
    of ``pert``. E is the energy whose critical points are the alpha-stationary
    curves of the region around the bump: E_alpha where <p,p> > 0 and E_-alpha
    where <p,p> < 0 (see :func:`lorentz_euler.curves.euler_exponent`). Both
    energies use the same fixed panels on the bump support, so the quadrature
    errors cancel to first order.

    :param c: a spacelike curve avoiding the cone
    :type c: lorentz_euler.curves.ParamCurve
    :param alpha: the stationarity exponent of the residual
    :param pert: the variation field
    :type pert: lorentz_euler.variational.PerturbationSpec
    :param eps: amplitude of the difference
    :rtype: float
    :raises InadmissiblePerturbation: if a perturbed curve stops being spacelike or
        meets the cone

    **Example usage**
    ::
        from lorentz_euler.families import CircleKind, CircleSpec, circle_curve
        from lorentz_euler.minkowski import Vec2L
        from lorentz_euler.variational import PerturbationSpec, first_variation

        arc = circle_curve(CircleSpec(kind=CircleKind.HYPERBOLIC))
        pert = PerturbationSpec(0.2, 0.5, 1.0, Vec2L(0.0, 1.0))
        first_variation(arc, 1.0, pert, 1e-4)  # close to 0, the variation of E_-1
    """
    quad = quad or _variation_quadrature()
    try:
        forward, backward = perturbed_curve(c, pert, eps), perturbed_curve(c, pert, -eps)
        exponent = cv.euler_exponent(alpha, mk.region_of(c.eval(pert.bump_center)))
        plus = cv.energy(forward, exponent, quad)
        minus = cv.energy(backward, exponent, quad)
    except (ConeContact, NotSpacelike) as e:
        raise InadmissiblePerturbation(f'{c.name}: perturbation at eps={eps:g} is not '
                                       f'admissible ({e})') from e
    return (plus - minus) / (2.0 * eps)


def variation_ladder(c: ParamCurve, alpha: float, pert: PerturbationSpec,
                     eps_ladder: typing.Optional[typing.Sequence[float]] = None,
                     noise_floor: typing.Optional[float] = None) -> VariationLadder:
    """
    First variations, as in :func:`first_variation`, over a decreasing eps ladder.
    For a stationary curve the values are O(eps^2): each one is at most
    4 (eps_next / eps)^2 times the previous one, unless it is already below
    ``noise_floor``.
    """
    eps_ladder = list(eps_ladder or DEFAULTS.variational.eps_ladder)
    floor = DEFAULTS.variational.noise_floor if noise_floor is None else noise_floor
    values = [first_variation(c, alpha, pert, e) for e in eps_ladder]
    consistent = True
    for (e0, v0), (e1, v1) in zip(zip(eps_ladder, values), zip(eps_ladder[1:], values[1:])):
        if abs(v1) > max(4.0 * (e1 / e0) ** 2 * abs(v0), floor):
            consistent = False
    logger.debug(f'{c.name}: first variation ladder {values}, consistent {consistent}')
    return VariationLadder(eps_ladder, values, consistent)


def random_perturbations(c: ParamCurve, count: int, seed: int, amplitude: float = 1.0,
                         width_range: typing.Tuple[float, float] = (0.1, 0.25)) -> typing.List[PerturbationSpec]:
    """
    A reproducible suite of bump fields inside the domain of ``c``: widths are
    fractions of the domain length, directions are Euclidean unit vectors.
    """
    rng = np.random.default_rng(seed)
    a, b = c.domain.lower, c.domain.upper
    suite = []
    for _ in range(count):
        width = rng.uniform(*width_range) * (b - a)
        center = rng.uniform(a + width, b - width)
        angle = rng.uniform(0.0, 2.0 * math.pi)
        suite.append(PerturbationSpec(float(center), float(width), amplitude,
                                      Vec2L(math.cos(angle), math.sin(angle)), seed))
    return suite


def segment_energy(r: float, alpha: float) -> float:
    """
    Energy of the segment from (1, 0) to (r, 0): the integral of s^alpha over
    [1, r], that is (r^(alpha+1) - 1)/(alpha + 1), or log r for alpha = -1.
    """
    if not r > 0:
        raise InvalidEndpoints(f'segment_energy needs r > 0, got {r}')
    log_r = math.log(r)
    if alpha == -1.0:
        return log_r
    return math.expm1((alpha + 1.0) * log_r) / (alpha + 1.0)


def divergence_probe(alpha: float, eps_list: typing.Optional[typing.Sequence[float]] = None,
                     quad: typing.Optional[QuadratureSpec] = None) -> typing.List[DivergencePoint]:
    """
    Energies of the segments from (eps, 0) to (1, 0), computed by quadrature in the
    parameter x = e^u. For alpha <= -1 they grow without bound as eps -> 0.

    :param alpha: exponent of the energy
    :param eps_list: strictly decreasing positive values, the packaged ladder by default
    :rtype: list of lorentz_euler.variational.DivergencePoint
    """
    eps_list = list(eps_list or DEFAULTS.variational.divergence_eps)
    if any(e <= 0 for e in eps_list) or any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise ValueError(f'eps_list must be positive and strictly decreasing, got {eps_list}')
    points = []
    for eps in eps_list:
        if eps >= 1.0:
            points.append(DivergencePoint(eps, 0.0))
            continue
        segment = ParamCurve(
            lambda u: cv.stack_xy(np.exp(u), np.zeros_like(np.asarray(u, dtype=float))),
            lambda u: cv.stack_xy(np.exp(u), np.zeros_like(np.asarray(u, dtype=float))),
            lambda u: cv.stack_xy(np.exp(u), np.zeros_like(np.asarray(u, dtype=float))),
            Interval(math.log(eps), 0.0), f'segment({eps:g}, 1)')
        points.append(DivergencePoint(eps, cv.energy(segment, alpha, quad)))
    logger.debug(f'segment energies toward the origin, alpha={alpha}: {points}')
    return points


class _PolarEnd(NamedTuple):
    rho: float
    theta: float
    branch: int  # +1 right component, -1 left component


def _polar_end(p: Vec2L) -> _PolarEnd:
    h = mk.to_polar(p)
    return _PolarEnd(h.rho, h.phi, h.region.branch)


def _theta_field(t, bumps):
    theta = np.zeros_like(t)
    theta1 = np.zeros_like(t)
    theta2 = np.zeros_like(t)
    for center, width, amp in bumps:
        b, b1, b2 = bump(t, center, width)
        theta, theta1, theta2 = theta + amp * b, theta1 + amp * b1, theta2 + amp * b2
    return theta, theta1, theta2


def _chart_curve(radial, theta0: float, bumps, branch: int, name: str) -> ParamCurve:
    """
    t -> rho(t) (branch cosh(theta), sinh(theta)) on [0, 1] with
    theta = theta0 + sum of bumps; ``radial`` maps t to (rho, rho', rho'').
    """
    def parts(t):
        t = np.asarray(t, dtype=float)
        rho, rho1, rho2 = radial(t)
        th, th1, th2 = _theta_field(t, bumps)
        th = th + theta0
        e = cv.stack_xy(branch * np.cosh(th), np.sinh(th))
        e1 = cv.stack_xy(branch * np.sinh(th), np.cosh(th))
        return rho, rho1, rho2, th1, th2, e, e1

    def position(t):
        rho, _, _, _, _, e, _ = parts(t)
        return np.asarray(rho)[..., None] * e

    def velocity(t):
        rho, rho1, _, th1, _, e, e1 = parts(t)
        return np.asarray(rho1)[..., None] * e + np.asarray(rho * th1)[..., None] * e1

    def acceleration(t):
        rho, rho1, rho2, th1, th2, e, e1 = parts(t)
        return np.asarray(rho2 + rho * th1 ** 2)[..., None] * e \
            + np.asarray(2.0 * rho1 * th1 + rho * th2)[..., None] * e1

    return ParamCurve(position, velocity, acceleration, Interval(0.0, 1.0), name)


def _monotone_radial(r_start: float, r_end: float, wobble: float):
    """rho from r_start to r_end along t + wobble sin(2 pi t)/(2 pi), |wobble| < 1."""
    span = r_end - r_start

    def radial(t):
        t = np.asarray(t, dtype=float)
        m = t + wobble * np.sin(2 * math.pi * t) / (2 * math.pi)
        m1 = 1.0 + wobble * np.cos(2 * math.pi * t)
        m2 = -2 * math.pi * wobble * np.sin(2 * math.pi * t)
        return r_start + span * m, span * m1, span * m2

    return radial


def _graded_radial(r_end: float, alpha: float):
    """rho = r_end t^(1/(alpha+1)), which makes rho^alpha rho' constant."""
    g = 1.0 / (alpha + 1.0)

    def radial(t):
        t = np.asarray(t, dtype=float)
        rho = r_end * t ** g
        return rho, g * rho / t, g * (g - 1.0) * rho / t ** 2

    return radial


def _is_spacelike(radial, bumps, grid: int = 2001, margin: float = 0.99) -> bool:
    """rho^2 theta'^2 <= margin rho'^2 on a dense grid of the open interval."""
    t = np.linspace(0.0, 1.0, grid)[1:-1]
    rho, rho1, _ = radial(t)
    _, theta1, _ = _theta_field(t, bumps)
    return bool(np.all((rho * theta1) ** 2 <= margin * rho1 ** 2))


def polar_competitor(radial, theta0: float, branch: int, rng: np.random.Generator,
                     max_bumps: typing.Optional[int] = None,
                     max_attempts: typing.Optional[int] = None,
                     keep_clear: float = 0.0, name: str = "competitor") -> ParamCurve:
    """
    A random spacelike competitor with prescribed radial function: theta0 plus one to
    ``max_bumps`` smooth bumps in the hyperbolic angle, supported in
    (keep_clear, 1). A rejected draw has its bump amplitudes halved and is tried
    again, up to ``max_attempts`` times.

    :raises InadmissiblePerturbation: if no admissible competitor was found
    """
    max_bumps = max_bumps or DEFAULTS.variational.max_bumps
    max_attempts = max_attempts or DEFAULTS.variational.max_attempts
    count = int(rng.integers(1, max_bumps + 1))
    bumps = []
    for _ in range(count):
        width = float(rng.uniform(0.05, 0.3)) * (1.0 - keep_clear)
        center = float(rng.uniform(keep_clear + width, 1.0 - width))
        bumps.append((center, width, float(rng.uniform(-1.0, 1.0))))
    for _ in range(max_attempts):
        if _is_spacelike(radial, bumps):
            return _chart_curve(radial, theta0, bumps, branch, name)
        bumps = [(c, w, 0.5 * a) for c, w, a in bumps]
    raise InadmissiblePerturbation(f'{name}: no spacelike draw after {max_attempts} attempts')


def maximizer_check(pair: EndpointPair, alpha: float, competitors: int, seed: int,
                    quad: typing.Optional[QuadratureSpec] = None) -> ComparisonReport:
    """
    Compares the segment joining two points of <p,p> > 0 collinear with the origin
    against random spacelike competitors with the same endpoints.

    Without the origin between the points the segment energy is
    rho1^(alpha+1) segment_energy(rho2/rho1, alpha). With the origin between them and
    alpha > -1 competitors run through the origin, each half parametrized so that
    the integrand stays bounded, and the segment energy is
    (rho1^(alpha+1) + rho2^(alpha+1))/(alpha + 1). For alpha <= -1 that energy diverges
    and the report carries :func:`divergence_probe` instead; its verdict is that those
    energies increase strictly.

    :param pair: the endpoints
    :type pair: lorentz_euler.variational.EndpointPair
    :param alpha: exponent of the energy
    :param competitors: number of random competitors
    :param seed: seed of the generator
    :rtype: lorentz_euler.variational.ComparisonReport
    :raises InvalidEndpoints: if the points are not in <p,p> > 0, not collinear with
        the origin, or coincide

    **Example usage**
    ::
        from lorentz_euler.variational import EndpointPair, maximizer_check

        report = maximizer_check(EndpointPair.of((1, 0), (2, 0)), 2.0, 100, seed=1)
        report.verdict, report.segment_energy  # True, 7/3
    """
    if competitors < 1:
        raise InvalidEndpoints('at least one competitor is needed')
    for p in (pair.p1, pair.p2):
        region = mk.region_of(p)
        if region is mk.ConeRegion.ON_CONE or region.chart is not ChartSign.CPLUS:
            raise InvalidEndpoints(f'{tuple(p)} is not in the region <p,p> > 0')
    if not pair.collinear_with_origin:
        raise InvalidEndpoints('the endpoints are not collinear with the origin')
    end1, end2 = _polar_end(pair.p1), _polar_end(pair.p2)
    rng = np.random.default_rng(seed)
    report = dict(alpha=alpha, p1=tuple(pair.p1), p2=tuple(pair.p2),
                  origin_between=pair.origin_between)

    if pair.origin_between:
        if alpha <= -1.0:
            points = divergence_probe(alpha)
            growing = all(b.energy > a.energy for a, b in zip(points, points[1:]))
            return ComparisonReport(**report, segment_energy=None, competitor_energies=[],
                                    max_competitor_energy=None,
                                    divergence=[tuple(p) for p in points], verdict=growing)
        target = (end1.rho ** (alpha + 1) + end2.rho ** (alpha + 1)) / (alpha + 1.0)
        clear = _ORIGIN_CLEARANCE
        energies = []
        for k in range(competitors):
            total = 0.0
            for end in (end1, end2):
                half = polar_competitor(_graded_radial(end.rho, alpha), end.theta, end.branch,
                                        rng, keep_clear=clear, name=f'competitor {k}')
                # straight on [0, clear], where rho^(alpha+1) = end.rho^(alpha+1) t
                total += end.rho ** (alpha + 1) * clear / (alpha + 1.0)
                total += cv.energy(half.restrict(Interval(clear, 1.0)), alpha, quad)
            energies.append(total)
    else:
        if end1.branch != end2.branch or math.isclose(end1.rho, end2.rho, rel_tol=1e-12):
            raise InvalidEndpoints('the endpoints coincide')
        low, high = sorted((end1.rho, end2.rho))
        target = low ** (alpha + 1) * segment_energy(high / low, alpha)
        energies = []
        for k in range(competitors):
            radial = _monotone_radial(end1.rho, end2.rho, float(rng.uniform(-0.5, 0.5)))
            curve = polar_competitor(radial, end1.theta, end1.branch, rng,
                                     name=f'competitor {k}')
            energies.append(cv.energy(curve, alpha, quad))

    worst = max(energies)
    verdict = worst <= target + 1e-9
    logger.debug(f'maximizer alpha={alpha}: segment {target!r}, best competitor {worst!r}')
    return ComparisonReport(**report, segment_energy=target, competitor_energies=energies,
                            max_competitor_energy=worst, verdict=verdict)
