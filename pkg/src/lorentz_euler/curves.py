"""
Parametrized curves of the Lorentz-Minkowski plane and the quantities the Euler
energy depends on: Frenet frame, curvature, the energy

    E_alpha[gamma] = integral |<gamma,gamma>|^(alpha/2) sqrt(<gamma',gamma'>) ds

and the pointwise stationarity residual kappa + alpha <N,gamma> / |<gamma,gamma>|.

A :class:`ParamCurve` stores vectorized callables: each maps a float or a numpy
array of parameters to points of shape ``(2,)`` or ``(n, 2)``. Curves need not be
parametrized by arc length.
"""
import math
import typing
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from loguru import logger
from pydantic import BaseModel

from lorentz_euler import minkowski as mk
from lorentz_euler.config import DEFAULTS
from lorentz_euler.errors import (
    ConeContact,
    DegenerateSpeed,
    DomainViolation,
    LightlikeTangent,
    NonpositiveScale,
    NotSpacelike,
    NotSpacelikeGraph,
    OnConeError,
    WrongRegion,
)
from lorentz_euler.minkowski import CausalCharacter, ChartSign, ConeRegion, Vec2L

VectorField = typing.Callable[[typing.Any], np.ndarray]


class Interval(NamedTuple):
    """A real interval with open or closed ends."""
    lower: float
    upper: float
    closed_lower: bool = True
    closed_upper: bool = True

    def contains(self, s) -> bool:
        s = np.asarray(s, dtype=float)
        above = s >= self.lower if self.closed_lower else s > self.lower
        below = s <= self.upper if self.closed_upper else s < self.upper
        return bool(np.all(above & below))

    @property
    def length(self) -> float:
        return self.upper - self.lower

    def grid(self, n: int, inset: float = 0.0) -> np.ndarray:
        """
        ``n`` uniformly spaced parameters. Open ends are moved inwards by ``inset``
        times the length, or by 1e-9 times the length when ``inset`` is zero.
        """
        pad = inset if inset > 0 else 1e-9
        a = self.lower if self.closed_lower else self.lower + pad * self.length
        b = self.upper if self.closed_upper else self.upper - pad * self.length
        return np.linspace(a, b, n)

    def is_within(self, other: "Interval") -> bool:
        return other.lower <= self.lower and self.upper <= other.upper

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """Reads the ``a:b`` notation of the command line."""
        try:
            a, b = (float(v) for v in text.split(":"))
        except ValueError as e:
            raise ValueError(f'an interval is written a:b, got {text!r}') from e
        if not a < b:
            raise ValueError(f'interval bounds must satisfy a < b, got {text!r}')
        return cls(a, b)


def stack_xy(x, y) -> np.ndarray:
    """Stacks coordinate arrays into points along a last axis of length 2."""
    return np.stack(np.broadcast_arrays(x, y), axis=-1)


def _same_angle(s):
    return np.asarray(s, dtype=float)


def _unit_rate(s):
    return np.ones_like(np.asarray(s, dtype=float))


class PolarForm(NamedTuple):
    """
    Closed-form polar description of a curve s -> M rho(u) e(u), u = angle(s), with
    M a positive multiple of a Lorentz isometry or of the swap map. Residual and
    curvature are evaluated from the logarithmic derivatives of rho, so they stay
    accurate where the tangent is close to the lightlike directions.
    """
    region: ConeRegion  # component of the undeformed curve rho(u) e(u)
    log_derivatives: typing.Callable  # u -> (log rho, t, t', w2), t = (log rho)', w2 = 1 - t^2
    angle: typing.Callable = _same_angle  # s -> u
    angle_rate: typing.Callable = _unit_rate  # s -> du/ds
    factor: float = 1.0  # sign(det M) / lambda
    metric_sign: int = 1  # -1 once M contains the swap map


@dataclass(frozen=True)
class ParamCurve:
    """
    A regular plane curve s -> gamma(s) with analytic first and second derivatives.

    :ivar position: vectorized gamma
    :ivar velocity: vectorized gamma'
    :ivar acceleration: vectorized gamma''
    :ivar domain: parameter interval
    :ivar name: label used in logs and tables
    :ivar polar: closed-form polar data, when the curve was built from it
    """
    position: VectorField
    velocity: VectorField
    acceleration: VectorField
    domain: Interval
    name: str = "curve"
    polar: typing.Optional[PolarForm] = None

    def _checked(self, s):
        s = np.asarray(s, dtype=float)
        if not self.domain.contains(s):
            raise DomainViolation(f'{self.name}: parameter outside {tuple(self.domain)}')
        return s

    def eval(self, s: float) -> Vec2L:
        return Vec2L.from_array(self.position(self._checked(s)))

    def deriv1(self, s: float) -> Vec2L:
        return Vec2L.from_array(self.velocity(self._checked(s)))

    def deriv2(self, s: float) -> Vec2L:
        return Vec2L.from_array(self.acceleration(self._checked(s)))

    def sample(self, s) -> typing.Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Positions, velocities and accelerations at an array of parameters."""
        s = self._checked(np.atleast_1d(s))
        return self.position(s), self.velocity(s), self.acceleration(s)

    def restrict(self, domain: Interval) -> "ParamCurve":
        if not domain.is_within(self.domain):
            raise DomainViolation(f'{tuple(domain)} is not inside {tuple(self.domain)}')
        return replace(self, domain=domain)

    def renamed(self, name: str) -> "ParamCurve":
        return replace(self, name=name)


class FrameData(NamedTuple):
    """Frenet data of a non-degenerate curve at one parameter."""
    tangent: Vec2L  # unit tangent
    normal: Vec2L  # unit normal, (T_y, T_x)
    kappa: float  # curvature
    epsilon: float  # sign of <gamma', gamma'>


class Frames(NamedTuple):
    """Vectorized :class:`FrameData`; rows follow the sample parameters."""
    tangent: np.ndarray
    normal: np.ndarray
    kappa: np.ndarray
    epsilon: np.ndarray


class QuadratureSpec(NamedTuple):
    """Composite Gauss-Legendre rule with panel doubling."""
    points: int = DEFAULTS.quadrature.points  # nodes per panel
    panels: int = DEFAULTS.quadrature.panels  # initial panel count
    rel_tol: float = DEFAULTS.quadrature.rel_tol  # agreement of successive doublings
    max_panels: int = DEFAULTS.quadrature.max_panels  # doubling stops here
    refine: bool = True  # False evaluates the initial panels only


class ResidualSample(BaseModel):
    s: float
    residual: float
    causal: CausalCharacter
    region: ConeRegion


class ResidualReport(BaseModel):
    """
    Stationarity residual of a curve at a list of parameters. The verdict holds when
    every residual is within tolerance and the causal character and the cone region
    do not change along the samples.
    """
    alpha: float
    tolerance: float
    samples: typing.List[ResidualSample]
    max_abs_residual: float
    verdict: bool


class ResidualValues(NamedTuple):
    """Sampled stationarity data; rows follow the sample parameters."""
    residual: np.ndarray
    kappa: np.ndarray
    causal: typing.List[CausalCharacter]
    positions: np.ndarray


class AuditResult(NamedTuple):
    deriv1_error: float  # worst relative mismatch of gamma'
    deriv2_error: float  # worst relative mismatch of gamma''
    passed: bool


def frames(velocity: np.ndarray, acceleration: np.ndarray, tol=None) -> Frames:
    """
    Frames from sampled derivatives. The tangent is normalized internally, so the
    curvature is the one of the arc-length reparametrization.

    :raises LightlikeTangent: if some |<gamma',gamma'>| is within tolerance
    """
    d1 = np.atleast_2d(velocity)
    d2 = np.atleast_2d(acceleration)
    q = mk.lorentz_square(d1)
    if tol is None:
        tol = mk.classification_tolerance(d1)
    if np.any(np.abs(q) <= tol):
        raise LightlikeTangent('the tangent is lightlike at a sample')
    speed = np.sqrt(np.abs(q))
    tangent = d1 / speed[:, None]
    normal = tangent[:, ::-1]
    kappa = -mk.lorentz_dot(normal, d2) / speed ** 2
    return Frames(tangent, normal, np.atleast_1d(kappa), np.sign(q))


def frame_at(c: ParamCurve, s: float, tol: typing.Optional[float] = None) -> FrameData:
    """
    Unit tangent, normal, curvature and causal sign of a curve.

    With T = gamma'/|gamma'| the normal is N = (T_y, T_x), which is the orientation
    (y', 1)/sqrt(1 - y'^2) for a spacelike graph (x, y(x)) and (1, x')/sqrt(1 - x'^2)
    for a timelike graph (x(y), y). The curvature is kappa = -<N, gamma_ss> with
    gamma_ss the acceleration in arc length.

    :param c: the curve
    :type c: lorentz_euler.curves.ParamCurve
    :param s: parameter in the domain of ``c``
    :type s: float
    :param tol: lightlike band for the tangent
    :type tol: float or None
    :rtype: lorentz_euler.curves.FrameData
    :raises LightlikeTangent: if the tangent is lightlike at ``s``

    **Example usage**
    ::
        from lorentz_euler.curves import frame_at
        from lorentz_euler.families import CircleKind, CircleSpec, circle_curve

        circle = circle_curve(CircleSpec(kind=CircleKind.HYPERBOLIC, center=(0, 0), radius=2))
        frame_at(circle, 0.3).kappa  # 0.5
    """
    f = frames(c.velocity(c._checked(s)), c.acceleration(c._checked(s)), tol)
    return FrameData(Vec2L.from_array(f.tangent[0]), Vec2L.from_array(f.normal[0]),
                     float(f.kappa[0]), float(f.epsilon[0]))


def chart_orientation(region: ConeRegion) -> int:
    """+1 or -1 relating polar curvature to the spacelike upper formula."""
    region = ConeRegion(region)
    sign = 1 if region.chart is ChartSign.CMINUS else -1
    return sign * region.branch


def polar_curvature(rho, rho1, rho2, region: ConeRegion, tol: typing.Optional[float] = None):
    """
    Curvature of the polar curve phi -> rho(phi) in the chart of ``region``:

        kappa = (rho (rho'' + rho) - 2 rho'^2) / |rho^2 - rho'^2|^(3/2)

    on the upper component of <p,p> < 0. The other components are images of this
    one under reflections and the swap map, each of which flips the sign of the
    curvature. Accepts floats or arrays.

    :raises DegenerateSpeed: if |rho^2 - rho'^2| is within tolerance
    """
    rho, rho1, rho2 = (np.asarray(v, dtype=float) for v in (rho, rho1, rho2))
    speed2 = (rho - rho1) * (rho + rho1)
    if tol is None:
        tol = DEFAULTS.tolerances.classification * (1.0 + np.maximum(rho, np.abs(rho1)) ** 2)
    if np.any(np.abs(speed2) <= tol):
        raise DegenerateSpeed('rho^2 - rho\'^2 vanishes: the polar curve is lightlike')
    kappa = chart_orientation(region) * (rho * (rho2 + rho) - 2.0 * rho1 ** 2) \
        / np.abs(speed2) ** 1.5
    return float(kappa) if np.ndim(kappa) == 0 else kappa


def polar_frame_vectors(s, region: ConeRegion):
    """The moving pair e(s), e'(s) of the chart of ``region``; e'' = e."""
    region = ConeRegion(region)
    sigma = region.branch
    ch, sh = np.cosh(s), np.sinh(s)
    if region.chart is ChartSign.CMINUS:
        return stack_xy(sh, sigma * ch), stack_xy(ch, sigma * sh)
    return stack_xy(sigma * ch, sh), stack_xy(sigma * sh, ch)


def polar_values(polar: PolarForm, alpha: float, s) \
        -> typing.Tuple[np.ndarray, np.ndarray, typing.List[CausalCharacter]]:
    """
    Residuals, curvatures and causal characters from polar data. With
    t = (log rho)', w2 = 1 - t^2 and D = det(e, e') the curve rho(u) e(u) has

        kappa = -D (t' + w2) / (rho |w2|^(3/2))
        kappa + alpha <N,gamma> / |<gamma,gamma>| = D (alpha |w2| - t' - w2) / (rho |w2|^(3/2))

    and <gamma',gamma'> = rho^2 w2 in the chart of <p,p> < 0, -rho^2 w2 in the other.
    Both quantities take the factor sign(det M) sign(u') / lambda under
    gamma -> M gamma(u(s)).

    :raises LightlikeTangent: if |w2| is within the classification tolerance
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    parts = polar.log_derivatives(polar.angle(s))
    log_rho, _, t1, w2, _ = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in parts), s)
    if np.any(np.abs(w2) <= DEFAULTS.tolerances.classification):
        raise LightlikeTangent('the tangent is lightlike at a sample')
    region = ConeRegion(polar.region)
    orientation = -chart_orientation(region) * polar.factor * np.sign(polar.angle_rate(s))
    scale = np.exp(-log_rho) / np.abs(w2) ** 1.5
    kappa = -orientation * (t1 + w2) * scale
    residual = orientation * (alpha * np.abs(w2) - t1 - w2) * scale
    chi = 1 if region.chart is ChartSign.CMINUS else -1
    causal = [CausalCharacter.SPACELIKE if v > 0 else CausalCharacter.TIMELIKE
              for v in chi * polar.metric_sign * w2]
    return residual, kappa, causal


def polar_curve(rho_fn: typing.Callable, region: ConeRegion, domain: Interval,
                name: str = "polar", log_derivatives: typing.Optional[typing.Callable] = None
                ) -> ParamCurve:
    """
    The curve gamma(s) = rho(s) e(s) with hyperbolic angle s in the chart of ``region``.

    :param rho_fn: vectorized map s -> (rho, rho', rho'')
    :param log_derivatives: vectorized map s -> (log rho, t, t', 1 - t^2) with
        t = (log rho)'; when given, residuals are computed from it
    """
    def position(s):
        rho, _, _ = rho_fn(s)
        e, _ = polar_frame_vectors(s, region)
        return np.asarray(rho)[..., None] * e

    def velocity(s):
        rho, rho1, _ = rho_fn(s)
        e, e1 = polar_frame_vectors(s, region)
        return np.asarray(rho1)[..., None] * e + np.asarray(rho)[..., None] * e1

    def acceleration(s):
        rho, rho1, rho2 = rho_fn(s)
        e, e1 = polar_frame_vectors(s, region)
        return (np.asarray(rho2) + np.asarray(rho))[..., None] * e \
            + 2.0 * np.asarray(rho1)[..., None] * e1

    polar = None if log_derivatives is None else PolarForm(ConeRegion(region), log_derivatives)
    return ParamCurve(position, velocity, acceleration, domain, name, polar)


def line_curve(point, direction, domain: Interval, name: str = "line") -> ParamCurve:
    """The straight line s -> point + s direction."""
    p = np.asarray(point, dtype=float)
    d = np.asarray(direction, dtype=float)

    def position(s):
        return p + np.asarray(s)[..., None] * d

    def velocity(s):
        return np.broadcast_to(d, np.shape(s) + (2,)).copy()

    def acceleration(s):
        return np.zeros(np.shape(s) + (2,))

    return ParamCurve(position, velocity, acceleration, domain, name)


def graph_curve(y, y1, y2, domain: Interval, name: str = "graph") -> ParamCurve:
    """The graph x -> (x, y(x)); ``y``, ``y1`` and ``y2`` are vectorized."""
    return ParamCurve(
        lambda x: stack_xy(x, y(x)),
        lambda x: stack_xy(np.ones_like(np.asarray(x, dtype=float)), y1(x)),
        lambda x: stack_xy(np.zeros_like(np.asarray(x, dtype=float)), y2(x)),
        domain, name)


def reparametrize(c: ParamCurve, u, du, d2u, domain: Interval,
                  name: typing.Optional[str] = None) -> ParamCurve:
    """
    The curve s -> c(u(s)) with derivatives by the chain rule.

    :param u: vectorized change of parameter into the domain of ``c``
    :param du: u'
    :param d2u: u''
    :param domain: domain of the new parameter
    """
    def velocity(s):
        return c.velocity(u(s)) * np.asarray(du(s))[..., None]

    def acceleration(s):
        us = u(s)
        return c.acceleration(us) * np.asarray(du(s))[..., None] ** 2 \
            + c.velocity(us) * np.asarray(d2u(s))[..., None]

    polar = None
    if c.polar is not None:
        inner = c.polar
        polar = inner._replace(angle=lambda s: inner.angle(u(s)),
                               angle_rate=lambda s: inner.angle_rate(u(s)) * du(s))
    return ParamCurve(lambda s: c.position(u(s)), velocity, acceleration, domain,
                      name or c.name, polar)


def reversed_curve(c: ParamCurve) -> ParamCurve:
    """Traverses ``c`` backwards as s -> c(-s) on the mirrored domain."""
    d = c.domain
    mirrored = Interval(-d.upper, -d.lower, d.closed_upper, d.closed_lower)
    return reparametrize(c, lambda s: -np.asarray(s, dtype=float),
                         lambda s: -np.ones_like(np.asarray(s, dtype=float)),
                         lambda s: np.zeros_like(np.asarray(s, dtype=float)),
                         mirrored, f'reversed({c.name})')


def conformal_action(matrix) -> typing.Optional[typing.Tuple[float, int]]:
    """
    For M with M^T J M = g J, J = diag(1, -1), the pair (sign(det M) / sqrt|g|, sign g):
    the factor the stationarity residual takes under M and the sign M puts on the
    metric. None for other matrices.
    """
    m = np.asarray(matrix, dtype=float)
    j = np.diag([1.0, -1.0])
    g = m.T @ j @ m
    scale = float(g[0, 0])
    if scale == 0.0 or not np.allclose(g, scale * j, rtol=0.0, atol=1e-12 * abs(scale)):
        return None
    return float(np.sign(np.linalg.det(m))) / math.sqrt(abs(scale)), int(np.sign(scale))


def linear_image(c: ParamCurve, matrix: np.ndarray, name: typing.Optional[str] = None) -> ParamCurve:
    """Image of ``c`` under the linear map ``matrix``."""
    m = np.asarray(matrix, dtype=float).T
    polar = None
    action = conformal_action(matrix) if c.polar is not None else None
    if action is not None:
        factor, metric_sign = action
        polar = c.polar._replace(factor=c.polar.factor * factor,
                                 metric_sign=c.polar.metric_sign * metric_sign)
    return ParamCurve(lambda s: c.position(s) @ m, lambda s: c.velocity(s) @ m,
                      lambda s: c.acceleration(s) @ m, c.domain, name or c.name, polar)


def boost_curve(c: ParamCurve, t: float) -> ParamCurve:
    return linear_image(c, mk.boost_matrix(t), f'boost({c.name}, {t:g})')


def dilate_curve(c: ParamCurve, lam: float) -> ParamCurve:
    if not lam > 0:
        raise NonpositiveScale(f'dilation factor must be positive, got {lam}')
    return linear_image(c, lam * np.eye(2), f'dilate({c.name}, {lam:g})')


def reflect_x_curve(c: ParamCurve) -> ParamCurve:
    return linear_image(c, mk.REFLECT_X, f'reflect_x({c.name})')


def reflect_y_curve(c: ParamCurve) -> ParamCurve:
    return linear_image(c, mk.REFLECT_Y, f'reflect_y({c.name})')


def swap_curve(c: ParamCurve) -> ParamCurve:
    return linear_image(c, mk.SWAP, f'swap({c.name})')


def inversion_curve(c: ParamCurve) -> ParamCurve:
    """
    Pointwise image of ``c`` under the cone inversion p -> p / |<p,p>|, with
    derivatives obtained by differentiating p / <p,p> and the constant sign of <p,p>.

    The callables raise :class:`OnConeError` at parameters where ``c`` meets the cone.
    """
    def parts(s):
        p, d1, d2 = c.position(s), c.velocity(s), c.acceleration(s)
        g = mk.lorentz_square(p)
        if np.any(np.abs(g) <= DEFAULTS.tolerances.cone_floor * mk.sup_norm(p) ** 2):
            raise OnConeError(f'{c.name} meets the lightlike cone')
        g1 = 2.0 * mk.lorentz_dot(p, d1)
        g2 = 2.0 * mk.lorentz_square(d1) + 2.0 * mk.lorentz_dot(p, d2)
        g, g1, g2 = (np.asarray(v)[..., None] for v in (g, g1, g2))
        return p, d1, d2, g, g1, g2

    def position(s):
        p, _, _, g, _, _ = parts(s)
        return p / np.abs(g)

    def velocity(s):
        p, d1, _, g, g1, _ = parts(s)
        return np.sign(g) * (d1 / g - p * g1 / g ** 2)

    def acceleration(s):
        p, d1, d2, g, g1, g2 = parts(s)
        return np.sign(g) * (d2 / g - 2.0 * d1 * g1 / g ** 2 - p * g2 / g ** 2
                             + 2.0 * p * g1 ** 2 / g ** 3)

    polar = None
    if c.polar is not None:
        # lambda M rho e goes to (M / lambda) (1 / rho) e
        log_derivatives = c.polar.log_derivatives

        def inverted(u):
            log_rho, t, t1, w2 = log_derivatives(u)
            return -np.asarray(log_rho), -np.asarray(t), -np.asarray(t1), w2

        polar = c.polar._replace(log_derivatives=inverted, factor=1.0 / c.polar.factor)
    return ParamCurve(position, velocity, acceleration, c.domain, f'inversion({c.name})', polar)


def derivative_audit(c: ParamCurve, s_samples, h: float = 1e-5,
                     rtol: float = 1e-6) -> AuditResult:
    """
    Compares the supplied derivatives with centered differences: gamma' against
    differences of gamma and gamma'' against differences of gamma'. Errors are
    relative to max(1, |analytic|).
    """
    s = np.atleast_1d(np.asarray(s_samples, dtype=float))
    fd1 = (c.position(s + h) - c.position(s - h)) / (2 * h)
    fd2 = (c.velocity(s + h) - c.velocity(s - h)) / (2 * h)

    def worst(fd, exact):
        scale = np.maximum(1.0, np.max(np.abs(exact), axis=-1))
        return float(np.max(np.max(np.abs(fd - exact), axis=-1) / scale))

    e1, e2 = worst(fd1, c.velocity(s)), worst(fd2, c.acceleration(s))
    return AuditResult(e1, e2, e1 <= rtol and e2 <= rtol)


def cone_floor(points, scale: typing.Optional[float] = None):
    """Distance |<p,p>| below which a point counts as touching the cone."""
    if scale is None:
        scale = DEFAULTS.tolerances.cone_floor
    return scale * mk.sup_norm(points) ** 2


def check_off_cone(points: np.ndarray, name: str = "curve") -> typing.List[ConeRegion]:
    """
    Regions of the sampled points.

    :raises ConeContact: if a point is within the cone floor or the samples visit
        more than one component
    """
    q = mk.lorentz_square(points)
    if np.any(np.abs(q) <= cone_floor(points)):
        raise ConeContact(f'{name} touches the lightlike cone')
    regions = mk.regions_of(points)
    if len(set(regions)) != 1:
        raise ConeContact(f'{name} crosses the lightlike cone')
    return regions


def gauss_legendre(points: int) -> typing.Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(points)


def integrate_composite(f: typing.Callable, a: float, b: float, panels: int,
                        points: int = DEFAULTS.quadrature.points) -> float:
    """
    Composite Gauss-Legendre quadrature of a vectorized integrand on [a, b].

    :param f: maps an array of nodes to an array of integrand values
    :param panels: number of equal subintervals
    :param points: nodes per subinterval
    """
    x, w = gauss_legendre(points)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)[:, None]
    nodes = 0.5 * (edges[:-1] + edges[1:])[:, None] + half * x[None, :]
    values = np.asarray(f(nodes.ravel())).reshape(nodes.shape)
    return float(np.sum(values * w[None, :] * half))


def integrate_refined(f: typing.Callable, a: float, b: float,
                      quad: typing.Optional[QuadratureSpec] = None, label: str = "") -> float:
    """Doubles the panel count until successive results agree to ``quad.rel_tol``."""
    quad = quad or QuadratureSpec()
    panels = quad.panels
    value = integrate_composite(f, a, b, panels, quad.points)
    if not quad.refine:
        return value
    while panels < quad.max_panels:
        panels *= 2
        refined = integrate_composite(f, a, b, panels, quad.points)
        logger.debug(f'quadrature {label}: {panels} panels, value {refined!r}')
        if abs(refined - value) <= quad.rel_tol * abs(refined):
            return refined
        value = refined
    logger.warning(f'quadrature {label}: panel cap {quad.max_panels} reached, '
                   f'last value {value!r}')
    return value


def energy_density(c: ParamCurve, alpha: float) -> typing.Callable:
    """
    The integrand |<gamma,gamma>|^(alpha/2) sqrt(<gamma',gamma'>) as a vectorized map.

    :raises ConeContact: at nodes near or across the cone
    :raises NotSpacelike: at nodes where the tangent is not spacelike
    """
    def density(s):
        p, d1 = c.position(s), c.velocity(s)
        check_off_cone(p, c.name)
        v2 = mk.lorentz_square(d1)
        if np.any(v2 <= 0):
            raise NotSpacelike(f'{c.name} is not spacelike at a quadrature node')
        return np.exp(0.5 * alpha * np.log(np.abs(mk.lorentz_square(p)))) * np.sqrt(v2)

    return density


def energy(c: ParamCurve, alpha: float, quad: typing.Optional[QuadratureSpec] = None) -> float:
    """
    The Euler energy E_alpha of a spacelike curve avoiding the lightlike cone.

    For alpha = 0 it is the length, for alpha = 2 the moment of inertia. The value
    does not depend on the parametrization and scales by lambda^(alpha+1) under
    dilations.

    :param c: a spacelike curve on a bounded domain
    :type c: lorentz_euler.curves.ParamCurve
    :param alpha: exponent of |gamma|
    :type alpha: float
    :param quad: quadrature settings, the packaged defaults when omitted
    :type quad: lorentz_euler.curves.QuadratureSpec or None
    :rtype: float
    :raises ConeContact: if a node lies on or across the cone
    :raises NotSpacelike: if <gamma',gamma'> <= 0 at a node

    **Example usage**
    ::
        from lorentz_euler.curves import Interval, energy, line_curve

        segment = line_curve((1, 0), (1, 0), Interval(0, 1))
        energy(segment, 2.0)  # 7/3
    """
    a, b = c.domain.lower, c.domain.upper
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainViolation(f'{c.name}: energy needs a bounded domain')
    return integrate_refined(energy_density(c, alpha), a, b, quad, label=f'E[{c.name}]')


def euler_exponent(alpha: float, region: ConeRegion) -> float:
    """
    The exponent a for which the alpha-stationary curves of ``region`` are the
    critical points of E_a. The Euler-Lagrange equation of E_a reads
    kappa + a sign(<p,p>) <N,gamma> / |<gamma,gamma>| = 0, so a = alpha where
    <p,p> > 0 and a = -alpha where <p,p> < 0.

    :raises ConeContact: for points on the cone
    """
    region = ConeRegion(region)
    if region is ConeRegion.ON_CONE:
        raise ConeContact('the energy exponent is undefined on the lightlike cone')
    return alpha if region.chart is ChartSign.CPLUS else -alpha


def residual_values(c: ParamCurve, alpha: float, s) -> ResidualValues:
    """
    Residuals, curvatures, causal characters and positions at an array of parameters.
    Curves carrying a :class:`PolarForm` are evaluated from it, other curves from
    their sampled derivatives.

    :raises ConeContact: if a sample is within the cone floor
    :raises LightlikeTangent: if the tangent is lightlike at a sample
    """
    s = c._checked(np.atleast_1d(s))
    p = c.position(s)
    q = mk.lorentz_square(p)
    if np.any(np.abs(q) <= cone_floor(p)):
        raise ConeContact(f'{c.name} touches the lightlike cone')
    if c.polar is not None:
        residual, kappa, causal = polar_values(c.polar, alpha, s)
        return ResidualValues(residual, kappa, causal, p)
    f = frames(c.velocity(s), c.acceleration(s))
    residual = f.kappa + alpha * mk.lorentz_dot(f.normal, p) / np.abs(q)
    causal = [CausalCharacter.SPACELIKE if e > 0 else CausalCharacter.TIMELIKE for e in f.epsilon]
    return ResidualValues(np.atleast_1d(residual), f.kappa, causal, p)


def stationary_residual(c: ParamCurve, alpha: float, s_samples,
                        tol: typing.Optional[float] = None) -> ResidualReport:
    """
    Evaluates kappa + alpha <N,gamma> / |<gamma,gamma>| along a curve.

    :param c: the curve
    :type c: lorentz_euler.curves.ParamCurve
    :param alpha: the exponent
    :type alpha: float
    :param s_samples: parameters in the domain
    :param tol: pass threshold on the largest residual
    :type tol: float or None
    :rtype: lorentz_euler.curves.ResidualReport
    :raises LightlikeTangent: if the tangent is lightlike at a sample
    :raises ConeContact: if a sample lies on the cone

    **Example usage**
    ::
        from lorentz_euler.curves import stationary_residual
        from lorentz_euler.families import FamilyClass, FamilySpec, family_curve

        spec = FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=2.0)
        curve = family_curve(spec)
        stationary_residual(curve, 2.0, spec.domain.grid(200)).verdict  # True
    """
    if tol is None:
        tol = DEFAULTS.tolerances.residual
    s = np.atleast_1d(np.asarray(s_samples, dtype=float))
    residual, _, causal, p = residual_values(c, alpha, s)
    regions = mk.regions_of(p)
    if ConeRegion.ON_CONE in regions:
        raise ConeContact(f'{c.name} touches the lightlike cone')
    samples = [ResidualSample(s=float(si), residual=float(r), causal=k, region=g)
               for si, r, k, g in zip(s, residual, causal, regions)]
    worst = float(np.max(np.abs(residual)))
    verdict = worst <= tol and len(set(causal)) == 1 and len(set(regions)) == 1
    logger.debug(f'{c.name}: alpha={alpha} max residual {worst:.3e} verdict {verdict}')
    return ResidualReport(alpha=alpha, tolerance=tol, samples=samples,
                          max_abs_residual=worst, verdict=verdict)


def graph_el_residual(y, y1, y2, alpha: float, x: float) -> float:
    """
    Euler-Lagrange expression of the energy of a spacelike graph y = y(x) over the
    region <p,p> < 0:

        alpha (x y' - y) / sqrt(1 - y'^2) + (y^2 - x^2) y'' / (1 - y'^2)^(3/2)

    It equals (y^2 - x^2) times the stationarity residual of the curve x -> (x, y(x)).

    :param y: the graph function
    :param y1: its first derivative
    :param y2: its second derivative
    :raises NotSpacelikeGraph: if y'(x)^2 >= 1
    :raises WrongRegion: if x^2 - y(x)^2 >= 0
    """
    yv, y1v, y2v = float(y(x)), float(y1(x)), float(y2(x))
    if y1v ** 2 >= 1.0:
        raise NotSpacelikeGraph(f'slope {y1v} at x={x} is not spacelike')
    if x ** 2 - yv ** 2 >= 0.0:
        raise WrongRegion(f'({x}, {yv}) is not in the region <p,p> < 0')
    w = 1.0 - y1v ** 2
    return alpha * (x * y1v - yv) / math.sqrt(w) + (yv ** 2 - x ** 2) * y2v / w ** 1.5
