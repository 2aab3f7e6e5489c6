"""
Closed-form alpha-stationary curves.

Up to boosts and dilations every stationary curve off the lightlike cone is one of
four families, written in hyperbolic polar coordinates gamma(s) = rho(s) e(s):

=================  ==================  =========================================
family             chart e(s)          rho(s)
=================  ==================  =========================================
spacelike-cminus   (sinh s, cosh s)    cosh((a-1)s)^(1/(a-1)), e^(cs) at a=1, c^2<1
spacelike-cplus    (cosh s, sinh s)    sinh((a+1)s)^(-1/(a+1)), e^(cs) at a=-1, c^2>1
timelike-cplus     (cosh s, sinh s)    cosh((a-1)s)^(1/(a-1)), e^(cs) at a=1, c^2<1
timelike-cminus    (sinh s, cosh s)    sinh((a+1)s)^(-1/(a+1)), e^(cs) at a=-1, c^2>1
=================  ==================  =========================================

The timelike families are the images of the spacelike ones under the swap map. The
exponential branches are selected exactly at the critical alpha; the constant must
make the curve spacelike (resp. timelike) in its chart, which is c^2 < 1 for the
cosh-type families and c^2 > 1 for the sinh-type ones.

The module also holds the stationary hyperbolic circles and pseudocircles, straight
lines through the origin, the inverses of spacelike lines and the glued curves that
cross the cone.
"""
import math
import typing
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, PositiveFloat, model_validator

from lorentz_euler import curves as cv
from lorentz_euler import minkowski as mk
from lorentz_euler.config import DEFAULTS
from lorentz_euler.curves import Interval, ParamCurve
from lorentz_euler.errors import DomainViolation, UnsupportedAlpha
from lorentz_euler.minkowski import CausalCharacter, ConeRegion, Vec2L

_R2 = 1.0 / math.sqrt(2.0)


class FamilyClass(str, Enum):
    SPACELIKE_CMINUS = "spacelike-cminus"
    SPACELIKE_CPLUS = "spacelike-cplus"
    TIMELIKE_CPLUS = "timelike-cplus"
    TIMELIKE_CMINUS = "timelike-cminus"

    @property
    def causal(self) -> CausalCharacter:
        if self in (FamilyClass.SPACELIKE_CMINUS, FamilyClass.SPACELIKE_CPLUS):
            return CausalCharacter.SPACELIKE
        return CausalCharacter.TIMELIKE

    @property
    def region(self) -> ConeRegion:
        """Component holding the normalized member."""
        if self in (FamilyClass.SPACELIKE_CMINUS, FamilyClass.TIMELIKE_CMINUS):
            return ConeRegion.CMINUS_UPPER
        return ConeRegion.CPLUS_RIGHT

    @property
    def cosh_type(self) -> bool:
        """True for the families whose radial function is a power of cosh."""
        return self in (FamilyClass.SPACELIKE_CMINUS, FamilyClass.TIMELIKE_CPLUS)

    @property
    def critical_alpha(self) -> float:
        return 1.0 if self.cosh_type else -1.0

    @property
    def spacelike_partner(self) -> "FamilyClass":
        """The spacelike family mapped onto this one by the swap map."""
        return {
            FamilyClass.TIMELIKE_CPLUS: FamilyClass.SPACELIKE_CMINUS,
            FamilyClass.TIMELIKE_CMINUS: FamilyClass.SPACELIKE_CPLUS,
        }.get(self, self)

    def admits_constant(self, c: float) -> bool:
        """Whether e^(cs) has the causal character of the family."""
        return c * c < 1.0 if self.cosh_type else c * c > 1.0


class FamilySpec(BaseModel):
    """
    One member of a stationary family. ``c`` is only used, and then required, at
    the critical alpha of the family. ``domain`` defaults to a window of the
    natural domain sized by the ``families`` section of the defaults.
    """
    family: FamilyClass
    alpha: float
    c: typing.Optional[float] = None
    domain: typing.Optional[Interval] = None

    @property
    def exponential(self) -> bool:
        return self.alpha == self.family.critical_alpha

    @model_validator(mode="after")
    def _check_branch(self):
        if self.exponential:
            if self.c is None:
                raise ValueError(f'{self.family.value} at alpha={self.alpha} needs the '
                                 f'constant c of the exponential branch')
            if not self.family.admits_constant(self.c):
                bound = 'c^2 < 1' if self.family.cosh_type else 'c^2 > 1'
                raise ValueError(f'{self.family.value} at alpha={self.alpha} needs {bound}, '
                                 f'got c={self.c}')
        elif self.c is not None:
            raise ValueError(f'c selects the exponential branch and only applies at '
                             f'alpha={self.family.critical_alpha}')
        if self.domain is None:
            self.domain = default_domain(self.family, self.alpha, self.exponential)
        return self

    def label(self) -> str:
        text = f'{self.family.value}(alpha={self.alpha:g}'
        return text + (f', c={self.c:g})' if self.c is not None else ')')


def default_domain(family: FamilyClass, alpha: float, exponential: bool = False) -> Interval:
    """Default parameter window: symmetric for cosh-type and exponential members,
    one-sided and kept away from s = 0 for the sinh-type ones. The argument
    |(alpha -+ 1) s| of the closed form stays below ``families.argument_reach``."""
    w, edge = DEFAULTS.families.window, DEFAULTS.families.edge
    reach = DEFAULTS.families.argument_reach
    if exponential:
        return Interval(-w, w)
    if family.cosh_type:
        k = abs(alpha - 1.0)
        half = w if k == 0 else min(w, reach / k)
        return Interval(-half, half)
    m = alpha + 1.0
    width = 2 * w if m == 0 else min(2 * w, reach / abs(m))
    if m > 0:
        return Interval(edge, edge + width)
    return Interval(-edge - width, -edge)


class FamilyChart(NamedTuple):
    region: ConeRegion  # component of the normalized member
    causal: CausalCharacter
    critical_alpha: float
    exponential: bool


def family_chart(spec: FamilySpec) -> FamilyChart:
    return FamilyChart(spec.family.region, spec.family.causal,
                       spec.family.critical_alpha, spec.exponential)


def log_cosh(x):
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - math.log(2.0)


def log_sinh(x):
    """log sinh x for x > 0."""
    return x + np.log1p(-np.exp(-2.0 * x)) - math.log(2.0)


def _check_natural(spec: FamilySpec, s) -> None:
    if spec.exponential or spec.family.cosh_type:
        return
    if np.any((spec.alpha + 1.0) * np.asarray(s, dtype=float) <= 0):
        raise DomainViolation(f'{spec.label()} needs (alpha + 1) s > 0')


def log_rho(spec: FamilySpec, s):
    """log rho, evaluated without forming the powers."""
    _check_natural(spec, s)
    s = np.asarray(s, dtype=float)
    if spec.exponential:
        return spec.c * s
    if spec.family.cosh_type:
        k = spec.alpha - 1.0
        return log_cosh(k * s) / k
    m = spec.alpha + 1.0
    return -log_sinh(m * s) / m


def log_derivatives(spec: FamilySpec, s):
    """
    (log rho, t, t', 1 - t^2) of a family member, t = (log rho)'. The last entry is
    sech^2 or -csch^2 formed directly, not as a difference.
    """
    _check_natural(spec, s)
    s = np.asarray(s, dtype=float)
    if spec.exponential:
        c, ones = spec.c, np.ones_like(s)
        return c * s, c * ones, 0.0 * ones, (1.0 - c) * (1.0 + c) * ones
    if spec.family.cosh_type:
        k = spec.alpha - 1.0
        lc = log_cosh(k * s)
        sech2 = np.exp(-2.0 * lc)
        return lc / k, np.tanh(k * s), k * sech2, sech2
    m = spec.alpha + 1.0
    ls = log_sinh(m * s)
    csch2 = np.exp(-2.0 * ls)
    return -ls / m, -1.0 / np.tanh(m * s), m * csch2, -csch2


def rho_derivatives(spec: FamilySpec, s):
    """Vectorized (rho, rho', rho'') of a family member."""
    lr, t, t1, _ = log_derivatives(spec, s)
    rho = np.exp(lr)
    return rho, rho * t, rho * (t * t + t1)


def family_rho(spec: FamilySpec, s):
    """
    The radial function of a family member and its first two derivatives.

    :param spec: the member
    :type spec: lorentz_euler.families.FamilySpec
    :param s: hyperbolic angle, a float or an array
    :returns: (rho, rho', rho'')
    :raises DomainViolation: if (alpha + 1) s <= 0 on a sinh-type member

    **Example usage**
    ::
        from lorentz_euler.families import FamilyClass, FamilySpec, family_rho

        family_rho(FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=2.0), 0.0)
        # (1.0, 0.0, 1.0), rho = cosh s
    """
    rho, rho1, rho2 = rho_derivatives(spec, s)
    if np.ndim(rho) == 0:
        return float(rho), float(rho1), float(rho2)
    return rho, rho1, rho2


def family_cone_coordinates(spec: FamilySpec, s):
    """
    The lightlike coordinates (y + x, y - x) of the normalized member at ``s``,
    computed as rho e^(+-s) so that they stay accurate where x and y are large.
    """
    lr = log_rho(spec, s)
    if spec.family.region.chart is mk.ChartSign.CMINUS:
        return np.exp(lr + s), np.exp(lr - s)
    return np.exp(lr + s), -np.exp(lr - s)


def family_curve(spec: FamilySpec, boost: float = 0.0, scale: float = 1.0) -> ParamCurve:
    """
    The member as a curve gamma(s) = rho(s) e(s), optionally moved by a boost and a
    dilation (which recovers the integration constants of the general solution).

    :param spec: the member
    :type spec: lorentz_euler.families.FamilySpec
    :param boost: rapidity of a boost applied after construction
    :param scale: dilation factor applied after construction
    :rtype: lorentz_euler.curves.ParamCurve
    :raises DomainViolation: if the domain leaves (alpha + 1) s > 0 on a sinh-type member
    """
    d = spec.domain
    if not (spec.exponential or spec.family.cosh_type):
        m = spec.alpha + 1.0
        end, closed = (d.lower, d.closed_lower) if m > 0 else (d.upper, d.closed_upper)
        if m * end < 0 or (end == 0 and closed):
            raise DomainViolation(f'{spec.label()}: domain {tuple(d)} leaves (alpha + 1) s > 0')
    curve = cv.polar_curve(lambda s: rho_derivatives(spec, s), spec.family.region, d,
                           spec.label(), log_derivatives=lambda s: log_derivatives(spec, s))
    if boost != 0.0:
        curve = cv.boost_curve(curve, boost)
    if scale != 1.0:
        curve = cv.dilate_curve(curve, scale)
    return curve


class ContactType(str, Enum):
    TANGENTIAL = "tangential"
    ORTHOGONAL = "orthogonal"
    TRANSVERSAL = "transversal"


class EndKind(str, Enum):
    ASYMPTOTE = "asymptote"  # approaches a line at infinity
    CONE_ASYMPTOTE = "cone-asymptote"  # approaches the cone at infinity
    CONE_CONTACT = "cone-contact"  # reaches the cone at a point other than the origin
    ORIGIN = "origin"  # reaches the vertex of the cone
    UNBOUNDED = "unbounded"  # escapes to infinity without an asymptotic line


class AsymptoticLine(NamedTuple):
    point: Vec2L
    direction: Vec2L

    @property
    def slope(self) -> float:
        if self.direction.x == 0:
            return math.inf
        return self.direction.y / self.direction.x

    @property
    def intercept(self) -> float:
        return self.point.y - self.slope * self.point.x

    def distance(self, p) -> float:
        """Euclidean distance from ``p`` to the line."""
        d = np.asarray(self.direction) / np.hypot(*self.direction)
        r = np.asarray(p, dtype=float) - np.asarray(self.point)
        return float(abs(r[0] * d[1] - r[1] * d[0]))


class CurveEnd(NamedTuple):
    """Behaviour of a family member at one end of its natural domain."""
    end: int  # -1 at the lower end, +1 at the upper end
    kind: EndKind
    direction: Vec2L  # limit of the Euclidean unit tangent (increasing parameter)
    point: typing.Optional[Vec2L] = None  # limit point, for contacts and the origin
    line: typing.Optional[AsymptoticLine] = None
    contact: typing.Optional[ContactType] = None


class AsymptoteDescription(NamedTuple):
    family: FamilyClass
    alpha: float
    ends: typing.List[CurveEnd]

    @property
    def lines(self) -> typing.List[AsymptoticLine]:
        return [e.line for e in self.ends if e.line is not None]

    @property
    def contacts(self) -> typing.List[CurveEnd]:
        return [e for e in self.ends if e.kind is EndKind.CONE_CONTACT]


def classify_contact(point, direction, tol: float = 1e-4) -> ContactType:
    """
    Compares a limit tangent with the cone line through a cone point: parallel is
    tangential, Euclidean perpendicular is orthogonal.
    """
    p = np.asarray(point, dtype=float)
    d = np.asarray(direction, dtype=float)
    d = d / np.hypot(*d)
    cone = np.array([1.0, 1.0 if p[0] * p[1] >= 0 else -1.0]) * _R2
    if abs(d[0] * cone[1] - d[1] * cone[0]) <= tol:
        return ContactType.TANGENTIAL
    if abs(float(d @ cone)) <= tol:
        return ContactType.ORTHOGONAL
    return ContactType.TRANSVERSAL


def _contact(end: int, point, direction) -> CurveEnd:
    point, direction = Vec2L(*point), Vec2L(*direction)
    return CurveEnd(end, EndKind.CONE_CONTACT, direction, point,
                    contact=classify_contact(point, direction))


def _asymptote(end: int, point, direction) -> CurveEnd:
    direction = Vec2L(*direction)
    return CurveEnd(end, EndKind.ASYMPTOTE, direction,
                    line=AsymptoticLine(Vec2L(*point), direction))


def _spacelike_cminus_ends(alpha: float, exponential: bool) -> typing.List[CurveEnd]:
    if exponential:
        return [CurveEnd(-1, EndKind.CONE_ASYMPTOTE, Vec2L(_R2, -_R2)),
                CurveEnd(1, EndKind.CONE_ASYMPTOTE, Vec2L(_R2, _R2))]
    if alpha > 1:
        b = 2.0 ** (1.0 / (1.0 - alpha))
        return [_asymptote(-1, (0.0, b), (_R2, -_R2)), _asymptote(1, (0.0, b), (_R2, _R2))]
    b = 2.0 ** (alpha / (1.0 - alpha))
    if alpha > 0:
        lower, upper = (_R2, -_R2), (_R2, _R2)
    elif alpha == 0:
        lower = upper = (1.0, 0.0)
    else:
        lower, upper = (_R2, _R2), (_R2, -_R2)
    return [_contact(-1, (-b, b), lower), _contact(1, (b, b), upper)]


def _spacelike_cplus_ends(alpha: float, c: typing.Optional[float]) -> typing.List[CurveEnd]:
    origin = Vec2L(0.0, 0.0)
    if c is not None:
        if c > 1:
            return [CurveEnd(-1, EndKind.ORIGIN, Vec2L(_R2, -_R2), origin),
                    CurveEnd(1, EndKind.UNBOUNDED, Vec2L(_R2, _R2))]
        return [CurveEnd(-1, EndKind.UNBOUNDED, Vec2L(-_R2, _R2)),
                CurveEnd(1, EndKind.ORIGIN, Vec2L(-_R2, -_R2), origin)]
    m = alpha + 1.0
    if m < 0:
        return [_asymptote(-1, (0.0, 2.0 ** (1.0 / m)), (-_R2, _R2)),
                CurveEnd(1, EndKind.ORIGIN, Vec2L(-1.0, 0.0), origin)]
    b = 2.0 ** (-alpha / m)
    if alpha > 0:
        lower, upper = _asymptote(-1, (0.0, 0.0), (-1.0, 0.0)), (-_R2, _R2)
    elif alpha == 0:
        lower, upper = _asymptote(-1, (0.0, 1.0), (-1.0, 0.0)), (-1.0, 0.0)
    else:
        lower, upper = CurveEnd(-1, EndKind.UNBOUNDED, Vec2L(-1.0, 0.0)), (-_R2, -_R2)
    return [lower, _contact(1, (b, b), upper)]


def _swapped(e: CurveEnd) -> CurveEnd:
    line = None
    if e.line is not None:
        line = AsymptoticLine(mk.swap_map(e.line.point), mk.swap_map(e.line.direction))
    point = mk.swap_map(e.point) if e.point is not None else None
    return e._replace(direction=mk.swap_map(e.direction), point=point, line=line)


def asymptote_data(spec: FamilySpec) -> AsymptoteDescription:
    """
    Asymptotic lines, cone contacts and the behaviour at both ends of the natural
    domain of the normalized member. The limit directions are those of the
    increasing parameter.

    :param spec: the member
    :type spec: lorentz_euler.families.FamilySpec
    :rtype: lorentz_euler.families.AsymptoteDescription

    **Example usage**
    ::
        from lorentz_euler.families import FamilyClass, FamilySpec, asymptote_data

        data = asymptote_data(FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=2.0))
        [(line.slope, line.intercept) for line in data.lines]  # [(-1, 0.5), (1, 0.5)]
    """
    partner = spec.family.spacelike_partner
    if partner is FamilyClass.SPACELIKE_CMINUS:
        ends = _spacelike_cminus_ends(spec.alpha, spec.exponential)
    else:
        ends = _spacelike_cplus_ends(spec.alpha, spec.c if spec.exponential else None)
    if partner is not spec.family:
        ends = [_swapped(e) for e in ends]
    return AsymptoteDescription(spec.family, spec.alpha, ends)


class CircleKind(str, Enum):
    HYPERBOLIC = "hyperbolic"  # <p - p0, p - p0> = -r^2, spacelike
    PSEUDO = "pseudo"  # <p - p0, p - p0> = r^2, timelike


class CircleSpec(BaseModel):
    """
    One component of a hyperbolic circle or a pseudocircle, parametrized as
    p0 + branch r (sinh s, cosh s) or p0 + branch r (cosh s, -sinh s).
    """
    kind: CircleKind
    center: typing.Tuple[float, float] = (0.0, 0.0)
    radius: PositiveFloat = 1.0
    branch: typing.Literal[1, -1] = 1
    domain: typing.Optional[Interval] = None

    @model_validator(mode="after")
    def _default_domain(self):
        if self.domain is None:
            self.domain = circle_window(self)
        return self

    def label(self) -> str:
        x, y = self.center
        return f'{self.kind.value}(center=({x:g}, {y:g}), r={self.radius:g}, branch={self.branch})'


def origin_parameter(spec: CircleSpec) -> typing.Optional[float]:
    """Parameter at which the component passes through the origin, if it does."""
    x0, y0 = spec.center
    r, sigma = spec.radius, spec.branch
    if spec.kind is CircleKind.HYPERBOLIC:
        s = math.asinh(-sigma * x0 / r)
        hit = (x0 + sigma * r * math.sinh(s), y0 + sigma * r * math.cosh(s))
    else:
        s = math.asinh(sigma * y0 / r)
        hit = (x0 + sigma * r * math.cosh(s), y0 - sigma * r * math.sinh(s))
    scale = 1.0 + abs(x0) + abs(y0) + r
    return s if math.hypot(*hit) <= 1e-12 * scale else None


def circle_window(spec: CircleSpec) -> Interval:
    """[-w, w], or a window on one side of the origin for a component through it."""
    s0 = origin_parameter(spec)
    if s0 is None:
        w = DEFAULTS.families.window
        return Interval(-w, w)
    return Interval(s0 + 0.25, s0 + 2.5)


def circle_curve(spec: CircleSpec) -> ParamCurve:
    """
    The component selected by ``spec``. With these parametrizations the curvature
    is 1/r for N = (p - p0)/r on hyperbolic circles and N = -(p - p0)/r on
    pseudocircles.
    """
    p0 = np.asarray(spec.center, dtype=float)
    sr = spec.branch * spec.radius
    if spec.kind is CircleKind.HYPERBOLIC:
        def shape(s):
            return cv.stack_xy(np.sinh(s), np.cosh(s))

        def shape1(s):
            return cv.stack_xy(np.cosh(s), np.sinh(s))
    else:
        def shape(s):
            return cv.stack_xy(np.cosh(s), -np.sinh(s))

        def shape1(s):
            return cv.stack_xy(np.sinh(s), -np.cosh(s))

    return ParamCurve(lambda s: p0 + sr * shape(s), lambda s: sr * shape1(s),
                      lambda s: sr * shape(s), spec.domain, spec.label())


def classified_circles(alpha: float, radius: float = 1.0, t: float = 0.5) -> typing.List[CircleSpec]:
    """
    The stationary circles for ``alpha``: for alpha = 1 the origin-centered circles
    of every radius (both components of each), for alpha = 2 and alpha = -2 the
    components of circles whose center lies on the origin-centered circle of the
    same radius. The centers are taken at hyperbolic angle ``t``; alpha = 2 gets
    the components avoiding the origin, alpha = -2 those through it.

    :returns: representatives of radius ``radius``; empty for every other alpha
    :rtype: list of lorentz_euler.families.CircleSpec
    """
    if alpha == 1.0:
        return [CircleSpec(kind=kind, radius=radius, branch=b)
                for kind in (CircleKind.HYPERBOLIC, CircleKind.PSEUDO) for b in (1, -1)]
    if alpha not in (2.0, -2.0):
        return []
    flip = 1 if alpha == 2.0 else -1
    specs = []
    for sign in (1, -1):
        center = (radius * math.sinh(t), sign * radius * math.cosh(t))
        specs.append(CircleSpec(kind=CircleKind.HYPERBOLIC, center=center, radius=radius,
                                branch=flip * sign))
    for sign in (1, -1):
        center = (sign * radius * math.cosh(t), radius * math.sinh(t))
        specs.append(CircleSpec(kind=CircleKind.PSEUDO, center=center, radius=radius,
                                branch=flip * sign))
    return specs


def line_through_origin(direction, domain: Interval = Interval(0.5, 2.0)) -> ParamCurve:
    """The line s -> s d/|d|, stationary for every alpha; keep 0 out of ``domain``."""
    d = np.asarray(direction, dtype=float)
    return cv.line_curve((0.0, 0.0), d / np.hypot(*d), domain, 'line through origin')


def inverse_line_curves() -> typing.List[ParamCurve]:
    """
    Inverses of spacelike lines: (cosh s sinh s, cosh^2 s) in <p,p> < 0, stationary
    for alpha = 2, and (-sinh s cosh s, -sinh^2 s) in <p,p> > 0, stationary for
    alpha = -2. The second one reaches the origin at s = 0, which its open domain
    excludes.
    """
    w = DEFAULTS.families.window

    def minus(s):
        return cv.stack_xy(0.5 * np.sinh(2 * s), 0.5 * (1.0 + np.cosh(2 * s)))

    def plus(s):
        return cv.stack_xy(-0.5 * np.sinh(2 * s), -0.5 * (np.cosh(2 * s) - 1.0))

    cminus = ParamCurve(
        minus,
        lambda s: cv.stack_xy(np.cosh(2 * s), np.sinh(2 * s)),
        lambda s: cv.stack_xy(2 * np.sinh(2 * s), 2 * np.cosh(2 * s)),
        Interval(-w, w), 'inverse line (cminus)')
    cplus = ParamCurve(
        plus,
        lambda s: cv.stack_xy(-np.cosh(2 * s), -np.sinh(2 * s)),
        lambda s: cv.stack_xy(-2 * np.sinh(2 * s), -2 * np.cosh(2 * s)),
        Interval(0.0, w, closed_lower=False), 'inverse line (cplus)')
    return [cminus, cplus]


class GluedPiece(NamedTuple):
    """
    One smooth piece of a glued curve. ``hyperbolic_window`` bounds the hyperbolic
    angle of the family member the piece reparametrizes; ``to_parameter`` maps
    that angle to the glued parameter.
    """
    curve: ParamCurve
    causal: CausalCharacter
    region: ConeRegion
    hyperbolic_window: Interval
    to_parameter: typing.Callable

    def parameters(self, n: int, window: typing.Optional[Interval] = None) -> np.ndarray:
        """Glued parameters of ``n`` angles equally spaced in ``window``."""
        w = window or self.hyperbolic_window
        return np.sort(self.to_parameter(np.linspace(w.lower, w.upper, n)))

    def sample_window(self) -> Interval:
        """The hyperbolic window cut to ``families.glue_sample_reach`` on both sides."""
        reach = DEFAULTS.families.glue_sample_reach
        w = self.hyperbolic_window
        return Interval(max(w.lower, -reach), min(w.upper, reach))


@dataclass(frozen=True)
class PiecewiseCurve:
    """
    Spacelike and timelike stationary pieces joined at cone points. Pieces are listed
    in the order they are traversed.
    """
    alpha: float
    pieces: typing.List[GluedPiece]
    junctions: typing.List[Vec2L]
    closed: bool

    def trace(self, n: int = 200) -> np.ndarray:
        """Points along all pieces, ``n`` per piece, in traversal order."""
        return np.concatenate([p.curve.position(p.parameters(n)) for p in self.pieces])

    def closure_gap(self) -> float:
        first = self.pieces[0].curve
        last = self.pieces[-1].curve
        start = first.position(first.domain.lower)
        end = last.position(last.domain.upper)
        return float(np.hypot(*(start - end)))


def _log_piece(c: ParamCurve, causal, region, window: Interval, side: int) -> GluedPiece:
    """The piece s -> c(-log(side s)) on side * s > 0."""
    def u(s):
        return -np.log(side * np.asarray(s, dtype=float))

    def du(s):
        return -1.0 / np.asarray(s, dtype=float)

    def d2u(s):
        return 1.0 / np.asarray(s, dtype=float) ** 2

    ends = sorted((side * math.exp(-window.lower), side * math.exp(-window.upper)))
    curve = cv.reparametrize(c, u, du, d2u, Interval(*ends), c.name)
    return GluedPiece(curve, causal, region, window,
                      lambda v: side * np.exp(-np.asarray(v, dtype=float)))


def _reciprocal_piece(c: ParamCurve, causal, region, window: Interval, side: int) -> GluedPiece:
    """The piece s -> c(side / s) on side * s > 0."""
    def u(s):
        return side / np.asarray(s, dtype=float)

    def du(s):
        return -side / np.asarray(s, dtype=float) ** 2

    def d2u(s):
        return 2.0 * side / np.asarray(s, dtype=float) ** 3

    ends = sorted((side / window.lower, side / window.upper))
    curve = cv.reparametrize(c, u, du, d2u, Interval(*ends), c.name)
    return GluedPiece(curve, causal, region, window,
                      lambda v: side / np.asarray(v, dtype=float))


def _mirrored(piece: GluedPiece, matrix: np.ndarray) -> GluedPiece:
    """Image of a piece under a reflection, traversed backwards."""
    image = cv.reversed_curve(cv.linear_image(piece.curve, matrix))
    w = piece.hyperbolic_window
    middle = piece.curve.position(piece.to_parameter(0.5 * (w.lower + w.upper)))
    to_parameter = piece.to_parameter
    return GluedPiece(image, piece.causal, mk.region_of(matrix @ middle), w,
                      lambda v: -to_parameter(v))


def glued_mixed_curve(alpha: float, reach: float = 15.0) -> PiecewiseCurve:
    """
    Stationary curves that cross the lightlike cone, changing causal character.

    For alpha = -2 the spacelike member in <p,p> < 0 and the timelike member in
    <p,p> > 0 both reach the cone orthogonally at (2^(-2/3), 2^(-2/3)); joined there
    through s -> -log(-s) and s -> -log(s), and completed by their reflections in
    the axes, they close up. For alpha = 2 the spacelike member in <p,p> > 0 and the
    timelike member in <p,p> < 0 meet at the same point through s -> -1/s and
    s -> 1/s; the result is tangent to both axes at infinity.

    :param alpha: -2 or 2
    :param reach: hyperbolic angles are truncated at this magnitude
    :rtype: lorentz_euler.families.PiecewiseCurve
    :raises UnsupportedAlpha: for any other alpha
    """
    b = 2.0 ** (-2.0 / 3.0)
    if alpha == -2.0:
        spacelike = family_curve(FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=alpha,
                                            domain=Interval(-reach, reach)))
        timelike = family_curve(FamilySpec(family=FamilyClass.TIMELIKE_CPLUS, alpha=alpha,
                                           domain=Interval(-reach, reach)))
        window = Interval(-reach, reach)
        first = _log_piece(spacelike, CausalCharacter.SPACELIKE, ConeRegion.CMINUS_UPPER,
                           window, -1)
        second = _log_piece(timelike, CausalCharacter.TIMELIKE, ConeRegion.CPLUS_RIGHT,
                            window, 1)
        pieces = [first, second, _mirrored(first, mk.REFLECT_X), _mirrored(second, mk.REFLECT_Y)]
        junctions = [Vec2L(b, b), Vec2L(b, -b), Vec2L(-b, -b), Vec2L(-b, b)]
        logger.debug(f'glued curve alpha={alpha}: four pieces, closed')
        return PiecewiseCurve(alpha, pieces, junctions, closed=True)
    if alpha == 2.0:
        near = DEFAULTS.families.edge / 2
        window = Interval(near, reach)
        spacelike = family_curve(FamilySpec(family=FamilyClass.SPACELIKE_CPLUS, alpha=alpha,
                                            domain=window))
        timelike = family_curve(FamilySpec(family=FamilyClass.TIMELIKE_CMINUS, alpha=alpha,
                                           domain=window))
        pieces = [
            _reciprocal_piece(spacelike, CausalCharacter.SPACELIKE, ConeRegion.CPLUS_RIGHT,
                              window, -1),
            _reciprocal_piece(timelike, CausalCharacter.TIMELIKE, ConeRegion.CMINUS_UPPER,
                              window, 1),
        ]
        logger.debug(f'glued curve alpha={alpha}: two pieces, open')
        return PiecewiseCurve(alpha, pieces, [Vec2L(b, b)], closed=False)
    raise UnsupportedAlpha(f'glued curves exist for alpha = -2 and alpha = 2, got {alpha}')
