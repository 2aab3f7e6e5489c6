"""
The Lorentz-Minkowski plane: indefinite metric dx^2 - dy^2, causal character,
the four components of the complement of the lightlike cone, hyperbolic polar
coordinates and the transformations acting on points.

Functions take and return :class:`Vec2L` points. The metric helpers
(:func:`lorentz_dot`, :func:`lorentz_square`) also accept numpy arrays whose last
axis has length two, which is how the curve kernel evaluates them on samples.
"""
import math
import typing
from enum import Enum
from typing import NamedTuple

import numpy as np

from lorentz_euler.config import DEFAULTS
from lorentz_euler.errors import (
    InvalidRegion,
    NonFiniteComponent,
    NonpositiveScale,
    OnConeError,
)


class _Vec2LFields(NamedTuple):
    x: float  # first canonical coordinate
    y: float  # second canonical coordinate


class Vec2L(_Vec2LFields):
    """
    A point or vector of the Lorentz-Minkowski plane. Components are finite floats.
    Being a tuple, it converts to a length-2 numpy array with ``np.asarray``.
    """
    __slots__ = ()

    def __new__(cls, x, y):
        x, y = float(x), float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise NonFiniteComponent(f'Vec2L components must be finite, got ({x}, {y})')
        return super().__new__(cls, x, y)

    @classmethod
    def from_array(cls, a) -> "Vec2L":
        a = np.asarray(a, dtype=float)
        return cls(a[0], a[1])


class CausalCharacter(str, Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


class ConeRegion(str, Enum):
    """
    The four open components of the complement of the lightlike cone, plus the cone.
    The components of <p,p> < 0 are told apart by the sign of y, those of <p,p> > 0
    by the sign of x.
    """
    CMINUS_UPPER = "cminus-upper"
    CMINUS_LOWER = "cminus-lower"
    CPLUS_RIGHT = "cplus-right"
    CPLUS_LEFT = "cplus-left"
    ON_CONE = "on-cone"

    @property
    def chart(self) -> "ChartSign":
        if self is ConeRegion.ON_CONE:
            raise InvalidRegion('the lightlike cone carries no polar chart')
        if self in (ConeRegion.CMINUS_UPPER, ConeRegion.CMINUS_LOWER):
            return ChartSign.CMINUS
        return ChartSign.CPLUS

    @property
    def branch(self) -> int:
        """+1 on the upper/right components, -1 on the lower/left ones."""
        if self is ConeRegion.ON_CONE:
            raise InvalidRegion('the lightlike cone has no branch sign')
        return 1 if self in (ConeRegion.CMINUS_UPPER, ConeRegion.CPLUS_RIGHT) else -1


class ChartSign(str, Enum):
    CMINUS = "cminus"  # <p,p> < 0
    CPLUS = "cplus"  # <p,p> > 0


class HyperbolicPolar(NamedTuple):
    """
    Hyperbolic polar coordinates: p = rho (sinh phi, +-cosh phi) on the components of
    <p,p> < 0 and p = rho (+-cosh phi, sinh phi) on those of <p,p> > 0.
    """
    rho: float  # radial coordinate, sqrt|<p,p>|
    phi: float  # hyperbolic angle
    region: ConeRegion  # one of the four open components


class ConeOffset(NamedTuple):
    """Vertical translation delta > 0 of the lightlike cone."""
    delta: float


SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])
REFLECT_X = np.array([[1.0, 0.0], [0.0, -1.0]])
REFLECT_Y = np.array([[-1.0, 0.0], [0.0, 1.0]])


def boost_matrix(t: float) -> np.ndarray:
    """Matrix of the boost R_t(x, y) = (cosh t x + sinh t y, sinh t x + cosh t y)."""
    c, s = math.cosh(t), math.sinh(t)
    return np.array([[c, s], [s, c]])


def lorentz_dot(u, v):
    """
    The Lorentzian inner product u.x v.x - u.y v.y.

    :param u: first vector (a Vec2L or an array with a last axis of length 2)
    :param v: second vector, same shape as ``u``
    :returns: the inner product, a float for single vectors
    :rtype: float or numpy.ndarray

    **Example usage**
    ::
        from lorentz_euler.minkowski import Vec2L, lorentz_dot

        lorentz_dot(Vec2L(1, 1), Vec2L(1, 1))  # 0.0, a lightlike vector
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    d = u[..., 0] * v[..., 0] - u[..., 1] * v[..., 1]
    return float(d) if np.ndim(d) == 0 else d


def lorentz_square(p):
    """<p,p>, evaluated as (x - y)(x + y) so that points near the cone keep their digits."""
    p = np.asarray(p, dtype=float)
    q = (p[..., 0] - p[..., 1]) * (p[..., 0] + p[..., 1])
    return float(q) if np.ndim(q) == 0 else q


def sup_norm(p):
    p = np.asarray(p, dtype=float)
    n = np.max(np.abs(p), axis=-1)
    return float(n) if np.ndim(n) == 0 else n


def classification_tolerance(p, scale: typing.Optional[float] = None):
    """The default lightlike band scale * (1 + |p|_inf^2), which follows dilations."""
    if scale is None:
        scale = DEFAULTS.tolerances.classification
    return scale * (1.0 + sup_norm(p) ** 2)


def null_coordinates(p):
    """The lightlike coordinates (y + x, y - x); <p,p> = -(y + x)(y - x)."""
    p = np.asarray(p, dtype=float)
    return p[..., 1] + p[..., 0], p[..., 1] - p[..., 0]


def classify(v, tol: typing.Optional[float] = None) -> CausalCharacter:
    """
    Causal character of a vector: spacelike if <v,v> > tol, timelike if < -tol,
    lightlike otherwise.

    :param v: the vector
    :type v: lorentz_euler.minkowski.Vec2L
    :param tol: width of the lightlike band; defaults to 1e-12 (1 + |v|_inf^2)
    :type tol: float or None
    :rtype: lorentz_euler.minkowski.CausalCharacter
    """
    if tol is None:
        tol = classification_tolerance(v)
    q = lorentz_square(v)
    if q > tol:
        return CausalCharacter.SPACELIKE
    if q < -tol:
        return CausalCharacter.TIMELIKE
    return CausalCharacter.LIGHTLIKE


def classify_many(vectors, tol=None) -> typing.List[CausalCharacter]:
    """Vectorized :func:`classify` over an ``(n, 2)`` array."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    if tol is None:
        tol = classification_tolerance(vectors)
    q = lorentz_square(vectors)
    tags = np.where(q > tol, 0, np.where(q < -tol, 1, 2))
    order = (CausalCharacter.SPACELIKE, CausalCharacter.TIMELIKE,
             CausalCharacter.LIGHTLIKE)
    return [order[t] for t in tags]


def region_of(p, tol: typing.Optional[float] = None) -> ConeRegion:
    """
    The cone region containing a point.

    :param p: the point
    :type p: lorentz_euler.minkowski.Vec2L
    :param tol: width of the band around the cone mapped to ``ON_CONE``
    :type tol: float or None
    :rtype: lorentz_euler.minkowski.ConeRegion
    """
    return regions_of(np.asarray(p, dtype=float)[None, :], tol)[0]


def regions_of(points, tol=None) -> typing.List[ConeRegion]:
    """Vectorized :func:`region_of` over an ``(n, 2)`` array."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if tol is None:
        tol = classification_tolerance(points)
    q = lorentz_square(points)
    x, y = points[:, 0], points[:, 1]
    tags = np.select(
        [q < -tol, q > tol],
        [np.where(y > 0, 0, 1), np.where(x > 0, 2, 3)],
        default=4,
    )
    order = (ConeRegion.CMINUS_UPPER, ConeRegion.CMINUS_LOWER, ConeRegion.CPLUS_RIGHT,
             ConeRegion.CPLUS_LEFT, ConeRegion.ON_CONE)
    return [order[t] for t in tags]


def to_polar(p) -> HyperbolicPolar:
    """
    Hyperbolic polar coordinates of a point off the cone.

    rho = sqrt|<p,p>| and phi is half the logarithm of the ratio of the two null
    coordinates of the branch, which keeps the round trip accurate close to the cone.

    :param p: a point with <p,p> != 0
    :type p: lorentz_euler.minkowski.Vec2L
    :returns: (rho, phi, region)
    :rtype: lorentz_euler.minkowski.HyperbolicPolar
    :raises OnConeError: if p lies on the cone within the classification tolerance

    **Example usage**
    ::
        import math
        from lorentz_euler.minkowski import Vec2L, to_polar

        to_polar(Vec2L(math.sinh(1), math.cosh(1)))  # rho 1, phi 1, CMINUS_UPPER
    """
    p = Vec2L(*p)
    region = region_of(p)
    if region is ConeRegion.ON_CONE:
        raise OnConeError(f'{p} lies on the lightlike cone')
    sigma = region.branch
    if region.chart is ChartSign.CMINUS:
        a, b = sigma * p.y + p.x, sigma * p.y - p.x
    else:
        a, b = sigma * p.x + p.y, sigma * p.x - p.y
    return HyperbolicPolar(rho=math.sqrt(a * b), phi=0.5 * math.log(a / b), region=region)


def from_polar(h: HyperbolicPolar) -> Vec2L:
    """
    Point with the given hyperbolic polar coordinates.

    :raises InvalidRegion: if ``h.region`` is ``ON_CONE``
    """
    rho, phi, region = h
    region = ConeRegion(region)
    if region is ConeRegion.ON_CONE:
        raise InvalidRegion('from_polar needs one of the four open cone components')
    sigma = region.branch
    if region.chart is ChartSign.CMINUS:
        return Vec2L(rho * math.sinh(phi), sigma * rho * math.cosh(phi))
    return Vec2L(sigma * rho * math.cosh(phi), rho * math.sinh(phi))


def apply_linear(matrix: np.ndarray, p) -> Vec2L:
    return Vec2L.from_array(matrix @ np.asarray(p, dtype=float))


def boost(p, t: float) -> Vec2L:
    """The boost R_t, a linear isometry fixing the cone."""
    return apply_linear(boost_matrix(t), p)


def dilate(p, lam: float) -> Vec2L:
    """
    Scales both coordinates by ``lam``.

    :raises NonpositiveScale: if lam <= 0
    """
    if not lam > 0:
        raise NonpositiveScale(f'dilation factor must be positive, got {lam}')
    return Vec2L(lam * p[0], lam * p[1])


def reflect_x(p) -> Vec2L:
    """(x, y) -> (x, -y)"""
    return Vec2L(p[0], -p[1])


def reflect_y(p) -> Vec2L:
    """(x, y) -> (-x, y)"""
    return Vec2L(-p[0], p[1])


def swap_map(p) -> Vec2L:
    """
    The involution (x, y) -> (y, x). It flips the sign of <p,p>, so it exchanges
    spacelike and timelike vectors and the regions <p,p> < 0 and <p,p> > 0.
    """
    return Vec2L(p[1], p[0])


def inversion(p) -> Vec2L:
    """
    Inversion with respect to the lightlike cone, p -> p / |<p,p>|.

    This keeps every cone component in place and sends polar (rho, phi) to
    (1/rho, phi). On <p,p> > 0 it is p / <p,p>; on <p,p> < 0 it differs from
    p / <p,p> by the isometry p -> -p, so both maps send stationary curves to
    stationary curves with the same new alpha.

    :raises OnConeError: if p lies on the cone within the classification tolerance
    """
    p = Vec2L(*p)
    if region_of(p) is ConeRegion.ON_CONE:
        raise OnConeError(f'{p} lies on the lightlike cone')
    q = abs(lorentz_square(p))
    return Vec2L(p.x / q, p.y / q)


def far_from_cone(points, offset: ConeOffset) -> bool:
    """
    Whether all points lie in one component of the translated cone
    C_delta = {x^2 - (y - delta)^2 < 0}: the future one above (0, delta) or, after
    the reflection (x, y) -> (x, -y), the past one below (0, -delta).

    In null coordinates the future condition reads y + x > delta and y - x > delta.

    :param points: nonempty sequence of points
    :param offset: the translation delta
    :type offset: lorentz_euler.minkowski.ConeOffset
    :rtype: bool
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.size == 0:
        raise ValueError('far_from_cone needs at least one point')
    delta = offset.delta
    u, v = null_coordinates(pts)
    future = bool(np.all((u > delta) & (v > delta)))
    past = bool(np.all((-v > delta) & (-u > delta)))
    return future or past


def certify_far_from_cone(points, iterations: int = 80,
                          smallest: float = 1e-12) -> typing.Optional[ConeOffset]:
    """
    Bisection for the largest offset delta with :func:`far_from_cone` true.

    :param points: nonempty sequence of points
    :param iterations: number of bisection steps
    :param smallest: offsets below this are not searched
    :returns: a certifying offset, or None when even ``smallest`` fails
    :rtype: lorentz_euler.minkowski.ConeOffset or None
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if not far_from_cone(pts, ConeOffset(smallest)):
        return None
    lo, hi = smallest, 2.0 * (1.0 + float(np.max(np.abs(pts))))
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if far_from_cone(pts, ConeOffset(mid)):
            lo = mid
        else:
            hi = mid
    return ConeOffset(lo)
