"""
Fixed-step integration of the radial equations of stationary curves.

In hyperbolic polar coordinates gamma = rho(s) e(s) the stationarity condition is
one of two autonomous second order equations:

    K1:  rho rho'' + (alpha - 2) rho'^2 + (1 - alpha) rho^2 = 0
    K2:  rho rho'' - (alpha + 2) rho'^2 + (1 + alpha) rho^2 = 0

K1 governs spacelike curves in <p,p> < 0 and timelike curves in <p,p> > 0, K2 the
other two combinations. The substitution rho -> 1/rho (the cone inversion) maps K1
with alpha to K1 with 2 - alpha and K2 with alpha to K2 with -2 - alpha.
"""
import math
import typing
from dataclasses import dataclass
from enum import Enum

import numpy as np
import xarray as xr
from loguru import logger
from pydantic import BaseModel, PositiveFloat

from lorentz_euler.config import DEFAULTS
from lorentz_euler.curves import Interval
from lorentz_euler.errors import BlowUp, StepTooLarge
from lorentz_euler.families import FamilyClass, FamilySpec, family_rho
from lorentz_euler.minkowski import CausalCharacter, ChartSign, ConeRegion


class OdeKind(str, Enum):
    K1 = "k1"
    K2 = "k2"


def ode_kind_for(region: ConeRegion, causal: CausalCharacter) -> OdeKind:
    """The radial equation of curves with this causal character in this region."""
    spacelike = CausalCharacter(causal) is CausalCharacter.SPACELIKE
    in_cminus = ConeRegion(region).chart is ChartSign.CMINUS
    return OdeKind.K1 if spacelike == in_cminus else OdeKind.K2


def family_ode_kind(family: FamilyClass) -> OdeKind:
    return ode_kind_for(family.region, family.causal)


def inversion_alpha_map(alpha: float, region_sign: ChartSign) -> float:
    """
    The exponent carried by the inverse of a stationary spacelike curve: 2 - alpha in
    <p,p> < 0 and -2 - alpha in <p,p> > 0. The map is an involution.

    :param alpha: exponent of the original curve
    :type alpha: float
    :param region_sign: chart containing the curve
    :type region_sign: lorentz_euler.minkowski.ChartSign
    :rtype: float

    **Example usage**
    ::
        from lorentz_euler.minkowski import ChartSign
        from lorentz_euler.ode import inversion_alpha_map

        inversion_alpha_map(0.0, ChartSign.CMINUS)  # 2.0
    """
    if ChartSign(region_sign) is ChartSign.CMINUS:
        return 2.0 - alpha
    return -2.0 - alpha


def inverted_alpha(alpha: float, region: ConeRegion, causal: CausalCharacter) -> float:
    """
    Exponent of the inverse of a stationary curve of either causal character. It
    follows the radial equation, so timelike curves in <p,p> > 0 map like spacelike
    ones in <p,p> < 0 (origin-centered pseudocircles keep alpha = 1).
    """
    kind = ode_kind_for(region, causal)
    return inversion_alpha_map(alpha, ChartSign.CMINUS if kind is OdeKind.K1 else ChartSign.CPLUS)


def ode_residual(kind: OdeKind, alpha: float, rho, rho1, rho2):
    """
    Left-hand side of the radial equation divided by rho^2 + rho'^2.
    Accepts floats or arrays.
    """
    rho, rho1, rho2 = (np.asarray(v, dtype=float) for v in (rho, rho1, rho2))
    if OdeKind(kind) is OdeKind.K1:
        lhs = rho * rho2 + (alpha - 2.0) * rho1 ** 2 + (1.0 - alpha) * rho ** 2
    else:
        lhs = rho * rho2 - (alpha + 2.0) * rho1 ** 2 + (1.0 + alpha) * rho ** 2
    r = lhs / (rho ** 2 + rho1 ** 2)
    return float(r) if np.ndim(r) == 0 else r


def acceleration(kind: OdeKind, alpha: float, rho, rho1):
    """rho'' solved from the radial equation."""
    if kind is OdeKind.K1:
        return (-(alpha - 2.0) * rho1 ** 2 - (1.0 - alpha) * rho ** 2) / rho
    return ((alpha + 2.0) * rho1 ** 2 - (1.0 + alpha) * rho ** 2) / rho


class OdeProblem(BaseModel):
    """Initial value problem for one of the radial equations."""
    kind: OdeKind
    alpha: float
    rho0: PositiveFloat
    rho1_0: float
    s0: float
    s_end: float
    step: PositiveFloat = DEFAULTS.ode.step

    @property
    def steps(self) -> int:
        """Step count, a multiple of 4 so the order check can halve it twice."""
        return 4 * max(1, math.ceil(abs(self.s_end - self.s0) / (4 * self.step) - 1e-9))


@dataclass(frozen=True)
class Trajectory:
    """
    Nodes of an integrated (or transformed) solution. ``rho2`` is the second
    derivative implied by the equation at each node.
    """
    s: np.ndarray
    rho: np.ndarray
    rho1: np.ndarray
    rho2: np.ndarray
    meta: OdeProblem

    @property
    def nodes(self) -> typing.List[typing.Tuple[float, float, float]]:
        return list(zip(self.s.tolist(), self.rho.tolist(), self.rho1.tolist()))

    def to_dataset(self) -> xr.Dataset:
        """
        The trajectory as an xarray Dataset with coordinate ``s``.

        **Example usage**
        ::
            from lorentz_euler.ode import OdeKind, OdeProblem, integrate

            problem = OdeProblem(kind=OdeKind.K1, alpha=2.0, rho0=1.0, rho1_0=0.0,
                                 s0=0.0, s_end=2.0)
            integrate(problem).to_dataset().rho.sel(s=2.0)
        """
        return xr.Dataset(
            data_vars={
                "rho": ("s", self.rho),
                "rho1": ("s", self.rho1),
                "rho2": ("s", self.rho2),
            },
            coords={"s": self.s},
            attrs={"kind": self.meta.kind.value, "alpha": self.meta.alpha,
                   "step": self.meta.step},
        )


def _check_band(rho, s) -> None:
    floor, cap = DEFAULTS.ode.rho_floor, DEFAULTS.ode.rho_cap
    if not (math.isfinite(rho) and floor < rho < cap):
        raise BlowUp(f'rho = {rho!r} left ({floor:g}, {cap:g}) at s = {s!r}')


def _rk4(p: OdeProblem, n: int) -> typing.Tuple[np.ndarray, np.ndarray]:
    """Classical Runge-Kutta on (rho, rho') with ``n`` equal steps."""
    h = (p.s_end - p.s0) / n
    s = p.s0 + h * np.arange(n + 1)
    y = np.empty((n + 1, 2))
    y[0] = (p.rho0, p.rho1_0)
    _check_band(p.rho0, p.s0)

    def f(v):
        return np.array([v[1], acceleration(p.kind, p.alpha, v[0], v[1])])

    for i in range(n):
        v = y[i]
        k1 = f(v)
        k2 = f(v + 0.5 * h * k1)
        k3 = f(v + 0.5 * h * k2)
        k4 = f(v + h * k3)
        y[i + 1] = v + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _check_band(y[i + 1, 0], s[i + 1])
    s[-1] = p.s_end
    return s, y


def convergence_order(p: OdeProblem, steps: typing.Sequence[int]) -> float:
    """
    Empirical order log2(|y_n - y_2n| / |y_2n - y_4n|) from endpoint values at
    three step counts ``steps = (n, 2n, 4n)``. Returns ``inf`` when both
    differences are below round-off.
    """
    ends = [_rk4(p, n)[1][-1] for n in steps]
    d1 = float(np.max(np.abs(ends[0] - ends[1])))
    d2 = float(np.max(np.abs(ends[1] - ends[2])))
    noise = 1e-11 * (1.0 + float(np.max(np.abs(ends[2]))))
    logger.debug(f'order check {p.kind.value} alpha={p.alpha}: steps {list(steps)}, '
                 f'differences {d1:.3e} {d2:.3e}')
    if d2 <= noise:
        return math.inf
    return math.log2(d1 / d2)


def integrate(p: OdeProblem, check_order: bool = True,
              min_order: typing.Optional[float] = None) -> Trajectory:
    """
    Integrates the radial equation with classical fourth order Runge-Kutta at the
    fixed step of the problem (rounded so the window holds a whole number of steps).

    The step is accepted when the runs at n/4, n/2 and n steps, the last one being
    the returned solution, show order ``min_order`` or more, or agree to round-off.

    :param p: the problem
    :type p: lorentz_euler.ode.OdeProblem
    :param check_order: run the order check
    :param min_order: accepted empirical order, 3.7 by default
    :rtype: lorentz_euler.ode.Trajectory
    :raises BlowUp: if rho leaves (1e-8, 1e12) or stops being finite
    :raises StepTooLarge: if the order check fails

    **Example usage**
    ::
        import math
        from lorentz_euler.ode import OdeKind, OdeProblem, integrate

        t = integrate(OdeProblem(kind=OdeKind.K1, alpha=2.0, rho0=1.0, rho1_0=0.0,
                                 s0=0.0, s_end=2.0))
        abs(t.rho[-1] - math.cosh(2.0))  # below 1e-8
    """
    n = p.steps
    s, y = _rk4(p, n)
    if check_order:
        order = convergence_order(p, (n // 4, n // 2, n))
        if order < (min_order or DEFAULTS.ode.min_order):
            raise StepTooLarge(f'empirical order {order:.2f} up to {n} steps: the step '
                               f'{p.step:g} does not resolve the solution')
    rho, rho1 = y[:, 0], y[:, 1]
    return Trajectory(s, rho, rho1, acceleration(p.kind, p.alpha, rho, rho1), p)


def invert_trajectory(t: Trajectory) -> Trajectory:
    """
    The trajectory of 1/rho, which solves the same kind of equation with the
    inverted alpha.
    """
    rho, rho1, rho2 = t.rho, t.rho1, t.rho2
    sigma = 1.0 / rho
    sigma1 = -rho1 / rho ** 2
    sigma2 = -rho2 / rho ** 2 + 2.0 * rho1 ** 2 / rho ** 3
    region_sign = ChartSign.CMINUS if t.meta.kind is OdeKind.K1 else ChartSign.CPLUS
    meta = t.meta.model_copy(update={
        "alpha": inversion_alpha_map(t.meta.alpha, region_sign),
        "rho0": float(sigma[0]),
        "rho1_0": float(sigma1[0]),
    })
    return Trajectory(t.s, sigma, sigma1, sigma2, meta)


def trajectory_residual(t: Trajectory) -> float:
    """Largest normalized residual of the trajectory in its own equation."""
    return float(np.max(np.abs(ode_residual(t.meta.kind, t.meta.alpha, t.rho, t.rho1, t.rho2))))


def shoot_match(spec: FamilySpec, s_range: typing.Optional[Interval] = None,
                step: typing.Optional[float] = None) -> float:
    """
    Integrates the radial equation of the family from the closed-form initial data
    at the start of ``s_range`` and returns max |rho_numeric - rho_closed| over the
    nodes.

    :param spec: the family member
    :type spec: lorentz_euler.families.FamilySpec
    :param s_range: integration window, the domain of ``spec`` when omitted
    :param step: step size, 1e-3 by default
    :rtype: float
    :raises BlowUp: see :func:`integrate`
    :raises StepTooLarge: see :func:`integrate`
    """
    window = s_range or spec.domain
    rho0, rho1_0, _ = family_rho(spec, window.lower)
    problem = OdeProblem(kind=family_ode_kind(spec.family), alpha=spec.alpha, rho0=rho0,
                         rho1_0=rho1_0, s0=window.lower, s_end=window.upper,
                         step=step or DEFAULTS.ode.step)
    t = integrate(problem)
    closed, _, _ = family_rho(spec, t.s)
    gap = float(np.max(np.abs(t.rho - closed)))
    logger.debug(f'shoot {spec.label()} on {tuple(window)[:2]}: max gap {gap:.3e}')
    return gap
