import typing

import matplotlib.pyplot as plt
import numpy as np

from lorentz_euler.curves import ParamCurve
from lorentz_euler.families import (
    AsymptoticLine,
    FamilyClass,
    FamilySpec,
    PiecewiseCurve,
    asymptote_data,
    family_curve,
)


def _draw_cone(ax, reach: float) -> None:
    ax.plot([-reach, reach], [-reach, reach], color="0.6", lw=0.8, ls="--")
    ax.plot([-reach, reach], [reach, -reach], color="0.6", lw=0.8, ls="--")


def _draw_line(ax, line: AsymptoticLine, reach: float) -> None:
    t = np.array([-2.0 * reach, 2.0 * reach])
    p, d = np.asarray(line.point), np.asarray(line.direction)
    ax.plot(p[0] + t * d[0], p[1] + t * d[1], color="tab:red", lw=0.8, ls=":")


def _frame(ax, points: np.ndarray, reach: typing.Optional[float]) -> float:
    if reach is None:
        reach = 1.1 * float(np.max(np.abs(points))) or 1.0
    ax.set_xlim(-reach, reach)
    ax.set_ylim(-reach, reach)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    return reach


class CurvePlot:
    """
    To provide visualization functions for stationary curves. Every method returns a
    dictionary of matplotlib figures.
    """

    @staticmethod
    def plot_curve(curve: ParamCurve, n: int = 400, lines: typing.Sequence[AsymptoticLine] = (),
                   reach: typing.Optional[float] = None) -> typing.Dict[str, plt.Figure]:
        """
        Plots the trace of a curve together with the lightlike cone and optional
        asymptotic lines.

        :param curve: The curve to plot
        :type curve: lorentz_euler.curves.ParamCurve
        :param n: Number of samples on the domain
        :type n: int
        :param lines: Lines drawn next to the trace
        :type lines: list[lorentz_euler.families.AsymptoticLine]
        :param reach: Half width of the square window, fitted to the trace when omitted
        :type reach: float
        :returns: A dictionary with the figure under the curve name
        :rtype: dict

        **Example usage**
        ::
            from lorentz_euler.families import FamilyClass, FamilySpec, asymptote_data, family_curve
            from lorentz_euler.plotting import CurvePlot

            spec = FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=2.0)
            figs = CurvePlot.plot_curve(family_curve(spec), lines=asymptote_data(spec).lines)
        """
        points = curve.position(curve.domain.grid(n))
        fig, ax = plt.subplots()
        reach = _frame(ax, points, reach)
        _draw_cone(ax, reach)
        for line in lines:
            _draw_line(ax, line, reach)
        ax.plot(points[:, 0], points[:, 1], color="tab:blue")
        ax.set_title(curve.name)
        return {curve.name: fig}

    @staticmethod
    def plot_family(family: FamilyClass, alphas: typing.Sequence[float],
                    reach: float = 4.0) -> typing.Dict[str, plt.Figure]:
        """
        Plots the normalized member of a family for each alpha, with its asymptotes.
        Critical values of alpha are skipped.

        :param family: The family
        :type family: lorentz_euler.families.FamilyClass
        :param alphas: Values of alpha to plot
        :type alphas: list[float]
        :returns: A dictionary of figures keyed by member label
        :rtype: dict
        """
        figs = {}
        for alpha in alphas:
            if alpha == family.critical_alpha:
                continue
            spec = FamilySpec(family=family, alpha=alpha)
            figs.update(CurvePlot.plot_curve(family_curve(spec).renamed(spec.label()),
                                             lines=asymptote_data(spec).lines, reach=reach))
        return figs

    @staticmethod
    def plot_glued(curve: PiecewiseCurve, n: int = 200, reach: float = 3.0) -> typing.Dict[str, plt.Figure]:
        """Plots the pieces of a glued curve in alternating colors and marks the junctions."""
        fig, ax = plt.subplots()
        _frame(ax, np.zeros((1, 2)), reach)
        _draw_cone(ax, reach)
        for k, piece in enumerate(curve.pieces):
            points = piece.curve.position(piece.parameters(n))
            ax.plot(points[:, 0], points[:, 1], color="tab:blue" if k % 2 == 0 else "tab:orange")
        if curve.junctions:
            junctions = np.asarray(curve.junctions)
            ax.scatter(junctions[:, 0], junctions[:, 1], color="k", s=12, zorder=3)
        name = f'glued(alpha={curve.alpha:g})'
        ax.set_title(name)
        return {name: fig}

    @staticmethod
    def plot_table(table, field_names: typing.Sequence[str] = ("residual", "kappa")) -> typing.Dict[str, plt.Figure]:
        """
        Plots variables of a sample table against the parameter.

        :param table: A table made by :func:`lorentz_euler.tables.curve_table`
        :type table: xarray.Dataset
        :param field_names: Variables to plot
        :type field_names: list
        :returns: A dictionary of plots of the variables in field_names
        :rtype: dict
        """
        figs = {}
        for field_name in field_names:
            if field_name not in table.data_vars:
                raise ValueError(f'{field_name} not found in the table')
            fig = plt.figure()
            table[field_name].plot()
            figs[field_name] = fig
        return figs
