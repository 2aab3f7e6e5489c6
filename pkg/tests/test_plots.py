import matplotlib.pyplot as plt
import pytest

from lorentz_euler.families import (
    FamilyClass,
    FamilySpec,
    asymptote_data,
    family_curve,
    glued_mixed_curve,
)
from lorentz_euler.plotting import CurvePlot
from lorentz_euler.tables import curve_table


@pytest.fixture(autouse=True)
def close_figures():
    yield
    plt.close("all")


def test_plot_curve(cminus_spec, cminus_curve):
    figs = CurvePlot.plot_curve(cminus_curve, lines=asymptote_data(cminus_spec).lines)
    assert list(figs) == [cminus_curve.name]
    ax = figs[cminus_curve.name].axes[0]
    # two cone lines, two asymptotes and the trace
    assert len(ax.lines) == 5


def test_plot_family_skips_the_critical_alpha():
    figs = CurvePlot.plot_family(FamilyClass.SPACELIKE_CMINUS, [0.5, 1.0, 2.0])
    assert list(figs) == ["spacelike-cminus(alpha=0.5)", "spacelike-cminus(alpha=2)"]


def test_plot_glued():
    figs = CurvePlot.plot_glued(glued_mixed_curve(-2.0), n=50)
    ax = figs["glued(alpha=-2)"].axes[0]
    assert len(ax.lines) == 2 + 4
    assert len(ax.collections) == 1


def test_plot_table(cminus_spec, cminus_curve):
    table = curve_table(cminus_curve, 2.0, cminus_spec.domain.grid(50))
    figs = CurvePlot.plot_table(table)
    assert set(figs) == {"residual", "kappa"}
    with pytest.raises(ValueError):
        CurvePlot.plot_table(table, ["torsion"])


def test_plot_exponential_member():
    spec = FamilySpec(family=FamilyClass.TIMELIKE_CMINUS, alpha=-1.0, c=2.0)
    figs = CurvePlot.plot_curve(family_curve(spec), reach=5.0)
    assert figs[spec.label()].axes[0].get_xlim() == (-5.0, 5.0)
