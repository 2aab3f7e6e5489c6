"""
Sample tables of curves and their text serializations.

A sampled curve is an ``xarray.Dataset`` over the parameter ``s``; CSV output goes
through pandas with 17 significant digits so doubles survive a round trip, and
reports are pydantic models written as indented JSON.
"""
import typing
from pathlib import Path

import numpy as np
import xarray as xr
from loguru import logger
from pydantic import BaseModel

from lorentz_euler import curves as cv
from lorentz_euler import minkowski as mk
from lorentz_euler.curves import ParamCurve

CSV_COLUMNS = ["s", "x", "y", "rho", "phi", "kappa", "residual", "region", "causal"]
FLOAT_FORMAT = "%.17g"


class SweepRow(BaseModel):
    index: int  # position in the alpha grid
    alpha: float
    label: str
    max_abs_residual: typing.Optional[float]
    verdict: bool
    error: typing.Optional[str] = None


class SweepReport(BaseModel):
    """Residual verdicts of one family over a grid of alpha values, in grid order."""
    family: str
    tolerance: float
    rows: typing.List[SweepRow]
    verdict: bool


class GlueReport(BaseModel):
    """Residuals of the pieces of a glued curve; ``closure_gap`` is set for closed curves."""
    alpha: float
    closed: bool
    closure_gap: typing.Optional[float]
    junctions: typing.List[typing.Tuple[float, float]]
    pieces: typing.List[cv.ResidualReport]
    verdict: bool


def curve_table(c: ParamCurve, alpha: float, s) -> xr.Dataset:
    """
    Samples a curve with its polar coordinates, curvature, stationarity residual for
    ``alpha``, cone region and causal character.

    :param c: a non-degenerate curve off the lightlike cone
    :type c: lorentz_euler.curves.ParamCurve
    :param alpha: exponent of the residual column
    :type alpha: float
    :param s: parameters in the domain of ``c``
    :returns: dataset over ``s`` with the variables of :data:`CSV_COLUMNS`
    :rtype: xarray.Dataset
    :raises ConeContact: if a sample lies on the cone
    :raises LightlikeTangent: if the tangent is lightlike at a sample

    **Example usage**
    ::
        from lorentz_euler.families import FamilyClass, FamilySpec, family_curve
        from lorentz_euler.tables import curve_table

        spec = FamilySpec(family=FamilyClass.SPACELIKE_CMINUS, alpha=2.0)
        table = curve_table(family_curve(spec), 2.0, spec.domain.grid(200))
        float(abs(table.residual).max())  # below 1e-8
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    values = cv.residual_values(c, alpha, s)
    p = values.positions
    polar = [mk.to_polar(point) for point in p]
    causal = [k.value for k in values.causal]
    return xr.Dataset(
        data_vars={
            "x": ("s", p[:, 0]),
            "y": ("s", p[:, 1]),
            "rho": ("s", np.array([h.rho for h in polar])),
            "phi": ("s", np.array([h.phi for h in polar])),
            "kappa": ("s", values.kappa),
            "residual": ("s", values.residual),
            "region": ("s", np.array([h.region.value for h in polar])),
            "causal": ("s", np.array(causal)),
        },
        coords={"s": s},
        attrs={"curve": c.name, "alpha": alpha},
    )


def table_to_csv(table: xr.Dataset) -> str:
    """The table as CSV text with the fixed column order and a header row."""
    frame = table.to_dataframe().reset_index()
    return frame[CSV_COLUMNS].to_csv(float_format=FLOAT_FORMAT, index=False, lineterminator="\n")


def report_to_json(report: BaseModel) -> str:
    return report.model_dump_json(indent=2) + "\n"


def write_text(text: str, path: typing.Union[str, Path, None]) -> None:
    """Writes ``text`` to ``path``, or to standard output when ``path`` is None."""
    if path is None:
        print(text, end="")
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline="") as f:
        f.write(text)
    logger.debug(f'wrote {len(text)} characters to {path}')


def sweep_table(report: SweepReport) -> xr.Dataset:
    """The rows of a sweep over the grid index; failed rows carry NaN residuals."""
    rows = report.rows
    return xr.Dataset(
        data_vars={
            "alpha": ("index", np.array([r.alpha for r in rows])),
            "label": ("index", np.array([r.label for r in rows])),
            "max_abs_residual": ("index", np.array(
                [np.nan if r.max_abs_residual is None else r.max_abs_residual for r in rows])),
            "verdict": ("index", np.array([r.verdict for r in rows])),
            "error": ("index", np.array([r.error or "" for r in rows])),
        },
        coords={"index": np.array([r.index for r in rows])},
        attrs={"family": report.family, "tolerance": report.tolerance},
    )


def sweep_to_csv(report: SweepReport) -> str:
    frame = sweep_table(report).to_dataframe().reset_index()
    return frame.to_csv(float_format=FLOAT_FORMAT, index=False, lineterminator="\n")
