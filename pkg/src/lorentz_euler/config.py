"""
Numerical defaults shipped with the package (``data/defaults.yaml``).

The YAML file is read once at import time and validated by :class:`Defaults`;
modules read their default tolerances from :data:`DEFAULTS`.
"""
import os
import typing
from importlib import resources
from pathlib import Path

import yaml
from loguru import logger
from pydantic import BaseModel, Field, PositiveFloat, PositiveInt, ValidationError


class ToleranceDefaults(BaseModel):
    classification: PositiveFloat
    cone_floor: PositiveFloat
    residual: PositiveFloat
    collinearity: PositiveFloat


class QuadratureDefaults(BaseModel):
    points: PositiveInt
    panels: PositiveInt
    rel_tol: PositiveFloat
    max_panels: PositiveInt


class OdeDefaults(BaseModel):
    step: PositiveFloat
    rho_floor: PositiveFloat
    rho_cap: PositiveFloat
    min_order: PositiveFloat


class VariationalDefaults(BaseModel):
    eps_ladder: typing.List[PositiveFloat]
    max_bumps: PositiveInt
    max_attempts: PositiveInt
    noise_floor: PositiveFloat
    divergence_eps: typing.List[PositiveFloat]


class FamilyDefaults(BaseModel):
    window: PositiveFloat
    edge: PositiveFloat
    argument_reach: PositiveFloat
    glue_sample_reach: PositiveFloat
    critical_c: typing.Dict[str, float]


class CliDefaults(BaseModel):
    samples: int = Field(ge=2)
    alpha_grid: typing.List[float]
    workers: PositiveInt
    output_env: str


class Defaults(BaseModel):
    """
    All numerical defaults of the library, one section per module.
    """
    tolerances: ToleranceDefaults
    quadrature: QuadratureDefaults
    ode: OdeDefaults
    variational: VariationalDefaults
    families: FamilyDefaults
    cli: CliDefaults


def load_defaults(path: typing.Union[str, Path, None] = None) -> Defaults:
    """
    Loads and validates a defaults file.

    :param path: YAML file to read; the packaged ``data/defaults.yaml`` when omitted
    :type path: str or pathlib.Path or None
    :returns: the validated defaults
    :rtype: lorentz_euler.config.Defaults
    """
    if path is None:
        text = resources.files("lorentz_euler").joinpath("data/defaults.yaml").read_text()
    else:
        text = Path(path).read_text()
    try:
        return Defaults(**yaml.safe_load(text))
    except ValidationError as e:
        logger.error(e)
        raise


def default_output_dir() -> typing.Union[Path, None]:
    """Directory named by the output environment variable, if it is set."""
    value = os.environ.get(DEFAULTS.cli.output_env)
    return Path(value) if value else None


DEFAULTS = load_defaults()
