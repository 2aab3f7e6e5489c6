"""
Command line front end, ``lorentz-euler <command> [options]``.

Every command prints CSV or JSON to standard output, to ``--output``, or to a file
named after the command in the directory of ``LORENTZ_EULER_OUTPUT_DIR``. Exit codes:
0 on success with a true verdict, 1 for a false verdict or a library error (reported
as one JSON object on stderr), 2 for invalid arguments.
"""
import argparse
import json
import os
import sys
import typing
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from pathlib import Path

import xarray as xr
from loguru import logger
from pydantic import BaseModel, Field, PositiveFloat, PositiveInt, ValidationError, model_validator

from lorentz_euler import __version__
from lorentz_euler import curves as cv
from lorentz_euler import minkowski as mk
from lorentz_euler import tables
from lorentz_euler.config import DEFAULTS, default_output_dir
from lorentz_euler.curves import Interval, ParamCurve
from lorentz_euler.errors import LorentzEulerError
from lorentz_euler.families import (
    CircleKind,
    CircleSpec,
    FamilyClass,
    FamilySpec,
    circle_curve,
    family_curve,
    glued_mixed_curve,
    inverse_line_curves,
)
from lorentz_euler.minkowski import ChartSign
from lorentz_euler.ode import inverted_alpha
from lorentz_euler.tables import GlueReport, SweepReport, SweepRow
from lorentz_euler.variational import EndpointPair, maximizer_check

# options whose values may start with a minus sign without being numbers
_VALUE_OPTIONS = ("--domain", "--center", "--p1", "--p2")


class Command(str, Enum):
    GENERATE = "generate"
    VERIFY = "verify"
    TRANSFORM = "transform"
    SWEEP = "sweep"
    MAXIMIZE = "maximize"
    GLUE = "glue"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class TransformOp(str, Enum):
    SWAP = "swap"
    INVERSION = "inversion"
    BOOST = "boost"
    DILATE = "dilate"
    REFLECT_X = "reflect-x"
    REFLECT_Y = "reflect-y"


_DEFAULT_FORMAT = {
    Command.GENERATE: OutputFormat.CSV,
    Command.VERIFY: OutputFormat.JSON,
    Command.TRANSFORM: OutputFormat.JSON,
    Command.SWEEP: OutputFormat.JSON,
    Command.MAXIMIZE: OutputFormat.JSON,
    Command.GLUE: OutputFormat.CSV,
}
_CURVE_COMMANDS = (Command.GENERATE, Command.VERIFY, Command.TRANSFORM)


def default_workers() -> int:
    """Sweep threads: ``cli.workers`` from the defaults, at most the CPU count."""
    return max(1, min(os.cpu_count() or 1, DEFAULTS.cli.workers))


class RunConfig(BaseModel):
    """
    One command line invocation. Curve commands select exactly one of a family
    member, a circle or an inverse line.
    """
    command: Command
    family: typing.Optional[FamilyClass] = None
    c: typing.Optional[float] = None
    circle: typing.Optional[CircleKind] = None
    center: typing.Tuple[float, float] = (0.0, 0.0)
    radius: PositiveFloat = 1.0
    branch: typing.Literal[1, -1] = 1
    inverse_line: typing.Optional[ChartSign] = None
    alpha: typing.Optional[float] = None
    domain: typing.Optional[Interval] = None
    boost: float = 0.0
    scale: PositiveFloat = 1.0
    samples: int = Field(DEFAULTS.cli.samples, ge=2)
    tolerance: PositiveFloat = DEFAULTS.tolerances.residual
    output_path: typing.Optional[Path] = None
    output_format: typing.Optional[OutputFormat] = None
    op: typing.Optional[TransformOp] = None
    t: float = 0.0
    lam: float = 1.0
    alphas: typing.Optional[typing.List[float]] = None
    workers: PositiveInt = Field(default_factory=default_workers)
    p1: typing.Optional[typing.Tuple[float, float]] = None
    p2: typing.Optional[typing.Tuple[float, float]] = None
    competitors: PositiveInt = 100
    seed: int = 0
    verbose: bool = False

    @model_validator(mode="after")
    def _check_command(self):
        name = self.command.value
        if self.command in _CURVE_COMMANDS:
            chosen = [v for v in (self.family, self.circle, self.inverse_line) if v is not None]
            if len(chosen) != 1:
                raise ValueError(f'{name} needs exactly one of --family, --circle, --inverse-line')
        if self.command is Command.TRANSFORM and self.op is None:
            raise ValueError('transform needs --op')
        if self.command is Command.SWEEP and self.family is None:
            raise ValueError('sweep needs --family')
        if self.command is Command.MAXIMIZE:
            if self.p1 is None or self.p2 is None:
                raise ValueError('maximize needs --p1 and --p2')
            if self.output_format is OutputFormat.CSV:
                raise ValueError('maximize writes JSON reports only')
        if self.command is not Command.SWEEP and self.alpha is None:
            raise ValueError(f'{name} needs --alpha')
        if self.command is Command.GLUE and self.alpha not in (-2.0, 2.0):
            raise ValueError(f'glue needs --alpha -2 or --alpha 2, got {self.alpha}')
        if self.output_format is None:
            self.output_format = _DEFAULT_FORMAT[self.command]
        return self


def family_spec(family: FamilyClass, alpha: float, c: typing.Optional[float] = None,
                domain: typing.Optional[Interval] = None) -> FamilySpec:
    """A family member; at the critical alpha a missing ``c`` comes from the defaults."""
    if c is None and alpha == family.critical_alpha:
        c = DEFAULTS.families.critical_c[family.value]
    return FamilySpec(family=family, alpha=alpha, c=c, domain=domain)


def selected_curve(config: RunConfig) -> ParamCurve:
    if config.family is not None:
        spec = family_spec(config.family, config.alpha, config.c, config.domain)
        return family_curve(spec, boost=config.boost, scale=config.scale).renamed(spec.label())
    if config.circle is not None:
        return circle_curve(CircleSpec(kind=config.circle, center=config.center,
                                       radius=config.radius, branch=config.branch,
                                       domain=config.domain))
    cminus, cplus = inverse_line_curves()
    curve = cminus if config.inverse_line is ChartSign.CMINUS else cplus
    return curve if config.domain is None else curve.restrict(config.domain)


def transformed_curve(curve: ParamCurve, config: RunConfig) -> typing.Tuple[ParamCurve, float]:
    """The image of ``curve`` under ``config.op`` and the alpha it is stationary for."""
    op, alpha = config.op, config.alpha
    if op is TransformOp.INVERSION:
        middle = curve.domain.grid(3)[1]
        region = mk.region_of(curve.eval(middle))
        causal = mk.classify(curve.deriv1(middle))
        return cv.inversion_curve(curve), inverted_alpha(alpha, region, causal)
    if op is TransformOp.BOOST:
        return cv.boost_curve(curve, config.t), alpha
    if op is TransformOp.DILATE:
        return cv.dilate_curve(curve, config.lam), alpha
    images = {
        TransformOp.SWAP: cv.swap_curve,
        TransformOp.REFLECT_X: cv.reflect_x_curve,
        TransformOp.REFLECT_Y: cv.reflect_y_curve,
    }
    return images[op](curve), alpha


def _residual_output(curve: ParamCurve, alpha: float, config: RunConfig) -> typing.Tuple[str, bool]:
    s = curve.domain.grid(config.samples)
    report = cv.stationary_residual(curve, alpha, s, config.tolerance)
    if config.output_format is OutputFormat.CSV:
        return tables.table_to_csv(tables.curve_table(curve, alpha, s)), report.verdict
    return tables.report_to_json(report), report.verdict


def run_generate(config: RunConfig) -> typing.Tuple[str, bool]:
    text, _ = _residual_output(selected_curve(config), config.alpha, config)
    return text, True


def run_verify(config: RunConfig) -> typing.Tuple[str, bool]:
    return _residual_output(selected_curve(config), config.alpha, config)


def run_transform(config: RunConfig) -> typing.Tuple[str, bool]:
    image, alpha = transformed_curve(selected_curve(config), config)
    logger.debug(f'{image.name}: verifying at alpha={alpha}')
    return _residual_output(image, alpha, config)


def sweep_row(config: RunConfig, index: int, alpha: float) -> SweepRow:
    family = config.family
    critical = alpha == family.critical_alpha
    label = f'{family.value}(alpha={alpha:g})'
    try:
        spec = family_spec(family, alpha, config.c if critical else None, config.domain)
        label = spec.label()
        report = cv.stationary_residual(family_curve(spec), alpha,
                                        spec.domain.grid(config.samples), config.tolerance)
    except (LorentzEulerError, ValidationError) as e:
        logger.warning(f'sweep {label}: {type(e).__name__}: {e}')
        return SweepRow(index=index, alpha=alpha, label=label, max_abs_residual=None,
                        verdict=False, error=f'{type(e).__name__}: {e}')
    logger.debug(f'sweep {index} {label}: max residual {report.max_abs_residual:.3e}')
    return SweepRow(index=index, alpha=alpha, label=label,
                    max_abs_residual=report.max_abs_residual, verdict=report.verdict)


def run_sweep(config: RunConfig) -> typing.Tuple[str, bool]:
    alphas = config.alphas or DEFAULTS.cli.alpha_grid
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        rows = list(pool.map(lambda item: sweep_row(config, *item), enumerate(alphas)))
    report = SweepReport(family=config.family.value, tolerance=config.tolerance, rows=rows,
                         verdict=all(r.verdict for r in rows))
    if config.output_format is OutputFormat.CSV:
        return tables.sweep_to_csv(report), report.verdict
    return tables.report_to_json(report), report.verdict


def run_maximize(config: RunConfig) -> typing.Tuple[str, bool]:
    pair = EndpointPair.of(config.p1, config.p2)
    report = maximizer_check(pair, config.alpha, config.competitors, config.seed)
    return tables.report_to_json(report), report.verdict


def run_glue(config: RunConfig) -> typing.Tuple[str, bool]:
    glued = glued_mixed_curve(config.alpha)
    n = config.samples
    sampled, reports = [], []
    for piece in glued.pieces:
        s = piece.parameters(n, piece.sample_window())
        reports.append(cv.stationary_residual(piece.curve, config.alpha, s, config.tolerance))
        if config.output_format is OutputFormat.CSV:
            sampled.append(tables.curve_table(piece.curve, config.alpha, s))
    verdict = all(r.verdict for r in reports)
    if config.output_format is OutputFormat.CSV:
        return tables.table_to_csv(xr.concat(sampled, dim="s")), verdict
    report = GlueReport(alpha=config.alpha, closed=glued.closed,
                        closure_gap=glued.closure_gap() if glued.closed else None,
                        junctions=[tuple(j) for j in glued.junctions], pieces=reports,
                        verdict=verdict)
    return tables.report_to_json(report), verdict


_COMMANDS = {
    Command.GENERATE: run_generate,
    Command.VERIFY: run_verify,
    Command.TRANSFORM: run_transform,
    Command.SWEEP: run_sweep,
    Command.MAXIMIZE: run_maximize,
    Command.GLUE: run_glue,
}


def output_destination(config: RunConfig) -> typing.Optional[Path]:
    if config.output_path is not None:
        return config.output_path
    directory = default_output_dir()
    if directory is None:
        return None
    return directory / f'{config.command.value}.{config.output_format.value}'


def run(config: RunConfig) -> int:
    """
    Runs one command and writes its output. Nothing is written when the computation
    raises.

    :param config: the validated invocation
    :type config: lorentz_euler.cli.RunConfig
    :returns: 0 when the verdict holds, 1 otherwise
    :rtype: int
    """
    text, verdict = _COMMANDS[config.command](config)
    tables.write_text(text, output_destination(config))
    logger.debug(f'{config.command.value}: verdict {verdict}')
    return 0 if verdict else 1


def _pair(text: str) -> typing.Tuple[float, float]:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f'expected x,y, got {text!r}') from e
    return x, y


def _interval(text: str) -> Interval:
    try:
        return Interval.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat])
    common.add_argument("--output", dest="output_path", type=Path)
    common.add_argument("--samples", type=int)
    common.add_argument("--tol", dest="tolerance", type=float)
    common.add_argument("-v", "--verbose", action="store_true")

    exponent = argparse.ArgumentParser(add_help=False)
    exponent.add_argument("--alpha", type=float)

    selector = argparse.ArgumentParser(add_help=False)
    group = selector.add_mutually_exclusive_group()
    group.add_argument("--family", choices=[f.value for f in FamilyClass])
    group.add_argument("--circle", choices=[k.value for k in CircleKind])
    group.add_argument("--inverse-line", choices=[r.value for r in ChartSign])
    selector.add_argument("--c", type=float, help="constant of the exponential branch")
    selector.add_argument("--domain", type=_interval, help="parameter window a:b")
    selector.add_argument("--boost", type=float, help="boost applied to a family member")
    selector.add_argument("--scale", type=float, help="dilation applied to a family member")
    selector.add_argument("--center", type=_pair, help="circle center x,y")
    selector.add_argument("--radius", type=float)
    selector.add_argument("--branch", type=int, choices=[1, -1])

    parser = argparse.ArgumentParser(
        prog="lorentz-euler",
        description="Stationary curves of the Euler energy in the Lorentz-Minkowski plane.")
    parser.add_argument("--version", action="version", version=f'lorentz_euler_library {__version__}')
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common, exponent, selector],
                   help="sample a curve with its curvature and residual")
    sub.add_parser("verify", parents=[common, exponent, selector],
                   help="check the stationarity residual of a curve")
    transform = sub.add_parser("transform", parents=[common, exponent, selector],
                               help="map a curve and verify the image")
    transform.add_argument("--op", choices=[o.value for o in TransformOp])
    transform.add_argument("--t", type=float, help="boost parameter")
    transform.add_argument("--lambda", dest="lam", type=float, help="dilation factor")
    sweep = sub.add_parser("sweep", parents=[common], help="verify a family over a grid of alpha")
    sweep.add_argument("--family", choices=[f.value for f in FamilyClass])
    sweep.add_argument("--c", type=float)
    sweep.add_argument("--domain", type=_interval)
    sweep.add_argument("--alphas", type=float, nargs="+")
    sweep.add_argument("--workers", type=int)
    maximize = sub.add_parser("maximize", parents=[common, exponent],
                              help="compare a segment with random competitors")
    maximize.add_argument("--p1", type=_pair)
    maximize.add_argument("--p2", type=_pair)
    maximize.add_argument("--competitors", type=int)
    maximize.add_argument("--seed", type=int)
    sub.add_parser("glue", parents=[common, exponent],
                   help="the stationary curve crossing the cone for alpha = -2 or 2")
    return parser


def _attach_values(argv: typing.Sequence[str]) -> typing.List[str]:
    """Rewrites ``--domain -3:3`` as ``--domain=-3:3`` so argparse keeps the value."""
    out = []
    it = iter(argv)
    for token in it:
        if token in _VALUE_OPTIONS:
            value = next(it, None)
            out.append(token if value is None else f'{token}={value}')
        else:
            out.append(token)
    return out


def setup_logging(verbose: bool) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")


def _report_error(e: Exception) -> None:
    logger.error(f'{type(e).__name__}: {e}')
    print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(_attach_values(argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    setup_logging(args.verbose)
    try:
        config = RunConfig(**{k: v for k, v in vars(args).items() if v is not None})
        return run(config)
    except ValidationError as e:
        _report_error(e)
        return 2
    except LorentzEulerError as e:
        _report_error(e)
        return 1
