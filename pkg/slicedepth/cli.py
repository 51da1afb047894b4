"""Command line interface for slicedepth."""

from __future__ import annotations

import argparse
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import wraps
import logging
import random
import sys
from typing import Any

import voluptuous as vol

from .const import (
    COMMAND_BETTI,
    COMMAND_CERTIFY,
    COMMAND_COLON,
    COMMAND_CONSTRUCT,
    COMMAND_GB,
    COMMAND_GROWTH,
    COMMAND_MEMBER,
    COMMAND_REPORT_ALL,
    COMMAND_RESOLVE,
    COMMAND_SUPPORT,
    COMMANDS,
    CONF_COMMAND,
    CONF_FIELD,
    CONF_FORMAT,
    CONF_JOBS,
    CONF_MAX_LENGTH,
    CONF_MAXIMAL,
    CONF_MODE,
    CONF_ORDER,
    CONF_POLY,
    CONF_SAMPLE,
    CONF_SEED,
    CONF_SHAPE,
    CONF_SHOW_F,
    CONF_SIZE,
    CONF_VERBOSE,
    DEFAULT_FIELD,
    DEFAULT_FORMAT,
    DEFAULT_JOBS,
    DEFAULT_MAX_LENGTH,
    DEFAULT_MODE,
    DEFAULT_ORDER,
    DEFAULT_SAMPLE,
    DEFAULT_SEED,
    DIRECT_RESOLUTION_LIMIT,
    DOMAIN,
    ERROR_CERTIFICATE,
    ERROR_CHARACTERISTIC,
    ERROR_FIELD_MISMATCH,
    ERROR_INVALID_COMMAND,
    ERROR_INVALID_SHAPE,
    ERROR_RESOLUTION,
    ERROR_SYNTAX,
    ERROR_UNKNOWN,
    EXIT_ERROR,
    EXIT_FAIL,
    EXIT_PASS,
    FORMATS,
    MODES,
    ORDERS,
    PRIME_FIELD_COMMANDS,
)
from .coordinator import certify, certify_with_recursion
from .exceptions import (
    CertificateError,
    CharacteristicError,
    FieldMismatchError,
    InvalidCommand,
    PolynomialSyntaxError,
    ResolutionError,
    ShapeError,
    ShapeMismatchError,
)
from .groebner import (
    Ideal,
    colon,
    colon_maximal,
    groebner,
    ideal_equal,
    ideal_member,
    is_groebner,
    minimal_generators,
)
from .poly import (
    Field,
    MonomialOrder,
    VarIndex,
    field_name,
    format_monomial,
    format_polynomial,
    parse_field,
    parse_order,
)
from .parser import parse_polynomial
from .report import Report
from .resolution import ab_projdim, betti, betti_text, free_resolution
from .slicefamily import (
    Shape,
    build_F,
    build_ideal,
    cubic_support_size,
    generator_degrees,
    growth_shape,
    support_bound,
    support_count,
    witness_alpha,
    witness_monomial,
)
from .witness import DepthZeroCertificate

_LOGGER = logging.getLogger(__name__)


def shape_literal(value: Any) -> Shape:
    """Validate a shape literal such as 2x3x2."""
    try:
        return Shape.parse(str(value))
    except ShapeError as err:
        raise vol.Invalid(str(err)) from err


def field_literal(value: Any) -> Field:
    """Validate a field name: q or f followed by a prime."""
    try:
        return parse_field(str(value))
    except FieldMismatchError as err:
        raise vol.Invalid(str(err)) from err


POSITIVE_INT = vol.All(vol.Coerce(int), vol.Range(min=1))

COMMAND_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_COMMAND): vol.In(COMMANDS),
        vol.Optional(CONF_SHAPE): shape_literal,
        vol.Optional(CONF_FIELD, default=DEFAULT_FIELD): field_literal,
        vol.Optional(CONF_ORDER, default=DEFAULT_ORDER): vol.All(
            vol.In(ORDERS), parse_order
        ),
        vol.Optional(CONF_MODE, default=DEFAULT_MODE): vol.In(MODES),
        vol.Optional(CONF_MAX_LENGTH, default=DEFAULT_MAX_LENGTH): POSITIVE_INT,
        vol.Optional(CONF_FORMAT, default=DEFAULT_FORMAT): vol.In(FORMATS),
        vol.Optional(CONF_JOBS, default=DEFAULT_JOBS): POSITIVE_INT,
        vol.Optional(CONF_SEED, default=DEFAULT_SEED): vol.Coerce(int),
        vol.Optional(CONF_SAMPLE, default=DEFAULT_SAMPLE): vol.All(
            vol.Coerce(int), vol.Range(min=0)
        ),
        vol.Optional(CONF_POLY): str,
        vol.Optional(CONF_MAXIMAL, default=False): bool,
        vol.Optional(CONF_SHOW_F, default=False): bool,
        vol.Optional(CONF_SIZE): vol.Coerce(int),
        vol.Optional(CONF_VERBOSE, default=False): bool,
    }
)


@dataclass(frozen=True, kw_only=True)
class Command:
    """A validated command."""

    command: str
    shape: Shape | None
    field: Field
    order: MonomialOrder
    mode: str = DEFAULT_MODE
    max_length: int = DEFAULT_MAX_LENGTH
    output_format: str = DEFAULT_FORMAT
    jobs: int = DEFAULT_JOBS
    seed: int = DEFAULT_SEED
    sample: int = DEFAULT_SAMPLE
    poly: str | None = None
    maximal: bool = False
    show_f: bool = False
    size: int | None = None
    verbose: bool = False


def validate_command(data: dict[str, Any]) -> Command:
    """Validate raw arguments into a Command."""
    try:
        valid = COMMAND_SCHEMA(data)
    except vol.MultipleInvalid as err:
        key = err.path[0] if err.path else None
        if key == CONF_SHAPE:
            raise ShapeError(err.msg) from err
        if key == CONF_FIELD:
            raise FieldMismatchError(err.msg) from err
        raise InvalidCommand(f"{key}: {err.msg}") from err
    command = valid[CONF_COMMAND]
    if command != COMMAND_GROWTH and CONF_SHAPE not in valid:
        raise InvalidCommand(f"{command} needs --shape")
    if command == COMMAND_GROWTH and CONF_SIZE not in valid:
        raise InvalidCommand(f"{command} needs --n")
    if command == COMMAND_MEMBER and CONF_POLY not in valid:
        raise InvalidCommand(f"{command} needs --poly")
    if command == COMMAND_COLON and CONF_POLY not in valid and not valid[CONF_MAXIMAL]:
        raise InvalidCommand(f"{command} needs --poly or --maximal")
    if valid[CONF_FIELD].characteristic() and command not in PRIME_FIELD_COMMANDS:
        raise CharacteristicError(f"{command} contracts polynomials, use --field q")
    return Command(
        command=command,
        shape=valid.get(CONF_SHAPE),
        field=valid[CONF_FIELD],
        order=valid[CONF_ORDER],
        mode=valid[CONF_MODE],
        max_length=valid[CONF_MAX_LENGTH],
        output_format=valid[CONF_FORMAT],
        jobs=valid[CONF_JOBS],
        seed=valid[CONF_SEED],
        sample=valid[CONF_SAMPLE],
        poly=valid.get(CONF_POLY),
        maximal=valid[CONF_MAXIMAL],
        show_f=valid[CONF_SHOW_F],
        size=valid.get(CONF_SIZE),
        verbose=valid[CONF_VERBOSE],
    )


Handler = Callable[[Command, Report], None]
HANDLERS: dict[str, Handler] = {}


def handles(name: str) -> Callable[[Handler], Handler]:
    """Register a handler for a command, catching library errors."""

    def decorator(func: Handler) -> Handler:
        @wraps(func)
        def wrapper(cmd: Command, report: Report) -> None:
            try:
                func(cmd, report)
            except (ShapeError, ShapeMismatchError) as exc:
                report.fail(ERROR_INVALID_SHAPE, exc)
            except PolynomialSyntaxError as exc:
                report.fail(ERROR_SYNTAX, exc)
            except FieldMismatchError as exc:
                report.fail(ERROR_FIELD_MISMATCH, exc)
            except CharacteristicError as exc:
                report.fail(ERROR_CHARACTERISTIC, exc)
            except ResolutionError as exc:
                report.fail(ERROR_RESOLUTION, exc)
            except CertificateError as exc:
                report.fail(ERROR_CERTIFICATE, exc)
            except InvalidCommand as exc:
                report.fail(ERROR_INVALID_COMMAND, exc)
            except Exception as exc:  # pylint: disable=broad-except
                _LOGGER.exception("Unexpected exception running %s", name)
                report.fail(ERROR_UNKNOWN, exc)
            if report.error:
                _LOGGER.error("Error running %s on %s: %s", name, report.shape, report.error)

        HANDLERS[name] = wrapper
        return wrapper

    return decorator


def _sample_variables(cmd: Command) -> list[VarIndex] | None:
    if not cmd.sample:
        return None
    variables = list(cmd.shape.variables())
    picked = random.Random(cmd.seed).sample(variables, min(cmd.sample, len(variables)))
    return sorted(picked)


def _record(shape: Shape, cert: DepthZeroCertificate, report: Report) -> bool:
    report.checks.extend(cert.checks())
    for failure in cert.annihilation.failures + cert.colon.failures:
        _LOGGER.warning("Check %s failed for %s: %s", failure.name, shape, failure.detail)
    if cert.passed:
        report.pd = ab_projdim(shape, cert)
    return cert.passed


def _certify(
    cmd: Command, shape: Shape, report: Report, nus: list[VarIndex] | None = None
) -> bool:
    return _record(shape, certify(shape, cmd.mode, cmd.jobs, nus), report)


@handles(COMMAND_CONSTRUCT)
def _construct(cmd: Command, report: Report) -> None:
    shape = cmd.shape
    ideal = build_ideal(shape)
    expected = sum(count for count, _ in generator_degrees(shape))
    report.check(
        "generator count", len(ideal.generators) == expected, str(len(ideal.generators))
    )
    degrees = [degree for count, degree in generator_degrees(shape) for _ in range(count)]
    report.check(
        "generator degrees",
        [g.degree for g in ideal.generators] == degrees,
        " ".join(map(str, degrees)),
    )
    for label, g in zip(ideal.labels, ideal.generators, strict=True):
        report.info(label, format_polynomial(g))
    report.info("s", format_monomial(witness_monomial(shape)))
    report.info("alpha", str(witness_alpha(shape)))
    f = build_F(shape)
    report.info("F", format_polynomial(f) if cmd.show_f else f"{len(f)} terms")
    report.support = support_count(ideal)


@handles(COMMAND_CERTIFY)
def _certify_command(cmd: Command, report: Report) -> None:
    _certify(cmd, cmd.shape, report, _sample_variables(cmd))


def _ideal(cmd: Command) -> Ideal:
    return build_ideal(cmd.shape).ideal(cmd.field, cmd.order)


@handles(COMMAND_GB)
def _gb(cmd: Command, report: Report) -> None:
    gb = groebner(_ideal(cmd))
    report.check("groebner basis", is_groebner(gb.basis), f"{len(gb.basis)} elements")
    for k, g in enumerate(gb.basis, start=1):
        report.info(f"g{k}", format_polynomial(g))


@handles(COMMAND_MEMBER)
def _member(cmd: Command, report: Report) -> None:
    f = parse_polynomial(cmd.poly, cmd.shape, cmd.field, cmd.order)
    report.check("member of I", ideal_member(f, _ideal(cmd)), format_polynomial(f))


@handles(COMMAND_COLON)
def _colon(cmd: Command, report: Report) -> None:
    ideal = _ideal(cmd)
    if cmd.maximal:
        quotient = colon_maximal(ideal)
        report.check("(I : m) != I", not ideal_equal(ideal, quotient))
    else:
        f = parse_polynomial(cmd.poly, cmd.shape, cmd.field, cmd.order)
        quotient = colon(ideal, f)
    for k, g in enumerate(groebner(quotient).basis, start=1):
        report.info(f"q{k}", format_polynomial(g))


def _resolve(cmd: Command, report: Report, full: bool) -> None:
    shape = cmd.shape
    if shape.variable_count > DIRECT_RESOLUTION_LIMIT:
        raise ResolutionError(
            f"{shape} has {shape.variable_count} variables, direct resolutions stop at"
            f" {DIRECT_RESOLUTION_LIMIT}; use certify"
        )
    ideal = _ideal(cmd)
    resolution = free_resolution(ideal, cmd.max_length)
    table = betti(resolution)
    if full:
        report.check("d o d = 0", resolution.is_complex())
        report.check("complete", not resolution.truncated, f"length {resolution.length}")
        report.info("ranks", " ".join(map(str, resolution.ranks)))
    generators = len(minimal_generators(ideal).generators)
    report.check(
        "beta_1 = minimal generators", table.totals()[1] == generators, str(generators)
    )
    report.check(
        "pd = variable count",
        table.projdim == shape.variable_count,
        f"{table.projdim} of {shape.variable_count}",
    )
    report.section("betti", betti_text(table))
    report.pd = table.projdim


@handles(COMMAND_RESOLVE)
def _resolve_command(cmd: Command, report: Report) -> None:
    _resolve(cmd, report, full=True)


@handles(COMMAND_BETTI)
def _betti(cmd: Command, report: Report) -> None:
    _resolve(cmd, report, full=False)


def _support(shape: Shape, report: Report) -> None:
    ideal = build_ideal(shape)
    count = support_count(ideal)
    report.support = count
    if shape.is_cubic:
        expected = cubic_support_size(shape.dims[0], shape.directions)
        report.check(
            "cubic support formula",
            count.with_multiplicity == expected,
            f"2(n-1)(d-1)+n = {expected}",
        )
    r = len(ideal.generators)
    bound = support_bound(count.distinct, r)
    report.check(
        "support bound",
        count.with_multiplicity <= bound,
        f"{count.with_multiplicity} <= {bound} for {r} generators in {count.distinct} monomials",
    )


@handles(COMMAND_SUPPORT)
def _support_command(cmd: Command, report: Report) -> None:
    _support(cmd.shape, report)


@handles(COMMAND_GROWTH)
def _growth(cmd: Command, report: Report) -> None:
    shape = growth_shape(cmd.size)
    report.shape = str(shape)
    count = support_count(build_ideal(shape))
    report.support = count
    report.check("support = N", count.with_multiplicity == cmd.size, str(count.with_multiplicity))
    if _certify(cmd, shape, report):
        expected = 2 ** (cmd.size // 2)
        report.check("pd = 2^(N/2)", report.pd == expected, f"{report.pd} = {expected}")


@handles(COMMAND_REPORT_ALL)
def _report_all(cmd: Command, report: Report) -> None:
    shape = cmd.shape
    cert, recursion = certify_with_recursion(
        shape, cmd.mode, cmd.jobs, _sample_variables(cmd)
    )
    _record(shape, cert, report)
    report.checks.append(recursion.summary())
    _support(shape, report)
    if shape.variable_count <= DIRECT_RESOLUTION_LIMIT:
        pd = report.pd
        _resolve(cmd, report, full=False)
        report.check("Auslander-Buchsbaum agrees", pd == report.pd, f"{pd} and {report.pd}")


def run(cmd: Command) -> tuple[int, Report]:
    """Run a command and return its exit status and report."""
    report = Report(
        shape=str(cmd.shape) if cmd.shape else None, field=field_name(cmd.field)
    )
    HANDLERS[cmd.command](cmd, report)
    if report.error:
        return EXIT_ERROR, report
    return (EXIT_PASS if report.passed else EXIT_FAIL), report


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--shape", dest=CONF_SHAPE, help="array sizes, e.g. 2x3x2")
    common.add_argument("--field", dest=CONF_FIELD, help="q, f2, f3, f5, ...")
    common.add_argument("--order", dest=CONF_ORDER, help="grevlex or lex")
    common.add_argument("--mode", dest=CONF_MODE, help="exchange or groebner")
    common.add_argument("--max-length", dest=CONF_MAX_LENGTH, help="resolution length cap")
    common.add_argument("--format", dest=CONF_FORMAT, help="text or json")
    common.add_argument("--jobs", dest=CONF_JOBS, help="parallel checks")
    common.add_argument("--seed", dest=CONF_SEED, help="seed for --sample")
    common.add_argument("--sample", dest=CONF_SAMPLE, help="check only this many variables")
    common.add_argument("--poly", dest=CONF_POLY, help="polynomial or monomial")
    common.add_argument("--maximal", dest=CONF_MAXIMAL, action="store_true", default=None)
    common.add_argument("--show-f", dest=CONF_SHOW_F, action="store_true", default=None)
    common.add_argument("--n", dest=CONF_SIZE, help="support size for growth")
    common.add_argument(
        "-v", "--verbose", dest=CONF_VERBOSE, action="store_true", default=None
    )
    parser = argparse.ArgumentParser(
        prog=DOMAIN, description="Certify depth and projective dimension of slice ideals."
    )
    subparsers = parser.add_subparsers(dest=CONF_COMMAND, required=True)
    for name in COMMANDS:
        subparsers.add_parser(name, parents=[common])
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the slicedepth command."""
    args = build_parser().parse_args(argv)
    data = {k: v for k, v in vars(args).items() if v is not None}
    logging.basicConfig(
        level=logging.DEBUG if data.get(CONF_VERBOSE) else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cmd = validate_command(data)
    except (ShapeError, FieldMismatchError, CharacteristicError, InvalidCommand) as exc:
        report = Report(shape=data.get(CONF_SHAPE), field=data.get(CONF_FIELD, DEFAULT_FIELD))
        code = {
            ShapeError: ERROR_INVALID_SHAPE,
            FieldMismatchError: ERROR_FIELD_MISMATCH,
            CharacteristicError: ERROR_CHARACTERISTIC,
        }.get(type(exc), ERROR_INVALID_COMMAND)
        report.fail(code, exc)
        _LOGGER.error("Invalid command: %s", exc)
        print(report.render(data.get(CONF_FORMAT, DEFAULT_FORMAT)))
        return EXIT_ERROR
    status, report = run(cmd)
    print(report.render(cmd.output_format))
    return status
