from __future__ import annotations

import io
from logging import getLogger
from pathlib import Path
from typing import Any

import click

from magicdistill._console.report import (
    CliError,
    command_echo,
    emit_report,
    read_input,
)
from magicdistill.distill.axes import parse_axis
from magicdistill.distill.builtins import BUILTIN_NAMES, builtin
from magicdistill.distill.protocols import (
    DEFAULT_BRACKET,
    DEFAULT_TOLERANCE,
    NoThresholdInBracket,
    ProtocolSpec,
    UndefinedResultError,
    bisect,
    gain,
    parse_grid,
    protocol,
    sweep,
    trajectory,
    write_csv,
)
from magicdistill.engine.codefile import code_digest, parse_code, text_digest
from magicdistill.engine.resource import as_bloch
from magicdistill.program.types import ProgramParseError

logger = getLogger(__name__)

protocol_argument = click.argument("protocol_name", metavar="NAME|CODEFILE")
axis_option = click.option(
    "--axis",
    default=None,
    help="Input magic axis: H, T or x,y,z (defaults to the protocol's own).",
)
target_option = click.option(
    "--target", default=None, help="Target Bloch vector as x,y,z."
)
dense_option = click.option(
    "--dense", is_flag=True, help="Use dense density matrices instead of group sums."
)


@click.command(name="sweep")
@protocol_argument
@axis_option
@target_option
@click.option(
    "--grid", default="0.5:1:101", show_default=True, help="Fidelities as a:b:k."
)
@click.option("--out", default=None, help="Write the sweep as CSV to this path.")
@click.option("--rounds", type=int, default=None, help="Iterate the map instead.")
@click.option("--start", type=float, default=None, help="Starting fidelity to iterate.")
@dense_option
@click.pass_context
def sweep_command(
    ctx: click.Context,
    protocol_name: str,
    axis: str | None,
    target: str | None,
    grid: str,
    out: str | None,
    rounds: int | None,
    start: float | None,
    dense: bool,
) -> None:
    """Evaluate one distillation round on a grid of input fidelities.

    NAME is a built-in protocol or the path of a code file. With ``--rounds`` and
    ``--start`` the output of each round is fed into the next one instead.
    """
    spec, entry = load_protocol(protocol_name, axis, target)
    result: dict[str, Any] = {"protocol": _describe(spec)}
    try:
        if rounds is not None or start is not None:
            if rounds is None or start is None:
                msg = "--rounds and --start must be given together"
                raise CliError("INVALID_INPUT", msg)
            path = trajectory(spec, start, rounds, dense)
            result["trajectory"] = {
                "fidelities": path.fidelities,
                "success": path.success,
            }
        else:
            points = sweep(spec, parse_grid(grid), dense)
            buffer = io.StringIO()
            write_csv(points, buffer)
            text = buffer.getvalue()
            result["points"] = len(points)
            if out is None:
                result["csv"] = text.splitlines()
            else:
                Path(out).write_text(text, newline="")
                result["csv"] = {"path": out, "digest": text_digest(text)}
    except UndefinedResultError as error:
        raise CliError("UNDEFINED_RESULT", str(error)) from error
    except ValueError as error:
        raise CliError("INVALID_INPUT", str(error)) from error
    emit_report(
        {"command": command_echo(ctx), "inputs": {"protocol": entry}, "result": result}
    )


@click.command(name="threshold")
@protocol_argument
@axis_option
@target_option
@click.option(
    "--bracket",
    default=",".join(map(str, DEFAULT_BRACKET)),
    show_default=True,
    help="Fidelities a,b bracketing the threshold.",
)
@click.option("--tol", type=float, default=DEFAULT_TOLERANCE, show_default=True)
@dense_option
@click.pass_context
def threshold_command(
    ctx: click.Context,
    protocol_name: str,
    axis: str | None,
    target: str | None,
    bracket: str,
    tol: float,
    dense: bool,
) -> None:
    """Find the fidelity above which a protocol improves its input.

    Bisects on the sign of ``f_out - f``. Exits with status 5 and the sampled signs when
    the gain has the same sign at both ends of the bracket.
    """
    spec, entry = load_protocol(protocol_name, axis, target)
    bounds = _parse_bracket(bracket)
    try:
        found = bisect(lambda f: gain(spec, f, dense), bounds, tol)
    except NoThresholdInBracket as error:
        samples = ", ".join(f"f={f!r}:{s:+d}" for f, s in error.samples)
        raise CliError("NO_THRESHOLD", f"{error} (samples {samples})") from error
    except UndefinedResultError as error:
        raise CliError("UNDEFINED_RESULT", str(error)) from error
    except ValueError as error:
        raise CliError("INVALID_INPUT", str(error)) from error
    result = {
        "protocol": _describe(spec),
        "bracket": bounds,
        "tolerance": tol,
        "threshold": found.root,
        "iterations": found.iterations,
        "dense": dense,
    }
    emit_report(
        {"command": command_echo(ctx), "inputs": {"protocol": entry}, "result": result}
    )


def load_protocol(
    name: str, axis: str | None, target: str | None
) -> tuple[ProtocolSpec, dict[str, str | None]]:
    """A built-in protocol or one on the code in the file ``name``"""
    if name in BUILTIN_NAMES:
        spec = builtin(name)
        entry: dict[str, str | None] = {"path": None, "digest": code_digest(spec.code)}
    else:
        text, entry = read_input(name)  # type: ignore[assignment]
        try:
            code = parse_code(text, name=Path(name).stem)
        except ProgramParseError as error:
            raise CliError("PARSE_ERROR", f"{name}: {error}") from error
        except ValueError as error:
            raise CliError("INVALID_INPUT", f"{name}: {error}") from error
        spec = protocol(code, parse_axis("H"))
    try:
        if axis is not None and parse_axis(axis) != spec.input_axis:
            if spec.post_clifford is not None:
                logger.warning(
                    "Keeping the post-decoding Clifford of %s on the %s axis",
                    spec.name,
                    axis,
                )
            spec = protocol(
                spec.code, parse_axis(axis), None, spec.post_clifford, spec.name
            )
        if target is not None:
            vector = as_bloch(float(v) for v in target.split(","))
            spec = protocol(
                spec.code, spec.input_axis, vector, spec.post_clifford, spec.name
            )
    except ValueError as error:
        raise CliError("INVALID_INPUT", str(error)) from error
    return spec, entry


def _parse_bracket(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        msg = f"Expected a bracket as 'a,b', got {text!r}"
        raise CliError("INVALID_INPUT", msg) from None
    if not 0 <= lo < hi <= 1:
        msg = f"Bracket [{lo}, {hi}] must satisfy 0 <= a < b <= 1"
        raise CliError("INVALID_INPUT", msg)
    return lo, hi


def _describe(spec: ProtocolSpec) -> dict[str, Any]:
    return {
        "name": spec.name,
        "n": spec.code.n,
        "axis": str(spec.input_axis),
        "input_axis": spec.input_axis.axis,
        "target": spec.target,
        "code": spec.code.labels(),
    }
