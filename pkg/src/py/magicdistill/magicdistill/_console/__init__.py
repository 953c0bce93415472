from __future__ import annotations

from collections.abc import Sequence
from logging import getLogger

import click

import magicdistill
from magicdistill._console.distillation import sweep_command, threshold_command
from magicdistill._console.programs import classify_command, normalize_command
from magicdistill._console.report import CliError
from magicdistill._console.verify import verify_theorem_command

logger = getLogger(__name__)


@click.group()
@click.version_option(magicdistill.__version__, prog_name=magicdistill.__name__)
def app() -> None:
    """Simulate Clifford reductions and magic state distillation."""


app.add_command(normalize_command)
app.add_command(classify_command)
app.add_command(sweep_command)
app.add_command(threshold_command)
app.add_command(verify_theorem_command)


def run(args: Sequence[str] | None = None) -> int:
    """Run the command line, returning the exit code

    Every failure, click's own usage errors included, is printed as one
    ``error[CODE]: message`` line.
    """
    try:
        result = app.main(
            list(args) if args is not None else None,
            prog_name=magicdistill.__name__,
            standalone_mode=False,
        )
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except CliError as error:
        failure = error
    except click.UsageError as error:
        failure = CliError("USAGE", error.format_message())
    except click.ClickException as error:
        failure = CliError("INVALID_INPUT", error.format_message())
    except RuntimeError as error:
        logger.exception("Command failed unexpectedly")
        failure = CliError("INTERNAL", f"{type(error).__name__}: {error}")
    else:
        return result if isinstance(result, int) else 0
    failure.show()
    return failure.exit_code


def main() -> None:
    raise SystemExit(run())
