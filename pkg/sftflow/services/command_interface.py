"""Command Interface for the sftflow command line."""

import sys
import traceback
from typing import Callable, NoReturn

from sftflow.entities.constants import SERVICE_NAME
from sftflow.entities.enums import ExitCode
from sftflow.entities.exceptions import ArgumentError, MatrixParseError, SFTFlowError
from sftflow.utils.logger_utils import structured_logger
from sftflow.utils.task_utils import render_report


class CommandInterface:
    """Command Interface for the sftflow command line."""

    service_name: str = SERVICE_NAME
    command: str = ""
    as_json: bool = False

    def _get_common_fields(self) -> dict:
        """Get a logger with common fields.

        Returns:
            Dict of common logging fields
        """
        fields = {
            "service_name": self.service_name,
            "command": self.command,
        }
        return fields

    @staticmethod
    def _get_exception_fields(e: Exception) -> dict:
        """Get a logger with exception fields.

        Returns:
            Dict of exception logging fields
        """
        fields = {
            "exception": str(e),
            "exception_type": type(e).__name__,
            "traceback": traceback.format_exc(),
        }
        return fields

    def _emit(self, report: dict) -> None:
        print(render_report(report, self.as_json))

    def _run(self, command: str, body: Callable[[], ExitCode]) -> NoReturn:
        """Runs a command body and exits with its code.

        Parse errors and out-of-range options exit with 2. Every other sftflow
        error (hypothesis, shape, certificate precondition, refused search)
        exits with 3.
        """
        self.command = command
        structured_logger.info(message="Running command", **self._get_common_fields())
        try:
            code = body()
        except (MatrixParseError, ArgumentError) as e:
            code = self._fail(e, ExitCode.PARSE_ERROR)
        except SFTFlowError as e:
            code = self._fail(e, ExitCode.HYPOTHESIS_ERROR)
        structured_logger.info(
            message="Finished command", exit_code=int(code), **self._get_common_fields()
        )
        raise SystemExit(int(code))

    def _fail(self, e: SFTFlowError, code: ExitCode) -> ExitCode:
        structured_logger.error(
            message="Command failed",
            **self._get_exception_fields(e),
            **self._get_common_fields(),
        )
        if self.as_json:
            self._emit({"error": str(e), "error_type": type(e).__name__})
        else:
            print(f"error: {e}", file=sys.stderr)
        return code
