"""Main entry point for the sftflow command line."""

import json as jsonlib
import sys
from typing import Optional

import fire
from beartype import beartype

from sftflow.entities.constants import LOG_LEVEL_ENV, WORKER_ENV
from sftflow.entities.dataclasses import BinMatrix, CeilingFunction, FlowMove
from sftflow.entities.enums import ExitCode, FileFormat, Status
from sftflow.entities.exceptions import MatrixParseError
from sftflow.services.command_interface import CommandInterface
from sftflow.services.dimension_groups import quad_equal, se_induced_map, u_tilde
from sftflow.services.equivalence_certificates import (
    certificate_from_elementary,
    flow_moves,
    search_elementary_sse,
    verify_shift_equivalence,
)
from sftflow.services.flow_invariants import (
    check_hypothesis,
    flow_invariants,
    spectral_implication_report,
    spectrum_fingerprint,
)
from sftflow.services.markov_core import (
    higher_block,
    is_irreducible,
    is_permutation,
    period,
)
from sftflow.services.suspension import ceiling_from_values, suspend
from sftflow.utils.io_utils import (
    format_matrix,
    read_certificate,
    read_matrix,
    read_matrix_file,
)
from sftflow.utils.logger_utils import structured_logger
from sftflow.utils.task_utils import load_into_env_vars


def parse_int_list(value: str | int | tuple | list, option: str) -> tuple[int, ...]:
    """Reads "2,1", 2 or (2, 1) as a tuple of integers.

    Raises:
        MatrixParseError: If an item is not an integer.
    """
    items = value if isinstance(value, (tuple, list)) else str(value).split(",")
    try:
        return tuple(int(str(item).strip()) for item in items)
    except ValueError as e:
        raise MatrixParseError(
            option, f"expected comma-separated integers, got {value!r}"
        ) from e


def _same(flag: bool) -> str:
    return "equal" if flag else "differ"


def _move_entry(move: FlowMove, as_json: bool) -> dict | str:
    if as_json:
        return {
            "label": move.label,
            "kind": move.kind.value,
            "size": move.matrix.size,
            "entries": list(move.matrix.entries),
        }
    return f"{move.label} -> {move.matrix.size}x{move.matrix.size}"


class SFTFlow(CommandInterface):
    """Flow and shift equivalence of topological Markov shifts.

    Every command prints a report on stdout and exits with 0 (pass or
    equivalent), 1 (fail or not equivalent), 2 (parse error or option out of
    range) or 3 (violated hypothesis or certificate precondition).
    """

    def __init__(
        self,
        json: bool = False,
        format: str = "text",  # pylint: disable=redefined-builtin
        workers: Optional[int] = None,
        log_level: Optional[str] = None,
    ) -> None:
        """Initializes the command line.

        Args:
            json: Print reports as one JSON object.
            format: Matrix output format, "text" or "json".
            workers: Worker count for the witness search.
            log_level: Log level on stderr.
        """
        self.as_json = json
        self.format = format
        load_into_env_vars({WORKER_ENV: workers, LOG_LEVEL_ENV: log_level})
        if log_level is not None:
            structured_logger.configure()

    def _file_format(self) -> FileFormat:
        try:
            return FileFormat(str(self.format).lower())
        except ValueError as e:
            raise MatrixParseError(
                "--format", f"expected text or json, got {self.format!r}"
            ) from e

    def _print_matrix(
        self, A: BinMatrix, ceiling: Optional[CeilingFunction] = None
    ) -> None:
        print(format_matrix(A, self._file_format(), ceiling), end="")

    @beartype
    def invariants(self, path: str) -> None:
        """Prints size, structure, det(I - A), Bowen-Franks group and spectrum."""

        def body() -> ExitCode:
            A = read_matrix(path)
            irreducible = is_irreducible(A)
            fingerprint = spectrum_fingerprint(A)
            report = {
                "size": A.size,
                "irreducible": irreducible,
                "permutation": is_permutation(A),
                "period": period(A) if irreducible else None,
                **flow_invariants(A).as_dict(),
                "fingerprint": str(fingerprint),
                "zero_multiplicity": fingerprint.zero_multiplicity,
            }
            self._emit(report)
            check_hypothesis(A, path)
            return ExitCode.OK

        self._run("invariants", body)

    @beartype
    def floweq(self, path_a: str, path_b: str) -> None:
        """Decides flow equivalence by Franks's invariant pair."""

        def body() -> ExitCode:
            A, B = read_matrix(path_a), read_matrix(path_b)
            check_hypothesis(A, path_a)
            check_hypothesis(B, path_b)
            left, right = flow_invariants(A), flow_invariants(B)
            status = Status.EQUIVALENT if left == right else Status.NOT_EQUIVALENT
            self._emit(
                {"verdict": status.value, "A": left.as_dict(), "B": right.as_dict()}
            )
            return ExitCode.OK if status is Status.EQUIVALENT else ExitCode.FAIL

        self._run("floweq", body)

    @beartype
    def suspend(
        self,
        path: str,
        ceiling: Optional[str | int | tuple | list] = None,
        check: bool = False,
    ) -> None:
        """Writes A_f; the ceiling comes from --ceiling or from a JSON file.

        With --check, also reports whether det(I - .) and the Bowen-Franks
        group survived, exiting 1 if not.
        """

        def body() -> ExitCode:
            matrix_file = read_matrix_file(path)
            A = matrix_file.matrix
            if ceiling is not None:
                f = ceiling_from_values(parse_int_list(ceiling, "--ceiling"), A.size)
            elif matrix_file.ceiling is not None:
                f = matrix_file.ceiling
            else:
                raise MatrixParseError(path, "no ceiling given and none in the file")
            A_f = suspend(A, f)
            report = None
            if check:
                before, after = flow_invariants(A), flow_invariants(A_f)
                report = {
                    "status": (Status.PASS if before == after else Status.FAIL).value,
                    "original": before.as_dict(),
                    "suspension": after.as_dict(),
                }
            if self.as_json:
                matrix = jsonlib.loads(format_matrix(A_f, FileFormat.JSON))
                self._emit({"matrix": matrix, **({"check": report} if report else {})})
            else:
                self._print_matrix(A_f)
                if report:
                    self._emit(report)
            if report and report["status"] == Status.FAIL.value:
                return ExitCode.FAIL
            return ExitCode.OK

        self._run("suspend", body)

    @beartype
    def verify_se(self, path_a: str, path_b: str, cert_path: str) -> None:
        """Checks a shift-equivalence certificate {"H", "K", "lag"}."""

        def body() -> ExitCode:
            A, B = read_matrix(path_a), read_matrix(path_b)
            cert = read_certificate(cert_path)
            result = verify_shift_equivalence(A, B, cert)
            status = Status.PASS if result else Status.FAIL
            report = {"status": status.value, "lag": cert.lag}
            if not result:
                report["reason"] = result.reason
            self._emit(report)
            return ExitCode.OK if result else ExitCode.FAIL

        self._run("verify-se", body)

    @beartype
    def quadcheck(self, path_a: str, path_b: str, cert_path: str) -> None:
        """Transports u~_A along a certificate and compares with u~_B."""

        def body() -> ExitCode:
            A, B = read_matrix(path_a), read_matrix(path_b)
            cert = read_certificate(cert_path)
            result = verify_shift_equivalence(A, B, cert)
            if not result:
                self._emit({"status": Status.FAIL.value, "reason": result.reason})
                return ExitCode.FAIL
            image = se_induced_map(cert, u_tilde(A), B)
            target = u_tilde(B)
            passed = quad_equal(image, target)
            self._emit(
                {
                    "status": (Status.PASS if passed else Status.FAIL).value,
                    "lag": cert.lag,
                    "image": {"vector": list(image.vector), "level": image.level},
                    "u_tilde_B": {"vector": list(target.vector), "level": target.level},
                }
            )
            return ExitCode.OK if passed else ExitCode.FAIL

        self._run("quadcheck", body)

    @beartype
    def moves(self, path: str) -> None:
        """Lists the one-step flow-equivalent neighbours of a matrix."""

        def body() -> ExitCode:
            A = read_matrix(path)
            neighbours = flow_moves(A)
            self._emit(
                {
                    "size": A.size,
                    "count": len(neighbours),
                    "moves": [_move_entry(m, self.as_json) for m in neighbours],
                }
            )
            return ExitCode.OK

        self._run("moves", body)

    @beartype
    def spectra(self, path_a: str, path_b: str) -> None:
        """Reports the chain kronecker spectra => nonzero spectra => det."""

        def body() -> ExitCode:
            A, B = read_matrix(path_a), read_matrix(path_b)
            report = spectral_implication_report(A, B)
            self._emit(
                {
                    "kronecker": _same(report.kronecker_equal),
                    "nonzero-spectrum": _same(report.spectrum_equal),
                    "det": _same(report.determinant_equal),
                    "violation": report.violation,
                }
            )
            return ExitCode.FAIL if report.violation else ExitCode.OK

        self._run("spectra", body)

    @beartype
    def higher_block(self, path: str, k: int = 2) -> None:
        """Writes the k-block presentation with word labels."""

        def body() -> ExitCode:
            presentation = higher_block(read_matrix(path), k)
            if self.as_json:
                print(format_matrix(presentation.matrix, FileFormat.JSON), end="")
            else:
                self._print_matrix(presentation.matrix)
            return ExitCode.OK

        self._run("higher-block", body)

    @beartype
    def search(
        self,
        path_a: str,
        path_b: str,
        entry_max: int = 1,
        inner_dim_max: Optional[int] = None,
    ) -> None:
        """Bounded search for A = RS, B = SR; prints the lag-1 certificate."""

        def body() -> ExitCode:
            A, B = read_matrix(path_a), read_matrix(path_b)
            found = search_elementary_sse(
                A, B, inner_dim_max if inner_dim_max is not None else B.size, entry_max
            )
            if found is None:
                self._emit({"status": Status.FAIL.value, "entry_max": entry_max})
                return ExitCode.FAIL
            self._emit(
                {
                    "status": Status.PASS.value,
                    "certificate": certificate_from_elementary(found).as_dict(),
                }
            )
            return ExitCode.OK

        self._run("search", body)


def normalize_flags(args: list[str]) -> list[str]:
    """Gives a bare --json an explicit value so fire does not take the next
    word (usually the command) as its argument."""
    return ["--json=True" if arg == "--json" else arg for arg in args]


def main(argv: Optional[list[str]] = None) -> None:
    """Runs the command line on argv, or on sys.argv when it is None."""
    args = sys.argv[1:] if argv is None else argv
    fire.Fire(SFTFlow, command=normalize_flags(args), name="sftflow")


if __name__ == "__main__":
    # Example usage:
    # python -m sftflow.task_handler invariants tests/sftflow/data/golden.txt
    # python -m sftflow.task_handler floweq full2.txt golden.txt
    # python -m sftflow.task_handler suspend golden.txt --ceiling 2,1 --check
    # python -m sftflow.task_handler --json spectra golden.txt full2.txt
    # python -m sftflow.task_handler search golden.txt golden_split.txt --workers 2
    main()
