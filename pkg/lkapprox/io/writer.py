"""Writer for exporting reports, index sets, spectra and grids."""

import csv
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

from lkapprox.bounds.report import RatioReport
from lkapprox.io.core import format_value
from lkapprox.spaces.errors import DomainError, ParseError
from lkapprox.spaces.grid import GridFunction
from lkapprox.spaces.spectral import BlockIndex, SpectralFunction


def _number(value: float) -> str:
    return format(float(value), ".17g")


def _write_echo(f, echo: Dict[str, Any]) -> None:
    for key, value in echo.items():
        f.write(f"# {key} = {format_value(value)}\n")


class ReportWriter:
    """Exports experiment results to CSV and plain-text formats."""

    @staticmethod
    def report_echo(report: RatioReport) -> Dict[str, Any]:
        echo: Dict[str, Any] = {"experiment": report.name, "verdict_kind": report.kind}
        echo.update(report.params)
        echo.update(
            n0=report.n0,
            window=f"{report.window[0]}:{report.window[1]}",
            limit=report.limit,
        )
        if report.bound is not None:
            echo["bound"] = report.bound
        if report.skipped:
            echo["skipped"] = list(report.skipped)
        echo["verdict"] = "pass" if report.passed else "fail"
        return echo

    @staticmethod
    def to_csv(
        report: RatioReport,
        output_file: Union[str, Path],
        echo: Union[Dict[str, Any], None] = None,
    ) -> None:
        """Write a ratio report as CSV.

        Args:
            report: RatioReport to export
            output_file: Path to output CSV file
            echo: Extra parameters written before the report's own echo
        """
        output_file = Path(output_file)

        with open(output_file, "w", encoding="utf-8", newline="") as f:
            _write_echo(f, {**(echo or {}), **ReportWriter.report_echo(report)})
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["n", "computed", "predicted", "ratio"])
            for n, computed, predicted, ratio in report.rows():
                writer.writerow([n, _number(computed), _number(predicted), _number(ratio)])

    @staticmethod
    def to_plotdata(report: RatioReport, output_file: Union[str, Path]) -> None:
        """Write ``n`` and the ratio as two whitespace-separated columns, 12 significant digits.

        Raises:
            DomainError: If the report is empty
        """
        if not report.n_values:
            raise DomainError("cannot write plot data of an empty report")
        output_file = Path(output_file)

        with open(output_file, "w", encoding="utf-8") as f:
            f.write(f"# {report.name} ({report.kind}): n ratio\n")
            for n, ratio in zip(report.n_values, report.ratios):
                f.write(f"{n} {ratio:.11e}\n")

    @staticmethod
    def index_set_to_csv(
        blocks: Sequence[BlockIndex],
        output_file: Union[str, Path],
        echo: Union[Dict[str, Any], None] = None,
        dims: Union[int, None] = None,
    ) -> None:
        """Write block indices ``s_1..s_m``, one per row, in the given (lexicographic) order."""
        output_file = Path(output_file)
        dims = dims if dims is not None else (len(blocks[0]) if blocks else 0)

        with open(output_file, "w", encoding="utf-8", newline="") as f:
            _write_echo(f, echo or {})
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow([f"s{j}" for j in range(1, dims + 1)])
            for s in blocks:
                writer.writerow(list(s))

    @staticmethod
    def spectrum_to_csv(
        g: SpectralFunction,
        output_file: Union[str, Path],
        echo: Union[Dict[str, Any], None] = None,
    ) -> None:
        """Write ``k_1..k_m, re, im`` rows in lexicographic frequency order.

        Library-only export for inspecting a spectrum; no experiment writes one.
        """
        output_file = Path(output_file)

        with open(output_file, "w", encoding="utf-8", newline="") as f:
            _write_echo(f, echo or {})
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow([f"k{j}" for j in range(1, g.dims + 1)] + ["re", "im"])
            for k, a in zip(g.indices, g.coeffs):
                writer.writerow([int(v) for v in k] + [_number(a.real), _number(a.imag)])

    @staticmethod
    def grid_to_csv(
        f: GridFunction,
        output_file: Union[str, Path],
        echo: Union[Dict[str, Any], None] = None,
    ) -> None:
        """Write samples row-major with axis ``m`` slowest: ``i_1..i_m, re, im``.

        Library-only export, like :meth:`spectrum_to_csv`.
        """
        output_file = Path(output_file)
        sizes = f.sizes

        with open(output_file, "w", encoding="utf-8", newline="") as out:
            _write_echo(out, echo or {})
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow([f"i{j}" for j in range(1, f.dims + 1)] + ["re", "im"])
            for flat, value in enumerate(f.values.ravel()):
                index, rest = [], flat
                for size in sizes:
                    index.append(rest % size)
                    rest //= size
                value = complex(value)
                writer.writerow(index + [_number(value.real), _number(value.imag)])

    @staticmethod
    def rows_to_csv(
        header: Sequence[str],
        rows: Sequence[Sequence[Any]],
        output_file: Union[str, Path],
        echo: Union[Dict[str, Any], None] = None,
    ) -> None:
        """Write a small result table with a parameter echo."""
        output_file = Path(output_file)

        with open(output_file, "w", encoding="utf-8", newline="") as f:
            _write_echo(f, echo or {})
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(list(header))
            for row in rows:
                writer.writerow([_number(v) if isinstance(v, float) else v for v in row])


def read_plotdata(input_file: Union[str, Path]) -> Tuple[List[int], List[float]]:
    """Parse a file written by :meth:`ReportWriter.to_plotdata`.

    Raises:
        ParseError: On a malformed data line
    """
    n_values, ratios = [], []
    with open(Path(input_file), encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                n, ratio = line.split()
                n_values.append(int(n))
                ratios.append(float(ratio))
            except ValueError as e:
                raise ParseError(f"{input_file}:{number}: malformed plot-data line {line!r}") from e
    return n_values, ratios
