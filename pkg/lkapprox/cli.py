"""Command-line driver for the norm, index-set, lemma and theorem experiments.

Usage:
    lkapprox lemma2 --config lemma2.cfg --out results/
    lkapprox theorem1-lower --config thm.cfg --window 3:7 --grid 256

Each run prints one verdict line and exits with 0 (pass), 2 (verdict failed) or
1 (error).
"""

import argparse
import logging
import math
import sys
from typing import Callable, Dict, List, Optional, Tuple

from lkapprox.bounds.lemmas import lemma1_report, lemma2_report
from lkapprox.bounds.recipes import get_recipe
from lkapprox.bounds.report import TWO_SIDED, RatioReport
from lkapprox.bounds.theorem import theorem1_lower_experiment, theorem1_upper_experiment
from lkapprox.io.core import KINDS, ExperimentConfig
from lkapprox.io.reader import ConfigReader
from lkapprox.io.writer import ReportWriter
from lkapprox.spaces.besov import dirichlet_block, dirichlet_prediction
from lkapprox.spaces.errors import LKError
from lkapprox.spaces.grid import sample
from lkapprox.spaces.norms import aniso_lk_norm, compare_readings, lp_norm_reference
from lkapprox.spaces.spectral import CrossSpec, cross_blocks, cross_size, minimal_sizes, synthesize
from lkapprox.spaces.svfun import check_sv_class, check_svl_class, dyadic_grid

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_ERROR = 1
EXIT_FAIL = 2

DEFAULT_NORM_GRID = 256
DEFAULT_BLOCK_LIMIT = 8.0
DEFAULT_SV_EPS = 0.25

Outcome = Tuple[bool, str]


def _write_report(config: ExperimentConfig, report: RatioReport) -> Outcome:
    config.out.mkdir(parents=True, exist_ok=True)
    ReportWriter.to_csv(report, config.out / f"{config.kind}.csv", echo=config.echo())
    ReportWriter.to_plotdata(report, config.out / f"{config.kind}.plot.txt")
    return report.passed, report.verdict_line()


def run_norm(config: ExperimentConfig) -> Outcome:
    params = config.space_params()
    sizes = config.get_sizes() or (DEFAULT_NORM_GRID,) * params.dims
    f = sample(config.test_function(), sizes)

    rows = [("aniso_lk_norm", aniso_lk_norm(f, params))]
    if not any(math.isinf(t) for t in params.tau):
        comparison = compare_readings(f, params)
        rows.append(("literal_reading", comparison.literal))
        rows.append(("reading_difference", comparison.relative_difference))
    rows.append(("lp_norm_reference", lp_norm_reference(f, params.p[0])))

    config.out.mkdir(parents=True, exist_ok=True)
    ReportWriter.rows_to_csv(["quantity", "value"], rows, config.out / "norm.csv", config.echo())
    return True, f"norm: {config.test_function().name} on grid {sizes}: {rows[0][1]:.12g}"


def run_cross(config: ExperimentConfig) -> Outcome:
    spec = CrossSpec(config.get_floats("gamma"), config.get_float("n"))
    blocks = cross_blocks(spec)
    config.out.mkdir(parents=True, exist_ok=True)
    ReportWriter.index_set_to_csv(blocks, config.out / "cross.csv", config.echo(), spec.dims)
    return True, f"cross: {len(blocks)} blocks, {cross_size(spec)} frequencies"


def run_block_norm(config: ExperimentConfig) -> Outcome:
    params = config.space_params()
    oversample = config.get_int("oversample", 1)
    s_values = list(range(0, config.get_int("s_max") + 1))
    computed, predicted = [], []
    for s in s_values:
        block = (s,) * params.dims
        g = dirichlet_block(block)
        f = synthesize(g, minimal_sizes(g.bandwidth, oversample))
        computed.append(aniso_lk_norm(f, params))
        predicted.append(dirichlet_prediction(block, params))

    report = RatioReport(
        name="block-norm",
        kind=TWO_SIDED,
        n_values=s_values,
        computed=computed,
        predicted=predicted,
        limit=config.get_float("limit", DEFAULT_BLOCK_LIMIT),
        n0=config.get_int("n0", s_values[0]),
    )
    return _write_report(config, report)


def run_lemma1(config: ExperimentConfig) -> Outcome:
    report = lemma1_report(
        config.lemma_params(),
        config.get_window(),
        tail_tol=config.tail_tol,
        limit=config.get_float("limit", 10.0),
        n0=config.get_optional_int("n0"),
    )
    return _write_report(config, report)


def run_lemma2(config: ExperimentConfig) -> Outcome:
    report = lemma2_report(
        config.lemma_params(),
        config.get_window(),
        limit=config.get_float("limit", 10.0),
        n0=config.get_optional_int("n0"),
    )
    return _write_report(config, report)


def run_theorem1_lower(config: ExperimentConfig) -> Outcome:
    report = theorem1_lower_experiment(
        config.theorem_params(),
        config.get_window(),
        sizes=config.get_sizes(),
        oversample=config.get_int("oversample", 1),
        limit=config.get_float("limit", 4.0),
        n0=config.get_optional_int("n0"),
    )
    return _write_report(config, report)


def run_theorem1_upper(config: ExperimentConfig) -> Outcome:
    names = config.get("recipe", ["f2", "lacunary"])
    names = names if isinstance(names, list) else [names]
    report = theorem1_upper_experiment(
        config.theorem_params(),
        config.get_window(),
        [get_recipe(str(name)) for name in names],
        sizes=config.get_sizes(),
        limit=config.get_float("limit", 10.0),
        bound=config.get_optional_float("bound"),
        n0=config.get_optional_int("n0"),
    )
    return _write_report(config, report)


def run_sv_check(config: ExperimentConfig) -> Outcome:
    weights = config.get_weights("weights")
    eps = config.get_float("eps", DEFAULT_SV_EPS)
    grid = dyadic_grid(config.get_int("s_max", 32))

    rows, passed = [], True
    for weight in weights:
        for audit, check in (("sv", check_sv_class), ("svl", check_svl_class)):
            report = check(weight.base, eps, grid, config.slack)
            if audit == "sv":
                passed = passed and report.passed
            burn_in = ";".join(f"{name}:{k0}" for name, k0 in report.burn_in.items())
            rows.append((str(weight), audit, report.passed, report.marginal, burn_in))

    config.out.mkdir(parents=True, exist_ok=True)
    ReportWriter.rows_to_csv(
        ["weight", "audit", "passed", "marginal", "burn_in"], rows, config.out / "sv-check.csv",
        config.echo(),
    )
    status = "PASS" if passed else "FAIL"
    return passed, f"sv-check: {len(weights)} weights, eps={eps:g} -> {status}"


RUNNERS: Dict[str, Callable[[ExperimentConfig], Outcome]] = {
    "norm": run_norm,
    "cross": run_cross,
    "block-norm": run_block_norm,
    "lemma1": run_lemma1,
    "lemma2": run_lemma2,
    "theorem1-lower": run_theorem1_lower,
    "theorem1-upper": run_theorem1_upper,
    "sv-check": run_sv_check,
}


def run(config: ExperimentConfig) -> int:
    """Run one experiment, print its verdict line and return the exit status."""
    try:
        passed, verdict = RUNNERS[config.kind](config)
    except (LKError, OSError) as e:
        logger.debug("experiment failed", exc_info=True)
        print(f"{config.kind}: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    print(verdict)
    return EXIT_PASS if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="Flat key = value config file.")
    common.add_argument("--out", default=argparse.SUPPRESS, help="Output directory (default: .).")
    common.add_argument("--window", default=argparse.SUPPRESS, help="Inclusive n window 'a:b'.")
    common.add_argument("--grid", type=int, default=argparse.SUPPRESS, help="Grid size N per axis.")
    common.add_argument(
        "-v", "--verbose", action="count", default=argparse.SUPPRESS,
        help="Log INFO (-v) or DEBUG (-vv) messages.",
    )

    parser = argparse.ArgumentParser(
        prog="lkapprox",
        description="Numerical experiments on anisotropic Lorentz-Karamata spaces.",
        parents=[common],
    )
    subparsers = parser.add_subparsers(dest="kind", metavar="KIND")
    for kind in KINDS:
        subparsers.add_parser(kind, parents=[common], help=f"run the {kind} experiment")
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(getattr(args, "verbose", 0))
    try:
        values = ConfigReader(args.config).get_values() if getattr(args, "config", None) else {}
        config = ExperimentConfig.from_args(args, values)
    except LKError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
