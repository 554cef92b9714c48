"""
Command-line front end.

    python -m hankel_fh constants --spec laguerre.json --n 8,16,32
    python -m hankel_fh verify --spec jacobi.json --n 4,8,16 --format csv --no-timing
    python -m hankel_fh gap --spec jacobi.json --thinning thin.json --n 8,16 --oracle

Spec files are JSON objects with keys ``class``, ``V`` (or ``V_mono``), ``W``
(or ``W_mono``), ``points``, ``alphas``, ``betas``, ``delta`` and optionally
``thinning``. Complex numbers are written as ``[re, im]``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Tuple

import pandas as pd

from .applications import (
    PREFACTOR_ALL_INTERVALS,
    PREFACTOR_OUTER_INTERVALS,
    ThinningSpec,
    char_poly_correlation_log,
    clt_params,
    gap_probability_log,
    mgf_asymptotic,
    partition_asymptotics,
)
from .config import configure_logging, get_settings, parse_int_list
from .equilibrium import solve_density
from .errors import (
    EXIT_OK,
    EXIT_VALIDATION,
    HankelFHError,
    InvalidInputError,
    SpecParseError,
    exit_code_for,
)
from .fh_asymptotics import (
    AsymptoticConstants,
    WeightSpec,
    asymptotic_log_dn,
    constants,
    error_scale,
)
from .numerics_core import lobatto_nodes
from .oracle import convergence_sweep, correlation_ratio, mgf_ratio, thinned_log_expectation

COMMANDS = ("density", "constants", "verify", "partition", "clt", "corr", "gap")
N_REQUIRED = ("verify", "corr", "gap")


# --------------------------------------------------------------------------- #
# Spec files
# --------------------------------------------------------------------------- #


def parse_spec_text(text: str) -> Tuple[WeightSpec, Optional[ThinningSpec]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"malformed JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    spec = WeightSpec.from_dict(data)
    thinning = ThinningSpec.from_dict(data["thinning"]) if "thinning" in data else None
    if thinning is not None:
        thinning.check_range(spec.m)
    return spec, thinning


def parse_spec_file(path: str | Path) -> Tuple[WeightSpec, Optional[ThinningSpec]]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"cannot read spec file {path}: {exc.strerror or exc}") from exc
    return parse_spec_text(text)


def parse_thinning_file(path: str | Path) -> ThinningSpec:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidInputError(f"cannot read thinning file {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"malformed JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    return ThinningSpec.from_dict(data)


def spec_to_dict(spec: WeightSpec, thinning: Optional[ThinningSpec] = None) -> Dict[str, Any]:
    data = spec.to_dict()
    if thinning is not None:
        data["thinning"] = thinning.to_dict()
    return data


# --------------------------------------------------------------------------- #
# Run configuration
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec_path: str
    n_list: Tuple[int, ...] = ()
    bits: Optional[int] = None
    cheb_degree: Optional[int] = None
    output_format: str = "json"
    thinning_path: Optional[str] = None
    timing: bool = True
    oracle: bool = False
    t: Optional[float] = None
    nodes: int = 16
    prefactor: str = PREFACTOR_ALL_INTERVALS

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise InvalidInputError(f"unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")
        if self.output_format not in ("json", "csv"):
            raise InvalidInputError(f"--format must be json or csv, got {self.output_format!r}")
        if self.command in N_REQUIRED and not self.n_list:
            raise InvalidInputError(f"--n is required for the {self.command} command")
        if any(n < 1 for n in self.n_list):
            raise InvalidInputError(f"--n values must be positive, got {list(self.n_list)}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        try:
            n_list = tuple(parse_int_list(args.n))
        except ValueError as exc:
            raise InvalidInputError(f"--n must be a comma-separated list of integers, got {args.n!r}") from exc
        return cls(
            command=args.command,
            spec_path=args.spec,
            n_list=n_list,
            bits=args.bits,
            cheb_degree=args.cheb_degree,
            output_format=args.format,
            thinning_path=getattr(args, "thinning", None),
            timing=not args.no_timing,
            oracle=getattr(args, "oracle", False),
            t=getattr(args, "t", None),
            nodes=getattr(args, "nodes", 16),
            prefactor=getattr(args, "prefactor", PREFACTOR_ALL_INTERVALS),
        )


# --------------------------------------------------------------------------- #
# Commands
# --------------------------------------------------------------------------- #


def _constants_row(consts: AsymptoticConstants) -> Dict[str, float]:
    row: Dict[str, float] = {}
    for name, value in zip(("C1", "C2", "C3", "C4"), consts.as_tuple()):
        row[f"{name}_re"] = value.real
        row[f"{name}_im"] = value.imag
    row["beta_max"] = consts.beta_max
    row["error_exponent"] = consts.error_exponent
    return row


def _constants_table(consts: AsymptoticConstants, n_list: Tuple[int, ...]) -> pd.DataFrame:
    base = _constants_row(consts)
    if not n_list:
        return pd.DataFrame([base])
    rows = []
    for n in n_list:
        value = asymptotic_log_dn(consts, n)
        rows.append({"n": n, "log_dn_re": value.real, "log_dn_im": value.imag, "error_scale": error_scale(consts, n), **base})
    return pd.DataFrame(rows)


def _cmd_density(config: RunConfig, spec: WeightSpec, thinning: Optional[ThinningSpec]) -> pd.DataFrame:
    density = solve_density(spec.V, spec.ensemble, config.cheb_degree)
    x = lobatto_nodes(max(1, config.nodes))[::-1]
    return pd.DataFrame(
        {
            "x": x,
            "psi": density.psi(x),
            "normalization_defect": density.normalization_defect,
            "edge_residual": density.edge_residual,
        }
    )


def _cmd_constants(config: RunConfig, spec: WeightSpec, thinning: Optional[ThinningSpec]) -> pd.DataFrame:
    return _constants_table(constants(spec, degree=config.cheb_degree), config.n_list)


def _cmd_partition(config: RunConfig, spec: WeightSpec, thinning: Optional[ThinningSpec]) -> pd.DataFrame:
    consts = partition_asymptotics(
        spec.ensemble, spec.V, spec.alphas[0], spec.alpha_edge, degree=config.cheb_degree
    )
    return _constants_table(consts, config.n_list)


def _cmd_verify(config: RunConfig, spec: WeightSpec, thinning: Optional[ThinningSpec]) -> pd.DataFrame:
    consts = constants(spec, degree=config.cheb_degree)
    return convergence_sweep(spec, config.n_list, config.bits, timing=config.timing, consts=consts)


def _cmd_clt(config: RunConfig, spec: WeightSpec, thinning: Optional[ThinningSpec]) -> pd.DataFrame:
    density = solve_density(spec.V, spec.ensemble, config.cheb_degree)
    params = clt_params(spec.ensemble, density, spec.W, spec.alphas[0], spec.alpha_edge)
    if config.t is None or not config.n_list:
        return pd.DataFrame([params.to_dict()])
    rows = []
    for n in config.n_list:
        row: Dict[str, Any] = {"n": n, "t": config.t, **params.to_dict()}
        row["mgf_asymptotic"] = mgf_asymptotic(
            spec.ensemble, density, spec.W, spec.alphas[0].real, spec.alpha_edge.real, config.t, n
        )
        if config.oracle:
            row["mgf_oracle"] = mgf_ratio(spec, config.t, n, config.bits)
        rows.append(row)
    return pd.DataFrame(rows)


def _cmd_corr(config: RunConfig, spec: WeightSpec, thinning: Optional[ThinningSpec]) -> pd.DataFrame:
    density = solve_density(spec.V, spec.ensemble, config.cheb_degree)
    rows = []
    for n in config.n_list:
        value = char_poly_correlation_log(spec, n, density=density)
        row: Dict[str, Any] = {"n": n, "corr_log_re": value.real, "corr_log_im": value.imag}
        if config.oracle:
            exact = correlation_ratio(spec, n, config.bits)
            row["oracle_log_re"] = exact.real
            row["oracle_log_im"] = exact.imag
        rows.append(row)
    return pd.DataFrame(rows)


def _cmd_gap(config: RunConfig, spec: WeightSpec, thinning: Optional[ThinningSpec]) -> pd.DataFrame:
    if config.thinning_path:
        thinning = parse_thinning_file(config.thinning_path)
    if thinning is None:
        raise InvalidInputError("the gap command needs --thinning or a 'thinning' entry in the spec file")
    density = solve_density(spec.V, spec.ensemble, config.cheb_degree)
    rows = []
    for n in config.n_list:
        value = gap_probability_log(spec, thinning, n, config.prefactor, density=density)
        other = PREFACTOR_OUTER_INTERVALS if config.prefactor == PREFACTOR_ALL_INTERVALS else PREFACTOR_ALL_INTERVALS
        alternative = gap_probability_log(spec, thinning, n, other, density=density)
        row: Dict[str, Any] = {
            "n": n,
            "gap_log_re": value.real,
            "gap_log_im": value.imag,
            f"gap_log_{other}": alternative.real,
        }
        if config.oracle:
            row["oracle_log"] = float(thinned_log_expectation(spec, thinning, n, config.bits))
        rows.append(row)
    return pd.DataFrame(rows)


_HANDLERS = {
    "density": _cmd_density,
    "constants": _cmd_constants,
    "verify": _cmd_verify,
    "partition": _cmd_partition,
    "clt": _cmd_clt,
    "corr": _cmd_corr,
    "gap": _cmd_gap,
}


def format_table(table: pd.DataFrame, output_format: str) -> str:
    if output_format == "csv":
        return table.to_csv(index=False, float_format="%.16g", lineterminator="\n")
    return table.to_json(orient="records", indent=2, double_precision=15) + "\n"


def run(config: RunConfig, stream: Optional[TextIO] = None) -> int:
    stream = stream or sys.stdout
    try:
        spec, thinning = parse_spec_file(config.spec_path)
        logging.info("Running %s on %s (%s, m=%s)", config.command, config.spec_path, spec.ensemble.value, spec.m)
        table = _HANDLERS[config.command](config, spec, thinning)
    except (HankelFHError, ValueError, ArithmeticError) as exc:
        code = exit_code_for(exc)
        logging.error("%s failed: %s", config.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return code
    stream.write(format_table(table, config.output_format))
    return EXIT_OK


# --------------------------------------------------------------------------- #
# Argument parsing
# --------------------------------------------------------------------------- #


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = _ArgumentParser(
        prog="hankel_fh",
        description="Hankel determinant asymptotics with Fisher-Hartwig singularities.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", required=True, help="Path to the weight spec JSON file.")
    common.add_argument("--n", default="", help="Comma-separated matrix sizes, e.g. 4,8,16.")
    common.add_argument("--bits", type=int, default=None, help="Oracle working precision (default: 256 + 32 n).")
    common.add_argument(
        "--cheb-degree",
        type=int,
        default=None,
        dest="cheb_degree",
        help=f"Chebyshev degree for the equilibrium density (default: {settings.cheb_degree}).",
    )
    common.add_argument("--format", choices=("json", "csv"), default="json", help="Output format.")
    common.add_argument("--no-timing", action="store_true", dest="no_timing", help="Report seconds = 0.")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    density = sub.add_parser("density", parents=[common], help="psi at Lobatto nodes and normalization.")
    density.add_argument("--nodes", type=int, default=16, help="Lobatto degree of the output grid.")
    sub.add_parser("constants", parents=[common], help="C1..C4 and the error exponent.")
    sub.add_parser("verify", parents=[common], help="Oracle against asymptotics over --n.")
    sub.add_parser("partition", parents=[common], help="Partition function asymptotics.")
    clt = sub.add_parser("clt", parents=[common], help="CLT parameters of the linear statistic W.")
    clt.add_argument("--t", type=float, default=None, help="MGF parameter t.")
    clt.add_argument("--oracle", action="store_true", help="Add the exact MGF ratio.")
    corr = sub.add_parser("corr", parents=[common], help="Characteristic polynomial correlations.")
    corr.add_argument("--oracle", action="store_true", help="Add the exact finite-n ratio.")
    gap = sub.add_parser("gap", parents=[common], help="Thinned gap probabilities.")
    gap.add_argument("--thinning", default=None, help="Path to a thinning JSON file.")
    gap.add_argument("--oracle", action="store_true", help="Add the exact thinned expectation.")
    gap.add_argument(
        "--prefactor",
        choices=(PREFACTOR_ALL_INTERVALS, PREFACTOR_OUTER_INTERVALS),
        default=PREFACTOR_ALL_INTERVALS,
        help="Which s^(n/2) factor to attach.",
    )
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging()
    try:
        config = RunConfig.from_args(args)
    except InvalidInputError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
