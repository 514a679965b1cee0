#!/usr/bin/env python3
"""
Command-Line Interface - Normalize, differentiate, flow and verify Lie expressions

Exit statuses: 0 success / all checks pass, 1 verification failure,
2 usage, parse or domain error.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from config_env import Config
from bernoulli import bernoulli_upto
from derivations import apply, ls_differential
from errors import LieAlgebraError
from expression_parser import (
    coefficient_text,
    dumps,
    element_to_records,
    format_element,
    monomial_record,
    parse_element,
)
from flow import FlowProblem, as_time, curvature_along_flow, flow_closed_form, flow_residual
from lie_algebra import (
    DEFAULT_ALPHABET,
    Alphabet,
    LieElement,
    TruncationContext,
    basis_enumerate,
    format_tree,
    kernel_cache_stats,
)
from structure_exporter import StructureExporter
from theorem_verifier import TheoremVerifier, VerificationSettings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class CliConfig:
    """Settings shared by every subcommand"""

    max_length: int = 6
    output_format: str = "human"
    alphabet: Alphabet = DEFAULT_ALPHABET
    perturbations: Tuple[Tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        if not isinstance(self.max_length, int) or self.max_length < 1:
            raise LieAlgebraError(f"--max-len must be a positive integer, got {self.max_length!r}")
        if self.output_format not in ("human", "json"):
            raise LieAlgebraError(f"--format must be human or json, got {self.output_format!r}")

    @property
    def context(self) -> TruncationContext:
        return TruncationContext(self.max_length, self.alphabet)

    @classmethod
    def from_env(cls, **overrides) -> "CliConfig":
        """Environment defaults from Config, with non-None overrides applied"""
        settings = Config.get_cli_config()
        values = {
            "max_length": settings["max_length"],
            "output_format": settings["output_format"],
            "alphabet": Alphabet.parse(settings["alphabet"]),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def parse_perturbation(text: str) -> Tuple[int, Fraction]:
    """'2=1/10' -> (2, Fraction(1, 10))"""
    index, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected i=p/q, got {text!r}")
    try:
        i = int(index)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Bernoulli index must be an integer, got {index!r}") from None
    if i < 0:
        raise argparse.ArgumentTypeError(f"Bernoulli index must be >= 0, got {i}")
    return i, parse_rational(value)


def parse_alphabet(text: str) -> Alphabet:
    try:
        return Alphabet.parse(text)
    except LieAlgebraError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _render(x: LieElement, cfg: CliConfig) -> str:
    if cfg.output_format == "json":
        return dumps(element_to_records(x))
    return format_element(x)


def _differential(cfg: CliConfig):
    table = bernoulli_upto(cfg.max_length).perturbed(dict(cfg.perturbations))
    return ls_differential(cfg.context, table)


def cmd_normalize(expr: str, cfg: CliConfig) -> str:
    return _render(parse_element(expr, cfg.context), cfg)


def cmd_diff(expr: str, cfg: CliConfig) -> str:
    x = parse_element(expr, cfg.context)
    return _render(apply(_differential(cfg), x), cfg)


def cmd_verify(cfg: CliConfig, seed: Optional[int] = None) -> Tuple[str, int]:
    """
    Run the full verification suite.

    Returns:
        Tuple of (rendered report, exit status)
    """
    verification = Config.get_verification_config()
    settings = VerificationSettings(
        max_length=cfg.max_length,
        alphabet=cfg.alphabet,
        perturbations=cfg.perturbations,
        seed=verification["seed"] if seed is None else seed,
        flatness_samples=verification["flatness_samples"],
    )
    report = TheoremVerifier(settings).run()
    logger.debug(f"kernel caches: {kernel_cache_stats()}")
    status = EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED
    return report.render(cfg.output_format), status


def cmd_flow(cfg: CliConfig, t: Fraction, generator: str = "e", start: str = "a") -> str:
    context = cfg.context
    problem = FlowProblem(
        parse_element(generator, context), parse_element(start, context), _differential(cfg), context
    )
    t = as_time(t)
    u = flow_closed_form(problem, t)
    residual = flow_residual(problem, t)
    curv = curvature_along_flow(problem, t)
    if cfg.output_format == "json":
        return dumps({
            "t": coefficient_text(t),
            "u": element_to_records(u),
            "residual": element_to_records(residual),
            "curvature": element_to_records(curv),
        })
    return "\n".join([
        f"u({t}) = {format_element(u)}",
        f"residual = {format_element(residual)}",
        f"curvature = {format_element(curv)}",
    ])


def cmd_basis(cfg: CliConfig, length: int, degree: int) -> str:
    context = cfg.context
    monomials = basis_enumerate(context, length, degree)
    if cfg.output_format == "json":
        return dumps([monomial_record(m, context) for m in monomials])
    return "\n".join(format_tree(m.tree(context.alphabet)) for m in monomials)


def cmd_bernoulli(n: int, cfg: CliConfig) -> str:
    if n < 0:
        raise LieAlgebraError(f"n must be >= 0, got {n}")
    table = bernoulli_upto(n)
    if cfg.output_format == "json":
        return dumps([{"i": i, "value": coefficient_text(b)} for i, b in enumerate(table)])
    return "\n".join(f"{i} {coefficient_text(b)}" for i, b in enumerate(table))


def cmd_export(cfg: CliConfig) -> str:
    return StructureExporter(cfg.context, _differential(cfg)).render(cfg.output_format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-len", dest="max_len", type=int, default=argparse.SUPPRESS,
                        help="truncation: drop brackets longer than N")
    common.add_argument("--format", dest="output_format", choices=["human", "json"],
                        default=argparse.SUPPRESS, help="output format")
    common.add_argument("--alphabet", type=parse_alphabet, default=argparse.SUPPRESS,
                        help="generators as name:degree,... (default a:-1,b:-1,e:0)")
    common.add_argument("--perturb-bernoulli", dest="perturb", type=parse_perturbation,
                        action="append", default=argparse.SUPPRESS,
                        help="replace B_i by p/q (negative control), e.g. 2=1/10")

    parser = argparse.ArgumentParser(
        prog="lie-interval",
        description="Exact free DGLA of the interval: normal forms, differential, flows and checks",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="print the normal form of an expression")
    p.add_argument("expr")
    p = sub.add_parser("diff", parents=[common], help="apply the interval differential")
    p.add_argument("expr")
    p = sub.add_parser("verify", parents=[common], help="run every identity check")
    p.add_argument("--seed", type=int, default=None, help="seed for the random flow generators")
    p = sub.add_parser("flow", parents=[common], help="evaluate the flow at a rational time")
    p.add_argument("--t", type=parse_rational, default=Fraction(1), help="time p/q (default 1)")
    p.add_argument("--v", default="e", help="degree 0 flow generator (default e)")
    p.add_argument("--u0", default="a", help="degree -1 starting point (default a)")
    p = sub.add_parser("basis", parents=[common], help="list normal-form monomials")
    p.add_argument("length", type=int)
    p.add_argument("degree", type=int)
    p = sub.add_parser("bernoulli", parents=[common], help="print B_0..B_n")
    p.add_argument("n", type=int)
    sub.add_parser("export", parents=[common], help="structure constants and differential table")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    # Configure logging
    logging.basicConfig(
        level=getattr(logging, Config.LOG_LEVEL.upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    perturbations: Dict[int, Fraction] = dict(getattr(args, "perturb", None) or [])
    try:
        cfg = CliConfig.from_env(
            max_length=getattr(args, "max_len", None),
            output_format=getattr(args, "output_format", None),
            alphabet=getattr(args, "alphabet", None),
            perturbations=tuple(sorted(perturbations.items())) or None,
        )
        logger.info(f"running {args.command} at N={cfg.max_length}")
        status = EXIT_OK
        if args.command == "normalize":
            output = cmd_normalize(args.expr, cfg)
        elif args.command == "diff":
            output = cmd_diff(args.expr, cfg)
        elif args.command == "verify":
            output, status = cmd_verify(cfg, args.seed)
        elif args.command == "flow":
            output = cmd_flow(cfg, args.t, args.v, args.u0)
        elif args.command == "basis":
            output = cmd_basis(cfg, args.length, args.degree)
        elif args.command == "bernoulli":
            output = cmd_bernoulli(args.n, cfg)
        else:
            output = cmd_export(cfg)
    except LieAlgebraError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if output:
        print(output)
    return status


if __name__ == "__main__":
    sys.exit(main())
