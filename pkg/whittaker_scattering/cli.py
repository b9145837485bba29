"""Command line: whittaker-scattering {analyze,verify,pairing}."""

import argparse
import logging
import logging.config
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from .config import AnalysisConfig, CSpec, Settings, load_config
from .exceptions import ConfigError, IdentityViolation, WhittakerScatteringError
from .initialization import (
    create_local_datum,
    cs_from_config,
    pairs_from_config,
    psi_from_config,
    theta_from_config,
)
from .report import CheckData, ConfigurationReport, PairingReport, ReportDocument, SuiteSummary
from .tate_factors import NO_FAULT, FaultInjection
from .verification import InvariantSuite
from .whittaker import analyze

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IDENTITY_VIOLATION = 2
EXIT_INTERNAL = 3

LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"

FAULTS = {"gauss_sum": FaultInjection(gauss_scale=2)}


def cmd_analyze(config: AnalysisConfig) -> ReportDocument:
    datum = create_local_datum(config)
    theta = theta_from_config(datum, config)
    psi = psi_from_config(datum, config)
    configurations = []
    for c in cs_from_config(datum, config):
        for pair in pairs_from_config(datum, config):
            configurations.append(ConfigurationReport.from_scattering(analyze(theta, psi, c, pair)))
    checks = [check for conf in configurations for check in conf.checks]
    return ReportDocument(
        command="analyze",
        config=config,
        configurations=configurations,
        summary=SuiteSummary.from_checks(checks),
    )


def cmd_verify(config: AnalysisConfig, fault: FaultInjection = NO_FAULT) -> ReportDocument:
    datum = create_local_datum(config)
    conductors = sorted({config.psi_conductor, config.psi_conductor + 1})
    suite = InvariantSuite(
        datum,
        psi_conductors=conductors,
        cs=_dedupe(cs_from_config(datum, config)),
        pairs=pairs_from_config(datum, config),
        psi_twist=psi_from_config(datum, config).twist,
        fault=fault,
    )
    checks = [CheckData.from_result(r) for r in suite.run()]
    return ReportDocument(command="verify", config=config, checks=checks, summary=SuiteSummary.from_checks(checks))


def cmd_pairing(config: AnalysisConfig) -> ReportDocument:
    datum = create_local_datum(config)
    pairing = PairingReport.from_datum(datum)
    checks = [
        CheckData(name="hilbert_nondegenerate", passed=pairing.radical == ["(0,0)"], witness=f"radical {pairing.radical}"),
        CheckData(
            name="gram_antisymmetric",
            passed=all(
                (pairing.gram[i][j] + pairing.gram[j][i]) % datum.n == 0
                for i in range(len(pairing.gram))
                for j in range(len(pairing.gram))
            ),
            witness=f"{len(pairing.gram)}x{len(pairing.gram)} table",
        ),
    ]
    return ReportDocument(command="pairing", config=config, pairing=pairing, checks=checks, summary=SuiteSummary.from_checks(checks))


def _dedupe(elements):
    seen, result = set(), []
    for x in elements:
        if x not in seen:
            seen.add(x)
            result.append(x)
    return result


def _first_witness(document: ReportDocument, name: str) -> str:
    checks = document.checks + [c for conf in document.configurations for c in conf.checks]
    return next(c.witness for c in checks if c.name == name and not c.passed)


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "pairing": cmd_pairing}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="residue characteristic (odd prime)")
    common.add_argument("--f", type=int, help="residue degree")
    common.add_argument("--n", type=int, help="cover degree, odd and dividing p^f - 1")
    common.add_argument("--modulus-poly", help="defining polynomial of F_q, highest coefficient first, e.g. 1,0,1")
    common.add_argument("--theta", choices=["unramified", "ramified_plus", "ramified_minus"])
    common.add_argument("--psi-conductor", type=int)
    common.add_argument("--psi-twist", help="unit twist of psi: residue, 'a,b' or 'g^k'")
    common.add_argument("--c", action="append", dest="c_list", metavar="V:UNIT", help="element pi^v * unit (repeatable)")
    common.add_argument("--pairs", dest="pair_policy", help="standard, all, or an index into the isotropic pairs")
    common.add_argument("--config", type=Path, help="JSON configuration file")
    common.add_argument("--output", type=Path, help="write the report here instead of stdout")
    common.add_argument("--format", choices=["text", "machine"])
    common.add_argument("--inject-fault", choices=sorted(FAULTS), help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="whittaker-scattering",
        description="Exact scattering matrices and Whittaker dimensions for tame metaplectic covers of SL2.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--log-config", help="logging fileConfig file (default ./logging.ini)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("analyze", parents=[common], help="scattering matrix, trace and dimensions")
    subparsers.add_parser("verify", parents=[common], help="run the invariant suite")
    subparsers.add_parser("pairing", parents=[common], help="Hilbert pairing, isotropic subgroups and pairs")
    return parser


def configure_logging(path: Optional[str], verbose: bool) -> None:
    candidate = Path(path) if path else Path("logging.ini")
    if candidate.is_file():
        logging.config.fileConfig(candidate, disable_existing_loggers=False)
    else:
        logging.basicConfig(level=logging.WARNING, format=LOG_FORMAT, stream=sys.stderr)
    if verbose:
        logging.getLogger("whittaker_scattering").setLevel(logging.DEBUG)


def _overrides(args: argparse.Namespace) -> dict:
    overrides = {
        "p": args.p,
        "f": args.f,
        "n": args.n,
        "theta": args.theta,
        "psi_conductor": args.psi_conductor,
        "pair_policy": args.pair_policy,
    }
    if args.modulus_poly:
        overrides["modulus_poly"] = [int(c) for c in args.modulus_poly.split(",")]
    if args.psi_twist:
        overrides["psi_twist"] = CSpec.parse(f"0:{args.psi_twist}").unit
    if args.c_list:
        overrides["c_list"] = args.c_list
    return overrides


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    try:
        settings = Settings.from_env()
        configure_logging(args.log_config or settings.log_config, args.verbose)
        config = load_config(args.config, _overrides(args), settings)
    except (ConfigError, ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "verify":
            document = cmd_verify(config, FAULTS[args.inject_fault] if args.inject_fault else NO_FAULT)
        else:
            document = COMMANDS[args.command](config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IdentityViolation as exc:
        print(f"identity violated: {exc.identity}: {exc.witness}", file=sys.stderr)
        return EXIT_IDENTITY_VIOLATION
    except (AssertionError, WhittakerScatteringError) as exc:
        logger.exception("internal error")
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL

    fmt = args.format or settings.format
    text = document.to_machine() if fmt == "machine" else document.to_text()
    if args.output:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)

    if not document.all_passed:
        for name in document.summary.failed:
            print(f"identity violated: {name}: {_first_witness(document, name)}", file=sys.stderr)
        return EXIT_IDENTITY_VIOLATION
    return EXIT_OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
