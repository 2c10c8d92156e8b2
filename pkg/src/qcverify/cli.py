"""Command-line interface; every subcommand speaks the JSON wire formats.

Exit codes: 0 on pass/accept, 2 on an exhausted search budget, 1 on any
error (including failed checks and failed rechecks).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import serialize
from .enumerator import enumerate_X
from .errors import ParameterError
from .games import game_value
from .spectral import approx_product_s, projection
from .traces import (
    CyclotomicTrace,
    correlation_from_trace,
    is_k_approximate,
    required_support,
)
from .verifier import (
    Accept,
    QcModulus,
    get_family,
    recheck_certificate,
    stability_probe,
    verify,
)
from .words import GroupParams

EXIT_PASS = 0
EXIT_ERROR = 1
EXIT_BUDGET = 2


def _emit(data: dict) -> None:
    print(serialize.dumps(data))


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _cmd_project(args) -> int:
    params = GroupParams(args.n, args.m)
    _emit(serialize.ring_element_to_json(projection(args.v, args.i, params)))
    return EXIT_PASS


def _cmd_s(args) -> int:
    params = GroupParams(args.n, args.m)
    approx = approx_product_s(args.v, args.w, args.i, args.j, args.k, params)
    _emit(serialize.certified_approx_to_json(approx))
    return EXIT_PASS


def _cmd_check_trace(args) -> int:
    tau = serialize.trace_from_json(_load_json(args.file))
    if isinstance(tau, CyclotomicTrace):
        raise ParameterError("requirement checking needs a Gaussian-valued trace")
    report = is_k_approximate(tau, args.k)
    _emit({"pass": report.passed, "failures": list(report.failures), "k": args.k})
    return EXIT_PASS if report.passed else EXIT_ERROR


def _cmd_correlation(args) -> int:
    tau = serialize.trace_from_json(_load_json(args.trace))
    _emit(serialize.correlation_to_json(correlation_from_trace(tau)))
    return EXIT_PASS


def _cmd_game_val(args) -> int:
    game = serialize.game_from_json(_load_json(args.game))
    corr = serialize.correlation_from_json(_load_json(args.corr))
    print(serialize.fraction_to_json(game_value(game, corr)))
    return EXIT_PASS


def _cmd_enumerate(args) -> int:
    params = GroupParams(args.n, args.m)
    sink = open(args.emit, "w") if args.emit else sys.stdout
    try:
        for _, candidate in enumerate_X(params, args.k, args.budget, start=args.from_):
            sink.write(serialize.dumps(serialize.candidate_to_json(candidate)) + "\n")
    finally:
        if args.emit:
            sink.close()
    return EXIT_PASS


def _parse_modulus(text: str) -> QcModulus:
    if text.isdigit():
        return QcModulus.constant(int(text))
    return serialize.modulus_from_json(_load_json(text))


def _cmd_verify(args) -> int:
    family = get_family(args.family)
    modulus = _parse_modulus(args.modulus)
    start = 0
    if args.resume and Path(args.resume).exists():
        state = _load_json(args.resume)
        if state.get("z") != args.z or state.get("family") != args.family:
            raise ParameterError("resume file belongs to a different job")
        start = int(state["next_index"])
    outcome = verify(args.z, family, modulus, args.budget, start=start)
    if isinstance(outcome, Accept):
        _emit(serialize.certificate_to_json(outcome.certificate))
        return EXIT_PASS
    progress = {"z": args.z, "family": args.family, "next_index": outcome.next_index}
    if args.resume:
        Path(args.resume).write_text(serialize.dumps(progress) + "\n")
    _emit(progress)
    return EXIT_BUDGET


def _cmd_recheck(args) -> int:
    cert = serialize.certificate_from_json(_load_json(args.cert))
    family = get_family(args.family)
    ok = recheck_certificate(cert, family)
    _emit({"valid": ok})
    return EXIT_PASS if ok else EXIT_ERROR


def _cmd_probe(args) -> int:
    corr = serialize.correlation_from_json(_load_json(args.corr))
    distance, witness = stability_probe(corr, args.depth)
    _emit(
        {
            "distance": serialize.fraction_to_json(distance),
            "witness": [
                {"assignment": list(f), "weight": serialize.fraction_to_json(q)}
                for f, q in witness
            ],
        }
    )
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcverify",
        description="Exact tools for synchronous games: certified projection "
        "approximants, approximate-trace checks, witnessed enumeration, and "
        "a semi-decision verifier with offline recheckable certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("project", help="emit a generator spectral projection")
    for flag in ("--n", "--m", "--v", "--i"):
        sp.add_argument(flag, type=int, required=True)
    sp.set_defaults(fn=_cmd_project)

    sp = sub.add_parser("s", help="emit a certified projection-product approximant")
    for flag in ("--n", "--m", "--v", "--w", "--i", "--j", "--k"):
        sp.add_argument(flag, type=int, required=True)
    sp.set_defaults(fn=_cmd_s)

    sp = sub.add_parser("check-trace", help="run the first k relaxed requirements")
    sp.add_argument("--file", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(fn=_cmd_check_trace)

    sp = sub.add_parser("correlation", help="exact correlation of an exact trace")
    sp.add_argument("--trace", required=True)
    sp.set_defaults(fn=_cmd_correlation)

    sp = sub.add_parser("game-val", help="exact value of a game at a correlation")
    sp.add_argument("--game", required=True)
    sp.add_argument("--corr", required=True)
    sp.set_defaults(fn=_cmd_game_val)

    sp = sub.add_parser("enumerate", help="stream witnessed candidates as JSON lines")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--budget", type=int, required=True)
    sp.add_argument("--from", dest="from_", type=int, default=0)
    sp.add_argument("--emit", default=None)
    sp.set_defaults(fn=_cmd_enumerate)

    sp = sub.add_parser("verify", help="semi-decide membership via the game family")
    sp.add_argument("--family", required=True)
    sp.add_argument("--z", required=True)
    sp.add_argument("--modulus", required=True, help="integer or JSON file")
    sp.add_argument("--budget", type=int, required=True)
    sp.add_argument("--resume", default=None)
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("recheck", help="replay a certificate offline")
    sp.add_argument("--cert", required=True)
    sp.add_argument("--family", default="toy")
    sp.set_defaults(fn=_cmd_recheck)

    sp = sub.add_parser("probe", help="exact distance to small deterministic mixtures")
    sp.add_argument("--corr", required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.set_defaults(fn=_cmd_probe)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParameterError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
