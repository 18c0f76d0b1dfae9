"""Command-line client.

Every subcommand builds the same pydantic request the HTTP service accepts and
either runs the handler in-process (default) or POSTs it to ``--server``.

Exit codes: 0 success, 2 bad input or failure.  ``check`` additionally uses
0 Separable, 1 Entangled, 3 Inconclusive, 2 NotAState.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.error
import urllib.request
from typing import Any, Optional, Sequence

from pydantic import ValidationError

from .io import (
    SchemaError,
    dense_to_json,
    dumps,
    encode_complex,
    load_json,
    parse_cvec4,
    parse_quadruple,
    read_state_file,
    read_vector_file,
    state_to_json,
    to_csv,
    witness_from_json,
    witness_to_json,
)
from .service import HANDLERS, dispatch

CHECK_EXIT = {"Separable": 0, "Entangled": 1, "Inconclusive": 3, "NotAState": 2}


class CliError(Exception):
    pass


def _vector(args: argparse.Namespace) -> list:
    if args.file and args.c:
        raise CliError("give either --file or --c, not both")
    if args.file:
        return encode_complex(read_vector_file(args.file))
    if args.c:
        return encode_complex(parse_cvec4(args.c))
    raise CliError("an input vector is required (--c or --file)")


def _options(args: argparse.Namespace, *names: str) -> dict:
    return {n: getattr(args, n) for n in names if getattr(args, n, None) is not None}


def build_payload(args: argparse.Namespace) -> dict:
    cmd = args.command
    if cmd == "norm":
        return {"c": _vector(args), **_options(args, "tol")}
    if cmd == "dual":
        out = {"c": _vector(args), **_options(args, "tol", "starts")}
        if args.certificate:
            out["certificate"] = True
        return out
    if cmd == "check":
        inline = args.a is not None or args.b is not None or args.c is not None
        if args.file and inline:
            raise CliError("give either --file or --a/--b/--c, not both")
        opts = _options(args, "tol", "starts")
        if args.file:
            data = read_state_file(args.file)
            if hasattr(data, "c"):
                return {"state": state_to_json(data), **opts}
            return {"dense": dense_to_json(data), **opts}
        if args.a is None or args.b is None or args.c is None:
            raise CliError("check needs --file or all of --a, --b, --c")
        state = {
            "a": [float(v) for v in parse_quadruple(args.a, "a")],
            "b": [float(v) for v in parse_quadruple(args.b, "b")],
            "c": encode_complex(parse_cvec4(args.c)),
        }
        return {"state": state, **opts}
    if cmd == "witness":
        out: dict[str, Any] = {"witness": witness_to_json(witness_from_json(load_json(args.file)))}
        if args.state:
            data = read_state_file(args.state)
            if not hasattr(data, "c"):
                raise CliError("--state must use the X-state schema")
            out["state"] = state_to_json(data)
        return {**out, **_options(args, "tol")}
    if cmd == "region":
        return _options(args, "family", "grid", "theta", "extent", "tol")
    if cmd == "decompose":
        return _options(args, "a", "b", "c")
    if cmd == "sample":
        return _options(args, "n", "seed", "tol", "starts")
    raise CliError(f"unknown command {cmd}")


def _post(server: str, name: str, payload: dict) -> dict:
    req = urllib.request.Request(
        server.rstrip("/") + "/" + name,
        data=json.dumps(payload).encode(),
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    try:
        with urllib.request.urlopen(req, timeout=600) as resp:
            return json.loads(resp.read().decode())
    except urllib.error.HTTPError as exc:
        raise CliError(f"server returned {exc.code}: {exc.read().decode(errors='replace')}") from exc
    except urllib.error.URLError as exc:
        raise CliError(f"cannot reach {server}: {exc.reason}") from exc


def run(args: argparse.Namespace) -> dict:
    payload = build_payload(args)
    if args.server:
        return _post(args.server, args.command, payload)
    model, _ = HANDLERS[args.command]
    return dispatch(args.command, model.model_validate(payload))


def render(command: str, report: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps(report) + "\n"
    if command == "region":
        return to_csv(report["header"], report["rows"])
    flat = {k: v for k, v in sorted(report.items()) if not isinstance(v, (dict, list))}
    return to_csv(list(flat), [list(flat.values())])


def _add_common(p: argparse.ArgumentParser, starts: bool = False) -> None:
    p.add_argument("--tol", type=float, default=None, help="tolerance (handler default when omitted)")
    if starts:
        p.add_argument("--starts", type=int, default=None, help="initial sigma-cuts of the numeric dual solver")
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--server", default=None, help="POST to a running xsep service instead of computing locally")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xsep", description="Separability of three-qubit X-states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="||z||_X with branch, bracket and maximizing sigma")
    p.add_argument("--c", help='inline vector, e.g. "1,1,1,-1" or "1+2j,0,0,1"')
    p.add_argument("--file", help="JSON vector file")
    _add_common(p)

    p = sub.add_parser("dual", help="dual norm ||c||'_X")
    p.add_argument("--c")
    p.add_argument("--file")
    p.add_argument("--certificate", action="store_true", help="include the maximizing z")
    _add_common(p, starts=True)

    p = sub.add_parser("check", help="separability verdict (exit 0/1/3, 2 on error)")
    p.add_argument("--file", help="JSON file, X-state or dense schema")
    p.add_argument("--a", help="JSON quadruple or scalar")
    p.add_argument("--b", help="JSON quadruple or scalar")
    p.add_argument("--c", help="inline anti-diagonal vector")
    _add_common(p, starts=True)

    p = sub.add_parser("witness", help="witness test and optional pairing with a state")
    p.add_argument("--file", required=True, help="JSON witness file (keys s, t, u)")
    p.add_argument("--state", help="JSON X-state file to pair with")
    _add_common(p)

    p = sub.add_parser("region", help="region scan as CSV")
    p.add_argument("--family", choices=("theta-rs", "pqqq"), default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--extent", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("decompose", help="seven-term product decomposition for the a, b, ab family")
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--server", default=None)

    p = sub.add_parser("sample", help="verdict statistics over random X-states")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    _add_common(p, starts=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.format or ("csv" if args.command == "region" else "json")
    try:
        report = run(args)
    except (CliError, SchemaError, ValidationError, ValueError, OSError) as exc:
        print(f"xsep {args.command}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(args.command, report, fmt))
    if args.command == "check":
        return CHECK_EXIT.get(report.get("verdict"), 2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
