"""Command-line interface.

Verdicts and results go to stdout, diagnostics to stderr.  Exit codes are
0 (success / equivalent / verified), 1 (not equivalent / not verified) and
2 (error, reported as a single ``E:<code>:<detail>`` line on stderr).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import census, formats, statevec
from .equivalence import are_equivalent, equivalent_bruteforce, verify_witness
from .errors import InvalidParameter, OracleMismatch, QupitGraphError, UsageError
from .graph import apply_moves, orbit
from .measurement import MeasurementSpec, measure, statevector_check
from .stabilizer import to_graph_form

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_graph(path: str):
    return formats.parse_graph(formats.read_text(path))


def cmd_check_eq(args) -> int:
    g, h = _load_graph(args.g), _load_graph(args.h)
    if g.p != h.p or g.n != h.n:
        raise InvalidParameter("graphs must share p and vertex count")
    if g.p == 2:
        verdict, witness = equivalent_bruteforce(g, h), None
    else:
        verdict, witness = are_equivalent(g, h)
        if witness is not None and not verify_witness(g, h, witness):
            raise OracleMismatch("witness failed verification")
    payload = {"equivalent": verdict,
               "witness": witness.to_json() if witness is not None else None}
    if args.oracle:
        oracle = equivalent_bruteforce(g, h)
        payload["oracle"] = oracle
        if oracle != verdict:
            raise OracleMismatch(f"oracle says {oracle}, algorithm says {verdict}")
    lines = ["equivalent" if verdict else "not equivalent"]
    if witness is not None:
        lines.append(formats.witness_to_json(witness))
    if args.oracle:
        lines.append("oracle: agree")
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if verdict else EXIT_NO


def _parse_op(text: str) -> tuple[str, int, int]:
    parts = text.split()
    if len(parts) != 3 or parts[0] not in ("circ", "star"):
        raise InvalidParameter(f"bad --op {text!r}; use 'circ v b' or 'star v a'")
    try:
        return parts[0], int(parts[1]), int(parts[2])
    except ValueError:
        raise InvalidParameter(f"bad --op {text!r}") from None


def cmd_apply(args) -> int:
    g = apply_moves(_load_graph(args.g), [_parse_op(o) for o in args.op or []])
    _emit(args, formats.format_graph(g), formats.graph_to_json(g))
    return EXIT_OK


def cmd_measure(args) -> int:
    g = _load_graph(args.g)
    spec = MeasurementSpec(args.qupit, args.a % g.p, args.b % g.p)
    result = measure(g, spec)
    payload = {"graph": formats.graph_to_json(result.graph), "route": result.route,
               "decoupled": result.decoupled}
    text = formats.format_graph(result.graph) + f"route: {result.route}\n"
    status = EXIT_OK
    if args.oracle:
        ok = statevector_check(g, spec)
        payload["oracle"] = ok
        text += f"oracle: {'pass' if ok else 'FAIL'}\n"
        status = EXIT_OK if ok else EXIT_NO
    _emit(args, text, payload)
    return status


def cmd_canon(args) -> int:
    gm = formats.parse_generator_matrix(formats.read_text(args.a))
    form = to_graph_form(gm)
    payload = {"graph": formats.graph_to_json(form.graph), "U": form.u.tolist(),
               "Y": form.y.to_json()}
    text = (formats.format_graph(form.graph)
            + "U: " + json.dumps(form.u.tolist()) + "\n"
            + "Y: " + formats.witness_to_json(form.y) + "\n")
    _emit(args, text, payload)
    return EXIT_OK


def cmd_orbit(args) -> int:
    g = _load_graph(args.g)
    members = orbit(g) if args.limit is None else orbit(g, args.limit)
    payload = {"size": len(members)}
    text = f"orbit size: {len(members)}\n"
    if args.members:
        payload["members"] = [formats.graph_to_json(m) for m in members]
        text += "\n".join(json.dumps(formats.graph_to_json(m)) for m in members) + "\n"
    _emit(args, text, payload)
    return EXIT_OK


def cmd_census(args) -> int:
    if args.n_min < 1 or args.n_max < args.n_min:
        raise InvalidParameter("need 1 <= n-min <= n-max")
    rows = census.table1_report(args.n_min, args.n_max, chi=args.chi, p=args.p)
    sys.stdout.write(census.report_csv(rows))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.g)
    flags = statevec.verify_graph_state(g)
    payload = {"stabilized": flags, "ok": all(flags)}
    text = "\n".join(f"generator {v}: {'ok' if f else 'FAIL'}" for v, f in enumerate(flags))
    _emit(args, text or "no generators", payload)
    return EXIT_OK if all(flags) else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qupitgraph", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-eq", help="decide local equivalence of two graphs")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--oracle", action="store_true", help="also run the orbit search")
    p.set_defaults(func=cmd_check_eq)

    p = sub.add_parser("apply", help="apply circ/star operators")
    p.add_argument("g")
    p.add_argument("--op", action="append", metavar="'circ|star v c'")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("measure", help="single-qupit Pauli measurement")
    p.add_argument("g")
    p.add_argument("--qupit", type=int, required=True)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="cross-check with state vectors")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("canon", help="bring a generator matrix to graph form")
    p.add_argument("a")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("orbit", help="enumerate the local-move orbit")
    p.add_argument("g")
    p.add_argument("--limit", type=int)
    p.add_argument("--members", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("census", help="tree and class counts as CSV")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--chi", action="store_true", help="also count classes")
    p.add_argument("--p", type=int, default=2)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="state-vector check of a graph state")
    p.add_argument("g")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except QupitGraphError as exc:
        detail = str(exc).replace("\n", " ")
        print(f"E:{exc.code}:{detail}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
