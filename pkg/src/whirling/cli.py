"""Command-line interface: ``whirl <subcommand> ...``.

Exit status is 0 on success, 1 on usage or validation errors and 2 when a
sweep reports a counterexample.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import os
import random
import sys

from . import certificates, parking, toggles
from .errors import WhirlError
from .orbits import (
    CONJECTURES,
    OrbitBoard,
    check_homomesy,
    conjecture_sweep,
    orbit_of,
    orbit_structure,
    parse_statistic,
)
from .whirl import WhirlOrder, parse_order
from .words import enumerate_family, parse_family, parse_word

EXIT_OK, EXIT_ERROR, EXIT_COUNTEREXAMPLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _no_csv(fmt: str, what: str) -> None:
    if fmt == "csv":
        raise UsageError(f"csv output is not available for {what}")


def _family_word(args):
    family = parse_family(args.family)
    return family, parse_word(args.word, family.k, family.n)


# -- subcommands --------------------------------------------------------------

def cmd_enumerate(args) -> tuple[str, int]:
    family = parse_family(args.family)
    census = enumerate_family(family)
    words = [str(w) for w in census.words]
    if args.format == "json":
        return _json({"family": str(family), "cardinality": census.cardinality, "words": words}), EXIT_OK
    if args.format == "csv":
        return _csv(["word"], [[w] for w in words]), EXIT_OK
    return "".join(w + "\n" for w in words) + f"cardinality {census.cardinality}\n", EXIT_OK


def cmd_orbit(args) -> tuple[str, int]:
    family, f = _family_word(args)
    order = parse_order(args.order, family)
    orbit = orbit_of(family, f, order)
    board = OrbitBoard.from_orbit(orbit, start=f)
    if args.format == "json":
        return _json({"family": str(family), "order": str(orbit.order), "length": orbit.length,
                      "rows": [str(w) for w in board.words()]}), EXIT_OK
    _no_csv(args.format, "orbit")
    return board.render(), EXIT_OK


def cmd_partition(args) -> tuple[str, int]:
    family = parse_family(args.family)
    order = parse_order(args.order, family)
    s = orbit_structure(family, order)
    rows = []
    for r in range(s.count):
        orbit = s.orbit(r)
        rows.append((str(orbit.representative), orbit.length, [str(w) for w in orbit.words]))
    if args.format == "json":
        return _json({"family": str(family), "order": str(s.order), "orbits": [
            {"rep": rep, "length": ln, "words": ws} for rep, ln, ws in rows]}), EXIT_OK
    if args.format == "csv":
        return _csv(["rep", "length"], [(rep, ln) for rep, ln, _ in rows]), EXIT_OK
    return "".join(f"{rep}\t{ln}\t{' '.join(ws)}\n" for rep, ln, ws in rows), EXIT_OK


def _render_report(report, fmt) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        return report.to_csv()
    return report.to_text()


def cmd_homomesy(args) -> tuple[str, int]:
    family = parse_family(args.family)
    stat = parse_statistic(args.statistic)
    order = parse_order(args.order, family)
    report = check_homomesy(family, order, stat, include_values=args.values)
    return _render_report(report, args.format), EXIT_OK


def cmd_sweep(args) -> tuple[str, int]:
    report = conjecture_sweep(args.conjecture, args.max_n, seed=args.seed, n_random=args.random,
                              max_k=args.max_k)
    out = _render_report(report, args.format)
    return out, EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


def _park_word(text: str):
    digits = text.replace(",", "")
    n = len(text.split(",")) if "," in text else len(digits)
    return parse_word(text, n, n)


def cmd_park_factor(args) -> tuple[str, int]:
    fac = parking.park_to_factorization(_park_word(args.word))
    _no_csv(args.format, "park-factor")
    if args.format == "json":
        return _json({"word": args.word, "factorization": str(fac), **fac.to_dict()}), EXIT_OK
    return str(fac) + "\n", EXIT_OK


def cmd_park_tree(args) -> tuple[str, int]:
    tree = parking.factorization_to_tree(parking.park_to_factorization(_park_word(args.word)))
    _no_csv(args.format, "park-tree")
    if args.format == "json":
        return tree.to_json(), EXIT_OK
    return tree.to_text(), EXIT_OK


def cmd_certify(args) -> tuple[str, int]:
    family, f = _family_word(args)
    order = parse_order(args.order, family)
    board = certificates.board_for(family, f, order)
    if args.kind == "chunks":
        cert = certificates.build_chunk_partition(board, method=args.method)
        check = certificates.verify_chunk_partition(cert)
    elif args.kind == "redlights":
        cert = certificates.build_red_light_cycles(board)
        check = certificates.verify_red_light_cycles(cert)
    else:
        cert = certificates.build_snake_decomposition(board, order)
        check = certificates.verify_snake_decomposition(cert)
    _no_csv(args.format, "certify")
    status = EXIT_OK if check else EXIT_ERROR
    if args.format == "json":
        d = cert.to_dict()
        d["verified"] = bool(check)
        if not check:
            d["diagnostic"] = check.message
        return _json(d), status
    tail = "verified\n" if check else f"verification failed: {check.message}\n"
    return cert.render() + tail, status


def cmd_toggle_check(args) -> tuple[str, int]:
    n, r = args.n, args.r
    orders = [WhirlOrder.identity(n)] if args.order in ("id", "identity") else \
        [WhirlOrder(n, tuple(int(t) for t in args.order.split(",")))]
    rng = random.Random(args.seed)
    orders += [WhirlOrder.random(n, rng) for _ in range(args.random)]
    reports = [toggles.check_toggle_homomesy(n, r, o) for o in orders]
    if args.format == "json":
        return _json([rep.to_dict() for rep in reports]), EXIT_OK
    return "".join(_render_report(rep, args.format) for rep in reports), EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for random whirl orders")
    common.add_argument("--size-limit", type=int, default=None,
                        help="ceiling on k^n candidate words (overrides WHIRL_SIZE_LIMIT)")

    p = _Parser(prog="whirl", description="Whirling dynamics on families of functions [n] -> [k].")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("enumerate", parents=[common], help="list a family")
    s.add_argument("family")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("orbit", parents=[common], help="print the orbit board of a word")
    s.add_argument("family")
    s.add_argument("word")
    s.add_argument("--order", default="id")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("partition", parents=[common], help="list all orbits of a family")
    s.add_argument("family")
    s.add_argument("--order", default="id")
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("homomesy", parents=[common], help="exact orbit averages of a statistic")
    s.add_argument("family")
    s.add_argument("statistic")
    s.add_argument("--order", default="id")
    s.add_argument("--values", action="store_true", help="include statistic values along each orbit")
    s.set_defaults(func=cmd_homomesy)

    s = sub.add_parser("sweep", parents=[common], help="search for counterexamples")
    s.add_argument("conjecture", choices=CONJECTURES)
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--max-k", type=int, default=10)
    s.add_argument("--random", type=int, default=None, help="number of random orders per family")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("park-factor", parents=[common], help="transposition factorization of a parking function")
    s.add_argument("word")
    s.set_defaults(func=cmd_park_factor)

    s = sub.add_parser("park-tree", parents=[common], help="noncrossing tree of a parking function")
    s.add_argument("word")
    s.set_defaults(func=cmd_park_tree)

    s = sub.add_parser("certify", parents=[common], help="build and verify an orbit certificate")
    s.add_argument("family")
    s.add_argument("word")
    s.add_argument("--kind", choices=["chunks", "redlights", "snakes"], required=True)
    s.add_argument("--order", default="id")
    s.add_argument("--method", choices=["matching", "greedy"], default="matching")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("toggle-check", parents=[common], help="cardinality homomesy for toggles")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--order", default="id")
    s.add_argument("--random", type=int, default=0, help="extra random orders")
    s.set_defaults(func=cmd_toggle_check)
    return p


@contextlib.contextmanager
def _size_limit(limit):
    if limit is None:
        yield
        return
    old = os.environ.get("WHIRL_SIZE_LIMIT")
    os.environ["WHIRL_SIZE_LIMIT"] = str(limit)
    try:
        yield
    finally:
        if old is None:
            del os.environ["WHIRL_SIZE_LIMIT"]
        else:
            os.environ["WHIRL_SIZE_LIMIT"] = old


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        with _size_limit(args.size_limit):
            out, status = args.func(args)
    except (UsageError, WhirlError, ValueError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"whirl: error: {msg}", file=stderr)
        return EXIT_ERROR
    stdout.write(out)
    return status


def main(argv=None) -> int:
    return run_cli(argv)


if __name__ == "__main__":
    sys.exit(main())
