"""``chessboard-bisect`` command line.

Exit codes: 0 success, 1 usage error, 2 computation failure (restarts
exhausted), 3 invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__, certifier, selftest
from .f2poly import format_poly
from .grasscoh import build_presentation
from .grasssearch import ProjectionAssignment, assign_search
from .measures import load_instance
from .solver import SolveConfig, solve

EXIT_OK, EXIT_USAGE, EXIT_FAILURE, EXIT_INVARIANT = 0, 1, 2, 3
THREADS_ENV = "CHESSBOARD_BISECT_THREADS"

log = logging.getLogger("chessboard_bisect")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunManifest:
    subcommand: str
    flags: dict
    inputs: dict = field(default_factory=dict)
    version: str = __version__
    seed: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def resolve_threads(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            n = int(env)
        except ValueError:
            raise UsageError(f"{THREADS_ENV}={env!r} is not an integer") from None
        if n < 1:
            raise UsageError(f"{THREADS_ENV} must be positive")
        return n
    return os.cpu_count() or 1


def _manifest(args, inputs=()) -> RunManifest:
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command", "fault")}
    digests = {str(p): sha256_file(p) for p in inputs}
    return RunManifest(args.command, flags, digests, __version__, flags.get("seed"))


def _dump_json(obj, out: str | None):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        return load_instance(path)
    except FileNotFoundError:
        raise UsageError(f"no such instance file: {path}") from None
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"malformed instance {path}: {exc}") from None


def _solve_cfg(args) -> SolveConfig:
    return SolveConfig(restarts=args.restarts, residual_tol=args.tol, seed=args.seed,
                       threads=args.threads)


# --------------------------------------------------------------- commands


def cmd_certify(args) -> int:
    cert = certifier.certify(args.d, args.k, args.m)
    out = cert.to_dict()
    out["manifest"] = _manifest(args).to_dict()
    _dump_json(out, args.out)
    return EXIT_OK if cert.consistent else EXIT_INVARIANT


def cmd_table(args) -> int:
    args.threads = resolve_threads(args.threads)
    certs = certifier.parity_table(args.d_max, args.k_max, args.m_max, workers=args.threads)
    text = certifier.table_csv(certs)
    manifest = json.dumps(_manifest(args).to_dict(), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        Path(args.out + ".manifest.json").write_text(manifest)
    else:
        sys.stdout.write(text)
        sys.stderr.write(manifest)
    return EXIT_OK if all(c.consistent for c in certs) else EXIT_INVARIANT


def cmd_bisect(args) -> int:
    args.threads = resolve_threads(args.threads)
    measures = _load(args.instance)
    log.info("bisect: seed %d, %d restarts, %d threads", args.seed, args.restarts, args.threads)
    rep = solve(measures, args.k, _solve_cfg(args))
    out = rep.to_json_dict()
    out["manifest"] = _manifest(args, [args.instance]).to_dict()
    _dump_json(out, args.out)
    if not rep.ok:
        log.error("no bisection found; best residual %.3e", rep.best_residual)
        return EXIT_FAILURE
    return EXIT_OK


def cmd_assign_search(args) -> int:
    args.threads = resolve_threads(args.threads)
    clouds = _load(args.instance)
    log.info("assign-search: seed %d, %d restarts, %d threads", args.seed, args.restarts, args.threads)
    rep = assign_search([ProjectionAssignment(c) for c in clouds], args.d, args.k, _solve_cfg(args))
    out = rep.to_json_dict()
    out["manifest"] = _manifest(args, [args.instance]).to_dict()
    _dump_json(out, args.out)
    if not rep.ok:
        log.error("no bisection found; best residual %.3e", rep.best_residual)
        return EXIT_FAILURE
    return EXIT_OK


def cmd_ring_info(args) -> int:
    pres = build_presentation(args.d, args.m)
    out = {
        "d": args.d,
        "m": args.m,
        "dimensions": pres.dimensions(),
        "relations": [format_poly(r) for r in pres.relations],
        "manifest": _manifest(args).to_dict(),
    }
    _dump_json(out, args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = selftest.run(quick=args.quick, fault=args.fault)
    for r in results:
        line = f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.seconds:.2f}s)"
        print(line + (f": {r.detail}" if r.detail else ""))
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"invariant violation: {', '.join(failed)}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


# ----------------------------------------------------------------- parser


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chessboard-bisect", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("certify", help="decide the ideal-membership condition for one triple")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--m", type=_nonneg, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("table", help="CSV of certificates over a grid of triples")
    p.add_argument("--d_max", "--d-max", dest="d_max", type=_nonneg, default=4)
    p.add_argument("--k_max", "--k-max", dest="k_max", type=_nonneg, default=6)
    p.add_argument("--m_max", "--m-max", dest="m_max", type=int, default=3)
    p.add_argument("--threads", type=_positive)
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    for name, helptext, func in (
        ("bisect", "search for a chessboard bisection of an instance", cmd_bisect),
        ("assign-search", "search planes and cuts for projection mass assignments", cmd_assign_search),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("instance", help="measures JSON file")
        if func is cmd_assign_search:
            p.add_argument("--d", type=_positive, required=True)
        p.add_argument("--k", type=_positive, required=True)
        p.add_argument("--tol", type=float, default=1e-6)
        p.add_argument("--restarts", type=_positive, default=64)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=_positive)
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("ring-info", help="graded dimensions and relations of the Grassmannian presentation")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--m", type=_nonneg, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ring_info)

    p = sub.add_parser("selftest", help="run the invariant battery")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--inject-fault", dest="fault", choices=["relation"], help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"chessboard-bisect: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"chessboard-bisect: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
