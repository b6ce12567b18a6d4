"""Command-line front end.

Subcommands: enumerate, smallest, verify, stats, oracle.  All results go
to stdout in machine-parseable form; diagnostics and progress go to
stderr.  Exit status: 0 success, 1 verification failure or runtime error,
2 usage error.  Reruns with identical inputs produce byte-identical
outputs regardless of --jobs.
"""

from __future__ import annotations

import argparse
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from . import __version__
from .catalog import Catalog, CatalogFormatError, read_catalog, write_catalog
from .enumerator import (
    MODES,
    EnumerationConfig,
    default_worker_count,
    enumerate_carmichael,
    max_factor_count,
)
from .extremal import DETERMINISTIC_PRIMALITY_MAX_D, smallest_with_factors
from .korselt import CarmichaelEntry, korselt_failure, oracle_enumerate
from .primes import factorize
from .stats import (
    DEFAULT_MODULI,
    DEFAULT_PRIME_CAP,
    TABLE_NAMES,
    build_report,
    default_checkpoints,
    write_report,
)


def exact_int(text: str) -> int:
    """Parse '561', '1e12' or '2.5e10' to an exact integer."""
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value != value.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _int_list(text: str) -> list[int]:
    return [exact_int(tok) for tok in text.split(",") if tok]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carmichael",
        description="Enumerate Carmichael numbers and reproduce their statistics.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="catalog all Carmichael numbers below a bound")
    p.add_argument("--limit", type=exact_int, required=True)
    p.add_argument("--min-factors", type=int, default=3)
    p.add_argument("--max-factors", type=int, default=None)
    p.add_argument("--mode", choices=MODES, default="last-prime")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("smallest", help="smallest Carmichael number with d prime factors")
    p.add_argument("--factors", type=int, required=True, metavar="D")
    p.add_argument("--jobs", type=int, default=None)

    p = sub.add_parser("verify", help="check numbers against Korselt's criterion")
    p.add_argument("numbers", nargs="*", type=exact_int, metavar="N")
    p.add_argument("--file", type=Path, help="file with one number per line")

    p = sub.add_parser("stats", help="compute distribution tables from a catalog")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--checkpoints", type=_int_list, default=None,
                   help="comma-separated bounds (default: decades plus 25e9)")
    p.add_argument("--tables", default="all",
                   help=f"comma-separated subset of {','.join(TABLE_NAMES)}")
    p.add_argument("--mod", type=_int_list, default=list(DEFAULT_MODULI),
                   help="moduli for residue tables")
    p.add_argument("--primes-up-to", type=int, default=DEFAULT_PRIME_CAP)
    p.add_argument("--out-dir", type=Path, required=True)

    p = sub.add_parser("oracle", help="brute-force enumeration (small bounds only)")
    p.add_argument("--limit", type=exact_int, required=True)
    p.add_argument("--out", type=Path, default=None)
    return parser


def _progress_printer(label: str):
    if not sys.stderr.isatty():
        return None
    state = {"last": -1}

    def report(done: int, total: int) -> None:
        pct = 100 * done // max(total, 1)
        if pct != state["last"]:
            state["last"] = pct
            print(f"\r{label}: {pct}%", end="", file=sys.stderr, flush=True)
            if done == total:
                print(file=sys.stderr)

    return report


def _cmd_enumerate(args) -> int:
    jobs = args.jobs if args.jobs is not None else default_worker_count()
    config = EnumerationConfig(
        limit=args.limit,
        d_min=args.min_factors,
        d_max=args.max_factors,
        completion_mode=args.mode,
        worker_count=jobs,
    )
    cat = enumerate_carmichael(config, progress=_progress_printer("enumerate"))
    write_catalog(cat, args.out)
    print(f"count={len(cat)} limit={args.limit}")
    return 0


def _cmd_smallest(args) -> int:
    jobs = args.jobs if args.jobs is not None else default_worker_count()
    entry = smallest_with_factors(args.factors, worker_count=jobs)
    if args.factors > DETERMINISTIC_PRIMALITY_MAX_D:
        print(
            f"note: factors above 2**64 are BPSW-verified "
            f"(no deterministic proof at d={args.factors})",
            file=sys.stderr,
        )
    print(entry)
    return 0


def _cmd_verify(args) -> int:
    numbers = list(args.numbers)
    if args.file:
        for line in args.file.read_text().splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                numbers.append(exact_int(line.split()[0]))
    if not numbers:
        print("verify: no numbers given", file=sys.stderr)
        return 2
    all_ok = True
    for n in numbers:
        if n < 2:
            print(f"{n} not-carmichael (smaller than 2)")
            all_ok = False
            continue
        f = factorize(n)
        reason = korselt_failure(n, f)
        if reason is None:
            print(f"{n} carmichael")
        else:
            shown = "·".join(
                str(p) if e == 1 else f"{p}^{e}" for p, e in f.factors
            )
            print(f"{n} not-carmichael ({reason}: {shown})")
            all_ok = False
    return 0 if all_ok else 1


def _cmd_stats(args) -> int:
    cat = read_catalog(args.input, validate=False)
    cps = args.checkpoints
    if cps is None:
        bound = cat.limit
        if bound is None:
            bound = cat.entries[-1].value + 1 if cat.entries else 10**3
        cps = default_checkpoints(bound)
    tables = TABLE_NAMES if args.tables == "all" else tuple(args.tables.split(","))
    unknown = set(tables) - set(TABLE_NAMES)
    if unknown:
        print(f"stats: unknown tables {sorted(unknown)}", file=sys.stderr)
        return 2
    report = build_report(
        cat,
        cps,
        moduli=tuple(args.mod),
        prime_cap=args.primes_up_to,
        tables=tables,
    )
    report.check_consistency()
    written = write_report(report, args.out_dir)
    for path in written:
        print(path)
    return 0


def _cmd_oracle(args) -> int:
    entries = oracle_enumerate(args.limit)
    if args.out:
        cat = Catalog(
            entries,
            {
                "generator": f"carmichael {__version__}",
                "limit": str(args.limit),
                "d_min": "3",
                "d_max": str(max_factor_count(args.limit)) if args.limit > 561 else "3",
                "count": str(len(entries)),
            },
        )
        write_catalog(cat, args.out)
    print(f"count={len(entries)}")
    return 0


_HANDLERS = {
    "enumerate": _cmd_enumerate,
    "smallest": _cmd_smallest,
    "verify": _cmd_verify,
    "stats": _cmd_stats,
    "oracle": _cmd_oracle,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, CatalogFormatError) as exc:
        print(f"carmichael {args.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"carmichael {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
