"""Command line interface.

A thin shell over the core modules: every numerical fact in a report comes
from a core operation.  Exit codes: 0 ok, 1 parse error, 2 invalid
configuration (weak hyperbolicity fails), 3 size-cap refusal, 4 internal
oracle mismatch or failed cross-validation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .configuration import (
    ConfigurationError,
    InvalidConfigurationError,
    OpenBookError,
    OracleMismatchError,
    ParseError,
    QuadbookError,
    SizeCapError,
    require_valid,
)
from .reporting import (
    check_report,
    classify_report,
    cross_validate,
    dual_complex_report,
    homology_report,
    load_document,
    open_book_report,
    render_text,
)
from .splitting import DEFAULT_SUBSET_CAP

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadbook",
        description="homology and open book structures of generic intersections of quadrics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_flags(p, with_space=False):
        p.add_argument("--partition", help="comma separated odd cyclic partition, e.g. 1,1,1,1,1")
        p.add_argument("--config", help="path to a schema-1 JSON configuration document")
        p.add_argument("--distinguished", type=int, default=None,
                       help="override the distinguished coordinate (1-based)")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--max-n", type=int, default=DEFAULT_SUBSET_CAP,
                       help=f"subset enumeration cap (default {DEFAULT_SUBSET_CAP})")
        if with_space:
            p.add_argument("--space", action="append", choices=("Z", "ZC", "Zplus"),
                           help="which spaces to compute (repeatable; default all)")

    add_input_flags(sub.add_parser("check", help="verify weak hyperbolicity"))
    add_input_flags(sub.add_parser("dual-complex", help="list the faces of the dual complex"))
    add_input_flags(sub.add_parser("homology", help="graded homology tables"), with_space=True)
    add_input_flags(sub.add_parser("classify", help="normal form and diffeomorphism types"))
    book = sub.add_parser("open-book", help="binding, page and consistency report")
    add_input_flags(book)
    book.add_argument("--variant", choices=("real", "complex"), default="complex")
    book.add_argument("--facet", type=int, default=None,
                      help="coordinate carrying the book (default: the distinguished one)")
    xv = sub.add_parser("cross-validate", help="run the oracle battery over a family")
    xv.add_argument("--family", action="append", default=None,
                    help="family spec, e.g. 'partitions:n<=6' (repeatable)")
    xv.add_argument("--jobs", type=int, default=1, help="parallelism degree")
    xv.add_argument("--format", choices=("text", "structured"), default="text")
    return parser


def _load_input(args) -> "Configuration":
    sources = [s for s in (args.partition, args.config) if s]
    if len(sources) != 1:
        raise ParseError("exactly one of --partition or --config is required")
    if args.partition:
        try:
            parts = [int(p) for p in args.partition.split(",") if p.strip()]
        except ValueError as exc:
            raise ParseError(f"bad partition {args.partition!r}") from exc
        doc = {"schema": 1, "partition": parts}
        if args.distinguished is not None:
            doc["distinguished"] = args.distinguished
        return load_document(doc)
    try:
        with open(args.config, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {args.config}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {args.config}: {exc}") from exc
    cfg = load_document(doc)
    if args.distinguished is not None:
        cfg = cfg.with_distinguished(args.distinguished)
    return cfg


def _emit(report: dict, fmt: str, stream) -> None:
    if fmt == "structured":
        stream.write(json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        stream.write(render_text(report))


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    out = sys.stdout
    try:
        if args.command == "cross-validate":
            families = args.family or ["partitions:n<=6"]
            report = cross_validate(families, jobs=max(1, args.jobs))
            _emit(report, args.format, out)
            return EXIT_OK if report["ok"] else EXIT_MISMATCH

        cfg = _load_input(args)
        if args.command == "check":
            report = check_report(cfg)
            _emit(report, args.format, out)
            return EXIT_OK if report["ok"] else EXIT_INVALID

        require_valid(cfg)
        if args.command == "dual-complex":
            report = dual_complex_report(cfg)
        elif args.command == "homology":
            spaces = tuple(args.space) if args.space else ("Z", "ZC", "Zplus")
            report = homology_report(cfg, spaces, cap=args.max_n)
        elif args.command == "classify":
            report = classify_report(cfg)
        elif args.command == "open-book":
            facet = args.facet if args.facet is not None else cfg.distinguished
            report = open_book_report(cfg, facet, variant=args.variant)
        else:  # pragma: no cover
            raise ParseError(f"unknown command {args.command!r}")
        _emit(report, args.format, out)
        return EXIT_OK
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidConfigurationError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SizeCapError as exc:
        print(f"size cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OracleMismatchError as exc:
        print(f"internal oracle mismatch (this is a bug): {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ConfigurationError, OpenBookError, QuadbookError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    raise SystemExit(main())
