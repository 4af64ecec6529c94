"""Command-line interface: build indexes, run the service, query offline.

    biblioscope index --corpus corpus.jsonl --out index_dir
    biblioscope serve --config service.json
    biblioscope query --index index_dir "person:kuhlen" --aggregate facets

``query`` prints exactly the payloads the HTTP API serves, one JSON
object on standard output.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import service
from .analytics import Gazetteer, load_gazetteer
from .index import Index, build_index
from .query import FacetFilters
from .records import read_corpus


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biblioscope")
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="build an index directory from a corpus file")
    p_index.add_argument("--corpus", required=True, help="corpus file (.jsonl or .jsonl.gz)")
    p_index.add_argument("--out", required=True, help="index directory to write")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--config", help="JSON config file")
    p_serve.add_argument("--index", help="index directory (overrides config)")
    p_serve.add_argument("--port", type=int)
    p_serve.add_argument("--host")
    p_serve.add_argument("--gazetteer")
    p_serve.add_argument("--vocab", action="append", default=[], metavar="ID=FILE")
    p_serve.add_argument("--static")
    p_serve.add_argument("--ref-year", type=int, dest="ref_year")

    p_query = sub.add_parser("query", help="evaluate a query offline")
    p_query.add_argument("query", nargs="?", default="", help="query string")
    p_query.add_argument("--index", required=True, help="index directory")
    p_query.add_argument("--aggregate", choices=service.AGGREGATE_KINDS)
    p_query.add_argument("--type")
    p_query.add_argument("--database")
    p_query.add_argument("--person")
    p_query.add_argument("--subject")
    p_query.add_argument("--from", type=int, dest="year_from")
    p_query.add_argument("--to", type=int, dest="year_to")
    p_query.add_argument("--page", type=int, default=0)
    p_query.add_argument("--size", type=int, default=service.DEFAULT_PAGE_SIZE)
    p_query.add_argument("--field", default="subjects", help="facet field for --aggregate facets")
    p_query.add_argument("--k", type=int, default=service.DEFAULT_FACET_K)
    p_query.add_argument("--ref-year", type=int, dest="ref_year")
    p_query.add_argument("--gazetteer", help="gazetteer file for --aggregate spatial")

    return parser


def _cmd_index(args: argparse.Namespace) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_file():
        raise FileNotFoundError(f"corpus file not found: {corpus}")
    index = build_index(read_corpus(corpus))
    index.save(args.out)
    print(f"indexed {index.doc_count} records into {args.out}")
    return 0


def _parse_vocab_flags(pairs: list[str]) -> dict[str, str]:
    vocabularies = {}
    for pair in pairs:
        vocab_id, sep, path = pair.partition("=")
        if not sep or not vocab_id or not path:
            raise ValueError(f"--vocab expects ID=FILE, got {pair!r}")
        vocabularies[vocab_id] = path
    return vocabularies


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    if args.config:
        config = service.load_config(args.config)
    elif args.index:
        config = service.ServiceConfig(index_dir=args.index)
    else:
        raise ValueError("serve needs --config or --index")

    overrides = {}
    if args.index:
        overrides["index_dir"] = args.index
    if args.port is not None:
        overrides["port"] = args.port
    if args.host:
        overrides["host"] = args.host
    if args.gazetteer:
        overrides["gazetteer"] = args.gazetteer
    if args.vocab:
        overrides["vocabularies"] = _parse_vocab_flags(args.vocab)
    if args.static:
        overrides["static_dir"] = args.static
    if args.ref_year is not None:
        overrides["reference_year"] = args.ref_year
    if overrides:
        from dataclasses import replace

        config = replace(config, **overrides)

    state = service.build_state(config)
    app = service.create_app(state, static_dir=config.static_dir, cors_origins=config.cors_origins)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return 0


def _cmd_query(args: argparse.Namespace) -> int:
    index_dir = Path(args.index)
    gazetteer = load_gazetteer(args.gazetteer) if args.gazetteer else Gazetteer({})
    state = service.ServiceState(
        index=Index.load(index_dir),
        gazetteer=gazetteer,
        vocabularies={},
        reference_year=args.ref_year,
    )
    filters = FacetFilters(
        info_type=args.type,
        database=args.database,
        person=args.person,
        subject=args.subject,
        year_from=args.year_from,
        year_to=args.year_to,
    )
    if args.aggregate:
        payload = service.aggregate_payload(
            state,
            args.aggregate,
            args.query,
            filters,
            field_name=args.field,
            k=args.k,
            ref_year=args.ref_year,
        )
    else:
        payload = service.search_payload(state, args.query, filters, args.page, args.size)
    print(service.dump_payload(payload))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"index": _cmd_index, "serve": _cmd_serve, "query": _cmd_query}
    try:
        return handlers[args.command](args)
    except KeyboardInterrupt:
        return 130
    except BrokenPipeError:
        # downstream consumer (head, less, ...) closed the pipe; not an error
        devnull = open(os.devnull, "w")
        os.dup2(devnull.fileno(), sys.stdout.fileno())
        return 0
    except Exception as exc:  # noqa: BLE001 - CLI boundary turns failures into exit codes
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
