"""Command-line entry point.

Defaults may come from DEEPLINKER_* environment variables; explicit flags
override the environment.
"""

from __future__ import annotations

import argparse
import os
import sys

from .service import DeepLinkerService, ServiceConfig

__all__ = ["main", "build_config"]


def _env(name: str, default=None):
    return os.environ.get("DEEPLINKER_" + name, default)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="deeplinker",
        description="Serve deep links into desktop resources over HTTP.",
    )
    p.add_argument("--root", default=_env("ROOT"), help="directory to serve (required)")
    p.add_argument("--port", type=int, default=int(_env("PORT", "7276")))
    p.add_argument("--bind", default=_env("BIND", "127.0.0.1"))
    p.add_argument("--base-iri", default=_env("BASE_IRI", ""))
    p.add_argument("--sparql-endpoint", default=_env("SPARQL_ENDPOINT"))
    p.add_argument("--upload-dir", default=_env("UPLOAD_DIR", ""))
    p.add_argument("--cache-dir", default=_env("CACHE_DIR", ""))
    p.add_argument("--journal", default=_env("JOURNAL", ""))
    p.add_argument("--assets-dir", default=_env("ASSETS_DIR", ""))
    p.add_argument(
        "--resolve",
        metavar="PATH",
        help="print the negotiated representation of one deep link and exit",
    )
    p.add_argument(
        "--accept",
        default=None,
        help="accept header to use with --resolve (default: HTML)",
    )
    return p


def build_config(args) -> ServiceConfig:
    return ServiceConfig(
        root_dir=args.root,
        bind_address=args.bind,
        port=args.port,
        base_iri=args.base_iri,
        sparql_endpoint=args.sparql_endpoint,
        upload_dir=args.upload_dir,
        cache_dir=args.cache_dir,
        journal_path=args.journal,
        assets_dir=args.assets_dir,
    )


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    if not args.root:
        parser.print_usage(sys.stderr)
        print("error: --root is required", file=sys.stderr)
        return 2
    if not 1 <= args.port <= 65535:
        parser.print_usage(sys.stderr)
        print(f"error: port {args.port} out of range", file=sys.stderr)
        return 2
    try:
        config = build_config(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        service = DeepLinkerService(config)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.resolve:
        from .errors import ResolveError
        from .grammar import LinkSyntaxError

        try:
            rep = service.represent(args.resolve, args.accept)
        except (LinkSyntaxError, ResolveError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        sys.stdout.buffer.write(rep.body)
        return 0
    try:
        print(f"serving {config.root_dir} at http://{config.bind_address}:{config.port}/")
        service.serve()
    except OSError as exc:
        print(f"error: cannot bind {config.bind_address}:{config.port}: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        service.shutdown()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
