"""Command-line entry point.

Exit codes: 0 success, 1 diagnostics with error severity, 2 usage/IO error.
Diagnostics print as "file:line:col: severity code message".
"""

from __future__ import annotations

import argparse
import json
import sys

from . import server, service
from .diagnostics import Diagnostic, line_col
from .vocab import parse_vocabulary


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _print_diagnostics(diags: list[Diagnostic], vocab_path: str, vocab_text: str,
                       rules_path: str | None = None, rules_text: str = "",
                       out=None) -> None:
    out = out or sys.stdout
    for d in diags:
        if d.source == "vocab":
            path, text = vocab_path, vocab_text
        else:
            path, text = rules_path or "<rules>", rules_text
        line, col = line_col(text, d.span[0])
        print(f"{path}:{line}:{col}: {d.severity.value} {d.code} {d.message}", file=out)


def _has_errors(diags: list[Diagnostic]) -> bool:
    return any(d.is_error() for d in diags)


def cmd_vocab_check(args) -> int:
    try:
        text = _read(args.file)
    except OSError as exc:
        print(f"rulecnl: {exc}", file=sys.stderr)
        return 2
    result = parse_vocabulary(text)
    _print_diagnostics(result.diagnostics, args.file, text)
    return 1 if _has_errors(result.diagnostics) else 0


def cmd_check(args) -> int:
    try:
        vocab_text = _read(args.vocab)
        rules_text = _read(args.rules)
    except OSError as exc:
        print(f"rulecnl: {exc}", file=sys.stderr)
        return 2
    diags = service.diagnostics(vocab_text, rules_text)
    _print_diagnostics(diags, args.vocab, vocab_text, args.rules, rules_text)
    return 1 if _has_errors(diags) else 0


def cmd_compile(args) -> int:
    try:
        vocab_text = _read(args.vocab)
        rules_text = _read(args.rules)
    except OSError as exc:
        print(f"rulecnl: {exc}", file=sys.stderr)
        return 2
    result = service.compile_rules(vocab_text, rules_text)
    _print_diagnostics(result.diagnostics, args.vocab, vocab_text, args.rules, rules_text)
    if not result.ok:
        return 1
    try:
        with open(args.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(result.xml)
    except OSError as exc:
        print(f"rulecnl: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_complete(args) -> int:
    try:
        vocab_text = _read(args.vocab)
    except OSError as exc:
        print(f"rulecnl: {exc}", file=sys.stderr)
        return 2
    items = service.complete(vocab_text, args.text, args.cursor)
    print(json.dumps([service.completion_wire(i) for i in items], indent=2))
    return 0


def cmd_serve(args) -> int:
    if args.stdio:
        server.serve_stdio(sys.stdin, sys.stdout)
        return 0
    if args.port is None:
        print("rulecnl: serve needs --port (or --stdio)", file=sys.stderr)
        return 2
    try:
        server.serve(args.port, args.ui)
    except OSError as exc:
        print(f"rulecnl: cannot serve on port {args.port}: {exc}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rulecnl",
        description="Business-rule toolchain: vocabulary checking, rule "
                    "validation, SBVR XML compilation and an editor service.")
    sub = parser.add_subparsers(dest="command", required=True)

    vocab = sub.add_parser("vocab", help="vocabulary commands")
    vocab_sub = vocab.add_subparsers(dest="vocab_command", required=True)
    vocab_check = vocab_sub.add_parser("check", help="validate a vocabulary file")
    vocab_check.add_argument("file")
    vocab_check.set_defaults(func=cmd_vocab_check)

    check = sub.add_parser("check", help="validate a rules file against a vocabulary")
    check.add_argument("--vocab", required=True)
    check.add_argument("rules")
    check.set_defaults(func=cmd_check)

    compile_ = sub.add_parser("compile", help="compile rules to semantic-formulation XML")
    compile_.add_argument("--vocab", required=True)
    compile_.add_argument("rules")
    compile_.add_argument("-o", "--output", required=True)
    compile_.set_defaults(func=cmd_compile)

    complete = sub.add_parser("complete", help="print completion items as JSON")
    complete.add_argument("--vocab", required=True)
    complete.add_argument("--text", required=True)
    complete.add_argument("--cursor", type=int, required=True)
    complete.set_defaults(func=cmd_complete)

    serve = sub.add_parser("serve", help="run the language service")
    serve.add_argument("--port", type=int)
    serve.add_argument("--ui", help="directory of editor static assets, served under /ui/")
    serve.add_argument("--stdio", action="store_true",
                       help="serve line-framed JSON over stdin/stdout instead of HTTP")
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    return args.func(args)


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
