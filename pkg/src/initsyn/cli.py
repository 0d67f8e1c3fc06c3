"""Command line entry point.

Exit codes: 0 success, 1 domain failure (type error, law counterexample),
2 usage or I/O problems (unknown names, missing files, bad flags).
"""

from __future__ import annotations

import argparse
import sys

from .languages import get_language, get_translation, list_builtins
from .laws import GenConfig, check_monad_laws, check_translation_laws
from .objtypes import translate_type
from .surface import (
    SourceError,
    parse_signature,
    parse_term,
    parse_translation,
    print_signature,
    print_term,
)
from .terms import TypeCheckError, infer
from .translate import retype_context, translate_term, validate_translation


class _Usage(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc}") from exc


def _load_language(args):
    if args.lang is not None:
        try:
            return get_language(args.lang)
        except KeyError:
            raise _Usage(f"unknown language '{args.lang}'")
    return parse_signature(_read(args.sig))


def _load_translation(args):
    if args.using is not None:
        try:
            return get_translation(args.using)
        except KeyError:
            raise _Usage(f"unknown translation '{args.using}'")
    text = _read(args.xlat)
    header = _translation_header(text)
    try:
        source = get_language(header[1])
        target = get_language(header[2])
    except KeyError as exc:
        raise _Usage(f"translation file references unknown language: {exc}")
    return parse_translation(text, source, target)


def _translation_header(text: str) -> tuple[str, str, str]:
    from .surface import _Parser

    p = _Parser(text)
    p.expect_keyword("translation")
    name = p.expect_ident("translation name")
    p.expect_keyword("from")
    src = p.expect_ident("source language")
    p.expect_keyword("to")
    tgt = p.expect_ident("target language")
    return name.text, src.text, tgt.text


def cmd_lang(args) -> int:
    if args.action == "list":
        languages, translations = list_builtins()
        print("languages:", " ".join(languages))
        print("translations:", " ".join(translations))
        return 0
    try:
        sig = get_language(args.name)
    except KeyError:
        raise _Usage(f"unknown language '{args.name}'")
    print(print_signature(sig), end="")
    return 0


def cmd_check(args) -> int:
    sig = _load_language(args)
    ctx, term = parse_term(_read(args.termfile), sig)
    ty = infer(sig, ctx, term)
    print(f": {ty}")
    return 0


def cmd_translate(args) -> int:
    x = _load_translation(args)
    ctx, term = parse_term(_read(args.termfile), x.source)
    translated = translate_term(x, ctx, term)
    # the theorem guarantees well-typed output; recheck anyway so engine
    # bugs surface as errors instead of silently wrong files
    ctx_t = retype_context(x.type_map, ctx)
    actual = infer(x.target, ctx_t, translated)
    expected = translate_type(x.type_map, infer(x.source, ctx, term))
    if actual != expected:
        raise TypeCheckError(
            f"translated term has type {actual}, expected {expected}"
        )
    print(print_term(x.target, ctx_t, translated, style=args.style))
    return 0


def cmd_laws(args) -> int:
    try:
        cfg = GenConfig(seed=args.seed, max_depth=args.depth, cases=args.cases)
    except ValueError as exc:
        raise _Usage(str(exc))
    reports = []
    if args.lang is not None:
        try:
            sig = get_language(args.lang)
        except KeyError:
            raise _Usage(f"unknown language '{args.lang}'")
        reports.append(check_monad_laws(sig, cfg))
    else:
        try:
            x = get_translation(args.translation)
        except KeyError:
            raise _Usage(f"unknown translation '{args.translation}'")
        report = validate_translation(x)
        if not report.ok:
            print(f"validation: FAIL\n{report}")
            return 1
        reports.append(check_translation_laws(x, cfg))
    for report in reports:
        print(report)
    return 0 if all(r.passed for r in reports) else 1


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="initsyn")
    sub = top.add_subparsers(dest="command", required=True)

    lang = sub.add_parser("lang", help="list or show builtin languages")
    lang_sub = lang.add_subparsers(dest="action", required=True)
    lang_sub.add_parser("list")
    show = lang_sub.add_parser("show")
    show.add_argument("name")

    check = sub.add_parser("check", help="typecheck a term file")
    group = check.add_mutually_exclusive_group(required=True)
    group.add_argument("--lang")
    group.add_argument("--sig")
    check.add_argument("termfile")

    translate = sub.add_parser("translate", help="translate a term file")
    group = translate.add_mutually_exclusive_group(required=True)
    group.add_argument("--using")
    group.add_argument("--xlat")
    translate.add_argument("termfile")
    translate.add_argument(
        "--style", choices=("canonical", "paper"), default="canonical"
    )

    laws = sub.add_parser("laws", help="run seeded law checks")
    group = laws.add_mutually_exclusive_group(required=True)
    group.add_argument("--lang")
    group.add_argument("--translation")
    laws.add_argument("--seed", type=int, default=1)
    laws.add_argument("--cases", type=int, default=1000)
    laws.add_argument("--depth", type=int, default=6)
    return top


_COMMANDS = {
    "lang": cmd_lang,
    "check": cmd_check,
    "translate": cmd_translate,
    "laws": cmd_laws,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SourceError, TypeCheckError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
