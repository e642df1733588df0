"""Command line: expand series, verify the registry and claim catalogue, replay scripts.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
usage, parse or I/O errors.
"""
from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from pathlib import Path

from . import claims, proofscript, registry
from .expr import EvalError, eval_expr
from .series import SeriesError

CACHE_ENV = "OVERCUBIC_CACHE_DIR"
SCRIPT_DIR = Path(__file__).with_name("scripts")
DEFAULT_ORDER = 500
DEFAULT_LIMIT = 3000


class UsageError(Exception):
    pass


def _emit(args, command: str, reports, **meta) -> int:
    reports = sorted(reports, key=lambda r: r.id)
    ok = all(r.passed for r in reports)
    if args.format == "json":
        doc = {
            "run": {
                "command": command,
                **meta,
                "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
            },
            "results": [r.to_dict() for r in reports],
            "passed": ok,
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [r.line() for r in reports]
        failed = [r.id for r in reports if not r.passed]
        lines.append("")
        lines.append(f"{len(reports) - len(failed)}/{len(reports)} passed"
                     + (f"; failed: {', '.join(failed)}" if failed else ""))
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def cmd_expand(args) -> int:
    try:
        x = proofscript.parse_expr(args.expr)
    except proofscript.ScriptError as exc:
        raise UsageError(f"cannot parse expression: {exc}") from None
    s = eval_expr(x, args.order, args.mod or 0)
    text = ",".join(str(c) for c in s.coeffs)
    if args.format == "json":
        text = json.dumps({"expr": args.expr, "order": args.order, "modulus": args.mod or 0,
                           "coefficients": list(s.coeffs)})
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def _select(ids, known, what):
    if not ids:
        return list(known)
    unknown = [i for i in ids if i not in known]
    if unknown:
        raise UsageError(f"unknown {what} id(s): {', '.join(unknown)}")
    return list(ids)


def _cached_table(limit: int, modulus: int) -> claims.BtTable:
    cache = os.environ.get(CACHE_ENV)
    if not cache:
        return claims.bt_table(limit, modulus)
    path = Path(cache) / f"bt-{limit}-{modulus}.tbl"
    if path.exists():
        try:
            return claims.load_table(path)
        except claims.TableFormatError:
            pass
    table = claims.bt_table(limit, modulus)
    path.parent.mkdir(parents=True, exist_ok=True)
    claims.save_table(table, path)
    return table


def cmd_verify(args) -> int:
    if args.kind == "identities":
        ids = _select(args.id, registry.REGISTRY, "identity")
        order = args.order or DEFAULT_ORDER
        reports = [registry.verify_identity(i, order) for i in ids]
        return _emit(args, "verify identities", reports, order=order)

    known = {c.id: c for c in claims.builtin_claims()}
    ids = _select(args.id, known, "claim")
    if args.table:
        table = claims.load_table(args.table)
        limit = args.limit or table.limit
    else:
        limit = args.limit or DEFAULT_LIMIT
        table = _cached_table(limit, args.mod if args.mod is not None else claims.DEFAULT_MODULUS)
    try:
        reports = [claims.verify_claim(known[i], limit, table) for i in ids]
    except claims.ClaimError as exc:
        raise UsageError(str(exc)) from None
    return _emit(args, "verify claims", reports, limit=limit, modulus=table.modulus)


def _script_path(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    builtin = SCRIPT_DIR / f"{name}.qprf"
    if builtin.exists() and os.sep not in name:
        return builtin
    raise UsageError(f"no such script: {name}")


def cmd_replay(args) -> int:
    path = _script_path(args.script)
    script = proofscript.load(path)
    reports = proofscript.replay(script, args.order)
    return _emit(args, f"replay {path}", reports, order=args.order or script.pragmas.get("order", DEFAULT_ORDER))


def cmd_table(args) -> int:
    modulus = args.mod if args.mod is not None else claims.DEFAULT_MODULUS
    table = claims.bt_table(args.limit, modulus)
    if args.out:
        claims.save_table(table, args.out)
    else:
        for n, v in enumerate(table.values):
            print(n, v)
    return 0


def cmd_export(args) -> int:
    text = json.dumps(registry.export(), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="overcubic", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("human", "json"), default="human")
        sp.add_argument("--out", help="write the report here instead of stdout")

    sp = sub.add_parser("expand", help="print coefficients 0..N of an expression")
    sp.add_argument("expr")
    sp.add_argument("--order", type=_nonneg, default=10)
    sp.add_argument("--mod", type=_nonneg, default=0)
    common(sp)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("verify", help="check registry identities or congruence claims")
    sp.add_argument("kind", choices=("identities", "claims"))
    sp.add_argument("--id", action="append", default=[], help="restrict to this id (repeatable)")
    sp.add_argument("--order", type=_positive, help=f"identity truncation order (default {DEFAULT_ORDER})")
    sp.add_argument("--limit", type=_positive, help=f"largest claim argument (default {DEFAULT_LIMIT})")
    sp.add_argument("--mod", type=_nonneg, help="ring for a freshly built table (default 384)")
    sp.add_argument("--table", help="use a saved bt table")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("replay", help="replay a proof script")
    sp.add_argument("script", help="path to a .qprf file or a shipped script name")
    sp.add_argument("--order", type=_positive)
    common(sp)
    sp.set_defaults(func=cmd_replay)

    sp = sub.add_parser("table", help="compute bt(0..N) and save it")
    sp.add_argument("--limit", type=_nonneg, required=True)
    sp.add_argument("--mod", type=_nonneg)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("export", help="dump the identity registry as JSON")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except proofscript.ScriptError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except claims.TableFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (EvalError, SeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
