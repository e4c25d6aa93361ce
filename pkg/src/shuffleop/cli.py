"""Command-line interface.

Exit codes: 0 success / identity holds, 1 identity fails, 2 user error,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .groebner import ArityError, GroebnerBasis, complete
from .poisder import tau_expand
from .presentations import (BUILTINS, Presentation, SourceError, builtin,
                            identity_library, load_file, lookup_identity)
from .trees import ARITY_CAP
from .verify import check_certificate, verify_identity

EXIT_OK, EXIT_FAILS, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_MAX_ARITY = 5

log = logging.getLogger("shuffleop")


class UsageError(Exception):
    pass


def _presentation(args) -> Presentation:
    if args.presentation_file:
        return load_file(args.presentation_file)
    if not args.operad:
        raise UsageError("give --operad or --presentation-file")
    try:
        return builtin(args.operad)
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None


def _order(args, pres: Presentation):
    gens = pres.generators
    if not args.precedence:
        return pres.order()
    prec = [g.strip() for g in args.precedence.split(",") if g.strip()]
    if sorted(prec) != sorted(gens):
        raise UsageError(f"--precedence must list each generator once: {', '.join(gens)}")
    return pres.order(prec)


def _cache_dir(args) -> Path | None:
    if args.no_cache:
        return None
    if args.cache_dir:
        return Path(args.cache_dir)
    return Path(os.environ.get("SHUFFLEOP_CACHE", Path.home() / ".cache" / "shuffleop"))


def _basis(args, pres: Presentation, max_arity: int) -> GroebnerBasis:
    if max_arity > ARITY_CAP:
        raise ArityError(f"max arity {max_arity} exceeds the cap {ARITY_CAP}")
    if max_arity < 1:
        raise UsageError("max arity must be positive")
    order = _order(args, pres)
    cache = _cache_dir(args)
    path = None
    if cache is not None:
        digest = hashlib.sha256(
            "\n".join([__version__, pres.render(), ",".join(order.precedence), str(max_arity)]).encode()
        ).hexdigest()[:24]
        path = cache / f"basis-{digest}.json"
        if path.exists():
            try:
                return GroebnerBasis.from_dict(json.loads(path.read_text()))
            except (ValueError, KeyError):
                log.warning("ignoring unreadable cache entry %s", path)
    # relations above the bound cannot affect components at or below it
    relations = [r for r in pres.relations(order) if r.arity <= max_arity]
    basis = complete(relations, max_arity, order, pres.generators,
                     workers=args.workers, ops=pres.ops)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(_dump(basis.to_dict()))
        tmp.replace(path)
    return basis


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _label(args, pres) -> str:
    return args.operad or pres.name or "presentation"


def cmd_complete(args) -> int:
    pres = _presentation(args)
    basis = _basis(args, pres, args.max_arity or DEFAULT_MAX_ARITY)
    data = basis.to_dict()
    artifact = _dump(data) if args.format == "json" else basis.render()
    if args.out:
        Path(args.out).write_text(artifact)
        summary = ", ".join(f"arity {n}: {c}" for n, c in data["summary"].items())
        print(f"{_label(args, pres)}: {len(basis.rules)} rules ({summary})")
    else:
        sys.stdout.write(artifact)
    return EXIT_OK


def cmd_dims(args) -> int:
    pres = _presentation(args)
    top = args.max_arity or DEFAULT_MAX_ARITY
    basis = _basis(args, pres, top)
    table = basis.dims_table(top)
    if args.format == "json":
        _emit(args, _dump({"operad": _label(args, pres), "max_arity": top,
                           "precedence": list(basis.order.precedence),
                           "dims": {str(n): d for n, d in enumerate(table, 1)}}))
    else:
        lines = ["n\tdim"] + [f"{n}\t{d}" for n, d in enumerate(table, 1)]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _identity(args, pres: Presentation | None, name: str | None):
    if args.identity_file:
        src = load_file(args.identity_file)
        if name:
            try:
                return src.identity(name), src
            except KeyError:
                raise UsageError(f"unknown identity {name!r} in {args.identity_file}") from None
        if len(src.identities) != 1:
            raise UsageError("identity file holds several identities; name one with --identity")
        return src.identities[0], src
    if not name:
        raise UsageError("give --identity or --identity-file")
    try:
        return lookup_identity(name, pres), None
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None


def cmd_verify(args) -> int:
    pres = _presentation(args)
    ident, _ = _identity(args, pres, args.identity)
    missing = ident.ops_used() - set(pres.op_table)
    if missing:
        raise UsageError(f"identity {ident.name!r} uses operations {sorted(missing)} "
                         f"not declared by the presentation")
    max_arity = args.max_arity or ident.arity
    if ident.arity > max_arity:
        raise UsageError(f"identity {ident.name!r} has arity {ident.arity} > --max-arity {max_arity}")
    basis = _basis(args, pres, max_arity)
    verdict = verify_identity(basis, ident)
    check_certificate(basis, verdict)
    report = verdict.to_dict()
    report["operad"] = _label(args, pres)
    report["certified_arity"] = basis.certified_arity
    if args.out:
        Path(args.out).write_text(_dump(report))
    if args.format == "json":
        if not args.out:
            sys.stdout.write(_dump(report))
        else:
            print(_dump({k: v for k, v in report.items() if k != "certificate"}), end="")
    else:
        steps = sum(len(r.steps) for r in verdict.reductions)
        print(f"{ident.name} modulo {_label(args, pres)}: {verdict.result} "
              f"({len(verdict.reductions)} orbit polynomials, {steps} rewrite steps)")
        distinct = list(dict.fromkeys(w.render() for w in verdict.witnesses()))
        for text in distinct[:3]:
            print(f"  nonzero normal form: {text}")
        if len(distinct) > 3:
            print(f"  ... {len(distinct) - 3} more distinct normal forms (use --format json)")
    return EXIT_OK if verdict.holds else EXIT_FAILS


def cmd_tau_check(args) -> int:
    lib = identity_library()
    ident, src = _identity(args, lib, args.name)
    ops = (src or lib).ops
    _, report = tau_expand(ident, ops)
    if args.format == "json":
        _emit(args, _dump(report.to_dict()))
    else:
        _emit(args, f"{ident.name}: {'zero' if report.zero else 'nonzero'} "
                    f"(derivation order {','.join(map(str, report.derivation_orders))}; "
                    f"{report.raw_terms} terms expanded, {report.normalized_terms} after merging, "
                    f"{report.coordinates} nonzero coordinates)\n")
    return EXIT_OK if report.zero else EXIT_FAILS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shuffleop",
                                     description="Groebner bases of binary shuffle operads.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--out", help="write the artifact/report here")

    pres = argparse.ArgumentParser(add_help=False)
    pres.add_argument("--operad", help=f"built-in presentation: {', '.join(BUILTINS)}")
    pres.add_argument("--presentation-file", help="path to an .opd file")
    pres.add_argument("--max-arity", type=int)
    pres.add_argument("--precedence", help="generators, smallest first, comma separated")
    pres.add_argument("--workers", type=int, default=1)
    pres.add_argument("--cache-dir")
    pres.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("complete", parents=[common, pres], help="compute a truncated Groebner basis")
    p.set_defaults(func=cmd_complete)
    p = sub.add_parser("dims", parents=[common, pres], help="dimensions of operad components")
    p.set_defaults(func=cmd_dims)
    p = sub.add_parser("verify", parents=[common, pres], help="check an identity modulo the basis")
    p.add_argument("--identity")
    p.add_argument("--identity-file")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("tau-check", parents=[common], help="test an identity in the differential Poisson image")
    p.add_argument("name", nargs="?")
    p.add_argument("--identity-file")
    p.set_defaults(func=cmd_tau_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except SourceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ArityError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
