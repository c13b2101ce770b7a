"""Command line interface.

Subcommands: analyze (structure report), construct (build and write a
certificate), verify (re-check a certificate), cover (covering numbers of
a conjugacy class), catalog (list built-ins).  Exit codes: 0 success or
valid, 1 invalid certificate or failed precondition, 2 usage or parse
error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__, catalog
from .certificates import (
    dumps_certificate,
    load_certificate,
    serialize_certificate,
    verify_certificate,
)
from .construction import DEFAULT_BUDGET, construct
from .covering import covering_number, decompose_conjugate_product
from .errors import InputError, PreconditionError, SizeLimitError
from .groups import ENUMERATION_CAP, conjugacy_class_of
from .groupfile import parse_family_file, resolve_group
from .perms import format_cycles, parse_cycles
from .structure import star_series


def _add_common(parser):
    parser.add_argument("--cap", type=int, default=ENUMERATION_CAP,
                        help="enumeration cap (default %(default)s)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perfectcover",
        description="perfect subdirect covers of finite perfect groups",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="print the structure report of a group")
    p.add_argument("group", help="group file path or catalog:<NAME>")
    _add_common(p)

    p = sub.add_parser("construct", help="run the construction on a family file")
    p.add_argument("family", help="family file path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="cover generator budget (default %(default)s)")
    p.add_argument("-o", "--output", default="certificate.json")
    _add_common(p)

    p = sub.add_parser("verify", help="re-check a certificate")
    p.add_argument("certificate")
    p.add_argument("--force", action="store_true",
                   help="verify despite a tool version mismatch")
    _add_common(p)

    p = sub.add_parser("cover", help="covering number of a conjugacy class")
    p.add_argument("group", help="group file path or catalog:<NAME>")
    p.add_argument("--class", dest="class_rep", default=None,
                   help="class representative in cycle notation "
                        "(default: first nonidentity class)")
    p.add_argument("--witness", default=None,
                   help="also print a factorization of this element as a "
                        "product of class members")
    _add_common(p)

    p = sub.add_parser("catalog", help="list built-in groups")
    return parser


def cmd_analyze(args) -> int:
    G = resolve_group(args.group)
    report = star_series(G, cap=args.cap)
    for i, term in enumerate(report.series):
        print(f"G_{i} |G_{i}|={term.order}")
    print(
        f"level={report.level_text} perfect={'true' if report.perfect else 'false'} "
        f"dmin={report.dmin_text}"
    )
    if report.abelianization_invariants:
        invariants = ",".join(str(x) for x in report.abelianization_invariants)
        print(f"abelianization={invariants}")
    return 0


def cmd_construct(args) -> int:
    names, groups, d, k = parse_family_file(args.family)
    cert = construct(
        groups, d, k, names=names, seed=args.seed, budget=args.budget, cap=args.cap
    )
    data = serialize_certificate(cert)
    with open(args.output, "w") as fh:
        fh.write(dumps_certificate(data))
    gamma_order = cert.gamma.order if cert.gamma is not None else 1
    print(f"certificate written to {args.output}")
    print(f"gamma order {gamma_order}, {len(cert.levels)} level(s), seed {cert.seed}")
    return 0


def cmd_verify(args) -> int:
    data = load_certificate(args.certificate)
    report = verify_certificate(data, force_version=args.force, cap=args.cap)
    if report.message:
        print(report.message)
    for line in report.lines():
        print(line)
    return 0 if report.valid else 1


def cmd_cover(args) -> int:
    S = resolve_group(args.group)
    if args.class_rep is None:
        rep = next(
            (g for g in sorted(S.elements()) if not g.is_identity()), None
        )
        if rep is None:
            raise PreconditionError("the trivial group has no nonidentity class")
    else:
        rep = parse_cycles(args.class_rep, S.degree)
    cls = conjugacy_class_of(S, rep)
    cert = covering_number(S, cls, args.cap)
    print(f"class of {format_cycles(rep)}: size {len(cls)}")
    print(f"covering number e={cert.e}")
    print("power sizes: " + " ".join(str(s) for s in cert.power_sizes))
    if args.witness is not None:
        target = parse_cycles(args.witness, S.degree)
        rows = decompose_conjugate_product(S, target, [rep], cert.e, args.cap)
        parts = []
        for t in range(cert.e):
            conj = rows[t][0]
            parts.append(f"{format_cycles(rep)}^{format_cycles(conj)}")
        print(f"{format_cycles(target)} = " + " * ".join(parts))
    return 0


def cmd_catalog(args) -> int:
    for name in catalog.names():
        entry = catalog.CATALOG[name]
        print(
            f"{name:8s} degree={entry.degree:3d} order={entry.order:7d}  "
            f"{entry.provenance}"
        )
    return 0


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": cmd_analyze,
        "construct": cmd_construct,
        "verify": cmd_verify,
        "cover": cmd_cover,
        "catalog": cmd_catalog,
    }
    try:
        return handlers[args.command](args)
    except (InputError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
