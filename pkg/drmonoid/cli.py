#
# Copyright (c) 2020,2021 Jim Ramsay <i.am@jimramsay.com>
# Copyright (c) 2021 Hans Ulrich Niedermann <hun@n-dimensional.de>
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""\
The ``drmonoid-ctl`` command line

Commands build Deligne-Ribet monoid levels, list their idempotents, run
the verification suites and compare two fields. Every command produces a
JSON document; ``--format table`` renders that same document for
humans.
"""

import argparse
import contextlib
import io
import sys

from pathlib import Path

import drmonoid.common as common
import drmonoid.constants as const
from drmonoid.common import CapExceededError, PreconditionError
from drmonoid.dr_monoid import build_tower
from drmonoid.field_core import FieldError, IdealHNF, make_field
from drmonoid.limits import get_limits, init_limits, reset_limits
from drmonoid.reconstruction import compare_fields
from drmonoid.suites import print_report, print_step, run_suites


def parse_conductor(field, token):
    """An integer n for the ideal (n), or a:b:c for an ideal in Hermite normal form"""
    try:
        if ":" in token:
            a, b, c = (int(v) for v in token.split(":"))
        else:
            n = int(token)
            if n < 1:
                raise PreconditionError(f"conductor must be positive, not {n}")
            return field.rational_ideal(n)
    except ValueError:
        raise PreconditionError(f"malformed conductor {token!r}")
    if a < 1 or c < 1:
        raise PreconditionError(f"malformed conductor {token!r}")
    ideal = IdealHNF(a, b, c)
    if field.ideal_from_elements(field.ideal_basis(ideal)) != ideal:
        raise PreconditionError(f"{token} is not an ideal of {field} in Hermite normal form")
    return ideal


def resolve_moduli(field, args):
    """The conductors selected by --conductor, --levels or --conductor-norm"""
    if getattr(args, "conductor", None) is not None:
        moduli = [parse_conductor(field, args.conductor)]
    elif getattr(args, "levels", None):
        moduli = [parse_conductor(field, token) for token in args.levels]
    else:
        return [field.conductor_from_norm(n) for n in args.conductor_norm]
    for f in moduli:
        get_limits().check("conductor_norm_cap", f.norm)
    return moduli


def _document(command, **content):
    doc = {"schema_version": const.SCHEMA_VERSION, "command": command}
    doc.update(content)
    return doc


def cmd_build(args):
    field = make_field(args.field)
    tower = build_tower(field, resolve_moduli(field, args))
    doc = _document(
        "build",
        field=field.as_dict(),
        limits=get_limits().as_dict(),
        levels=[level.to_json() for level in tower],
    )
    return doc, const.EXIT_OK


def cmd_idempotents(args):
    field = make_field(args.field)
    tower = build_tower(field, resolve_moduli(field, args))
    status = const.EXIT_OK
    levels = []
    for level in tower:
        records = level.all_idempotents()
        expected = 2 ** len(level.supp)
        if len(records) != expected:
            status = const.EXIT_VERIFY_FAILED
        levels.append(
            {
                "conductor": level.modulus.as_list(),
                "supp": [P.as_list() for P in level.supp],
                "count": len(records),
                "expected": expected,
                "maximal": len(level.maximal_idempotents()),
                "rows": [r.as_dict() for r in records],
            }
        )
    return _document("idempotents", field=field.as_dict(), levels=levels), status


def cmd_verify(args):
    field = make_field(args.field)
    tower = build_tower(field, resolve_moduli(field, args))
    report = run_suites(field, tower, args.suite, seed=args.seed)
    doc = _document(
        "verify",
        field=field.as_dict(),
        conductors=[level.modulus.as_list() for level in tower],
        seed=args.seed,
        limits=get_limits().as_dict(),
        report=report.as_dict(),
    )
    return doc, const.EXIT_OK if report.passed else const.EXIT_VERIFY_FAILED


def cmd_compare(args):
    first, second = (make_field(descriptor) for descriptor in args.field)
    tower_k = build_tower(first, [first.conductor_from_norm(n) for n in args.conductor_norm])
    tower_l = build_tower(second, [second.conductor_from_norm(n) for n in args.conductor_norm])
    report = compare_fields(tower_k, tower_l)
    return _document("compare", comparison=report.as_dict()), const.EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "idempotents": cmd_idempotents,
    "verify": cmd_verify,
    "compare": cmd_compare,
}


########################################################################
# Tables


def show_build(doc):
    for level in doc["levels"]:
        units = level["ray_class_group"]["group"]["invariants"]
        print(f"{doc['field']['descriptor']} mod {level['conductor']}:")
        print_step("elements", level["element_count"])
        print_step("idempotents", len(level["idempotents"]))
        print_step("DR^x", " x ".join(f"C{d}" for d in units) or "trivial")
        print_step("I_K image", len(level["ik_image"]))
        for i, (rho, cls) in enumerate(level["elements"]):
            print(f"    {i:>5} [{rho}, {cls}]")


def show_idempotents(doc):
    for level in doc["levels"]:
        print(f"{doc['field']['descriptor']} mod {level['conductor']}: "
              f"{level['count']} idempotents ({level['expected']} expected), "
              f"{level['maximal']} maximal")
        for row in level["rows"]:
            details = f"S={row['subset']} e={row['element']}"
            if row["maximal"]:
                details += f" maximal, label {row['label']}"
            print_step("e", details)


def show_verify(doc):
    print_report(doc["report"])


def show_compare(doc):
    comparison = doc["comparison"]
    first, second = comparison["fields"]
    for level in comparison["levels"]:
        a, b = level["first"], level["second"]
        print(f"conductor norm {a['conductor_norm']}:")
        for key in sorted(a):
            mark = "  " if a[key] == b[key] else "<>"
            print(f"  {mark} {key}: {first} {a[key]} | {second} {b[key]}")
    print("Verdict:", comparison["verdict"])


TABLES = {
    "build": show_build,
    "idempotents": show_idempotents,
    "verify": show_verify,
    "compare": show_compare,
}


def render(doc, fmt):
    if fmt == "json":
        return common.dump_json(doc)
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        TABLES[doc["command"]](doc)
    return buffer.getvalue()


########################################################################
# Command line


def positive_int(value):
    n = int(value)
    if n <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, not {value}")
    return n


def parse_argv(argv=None):
    """Parse the command line arguments for `drmonoid-ctl`."""

    # Caution: If you change the command line parser in any way,
    #          update the README and the cli tests accordingly.

    parser = argparse.ArgumentParser(
        description="Build and check finite levels of Deligne-Ribet monoids of Q and imaginary quadratic fields.",
    )
    common.parser_args(parser)

    parser.add_argument(
        "--orbit-cap",
        metavar="N",
        help=f"refuse levels with more than N raw pairs (default {const.DEFAULT_ORBIT_CAP})",
        type=positive_int,
        default=None,
    )
    parser.add_argument(
        "--norm-cap",
        metavar="N",
        help=f"refuse conductors of norm above N (default {const.DEFAULT_CONDUCTOR_NORM_CAP})",
        type=positive_int,
        default=None,
    )
    parser.add_argument(
        "--search-box",
        metavar="R",
        help=f"coordinate radius of the box of field elements (default {const.DEFAULT_SEARCH_BOX})",
        type=positive_int,
        default=None,
    )
    parser.add_argument(
        "--norm-bound",
        metavar="N",
        help=f"test global elements of norm up to N against the reciprocity map (default {const.DEFAULT_NORM_BOUND})",
        type=positive_int,
        default=None,
    )

    subparsers = parser.add_subparsers(
        title="Commands",
        description="What to compute.",
        metavar="COMMAND",
        dest="command",
        required=True,
    )

    parser_build = subparsers.add_parser("build", help="dump the monoid levels as JSON")
    parser_idem = subparsers.add_parser("idempotents", help="list idempotents and maximal idempotents")
    parser_verify = subparsers.add_parser("verify", help="run verification suites")
    parser_compare = subparsers.add_parser("compare", help="compare the monoid invariants of two fields")

    def add_output_arguments(parser):
        parser.add_argument(
            "--out",
            metavar="FILENAME",
            help="write the document to FILENAME instead of standard output",
            type=Path,
            default=None,
        )
        parser.add_argument(
            "--format",
            help="output format (default json)",
            choices=["json", "table"],
            default="json",
        )

    def add_level_arguments(parser):
        parser.add_argument(
            "--field",
            metavar="FIELD",
            help=f"{const.RATIONAL_FIELD} or a negative fundamental discriminant",
            required=True,
        )
        mutex = parser.add_mutually_exclusive_group(required=True)
        mutex.add_argument(
            "--conductor",
            metavar="CONDUCTOR",
            help="an integer n for (n), or a:b:c in Hermite normal form",
        )
        mutex.add_argument(
            "--conductor-norm",
            metavar="N",
            help="the least ideal of norm N, one level per N",
            type=positive_int,
            nargs="+",
        )
        mutex.add_argument(
            "--levels",
            metavar="CONDUCTOR",
            help="one level per conductor",
            nargs="+",
        )

    for p in [parser_build, parser_idem, parser_verify]:
        add_level_arguments(p)
        add_output_arguments(p)
    add_output_arguments(parser_compare)

    parser_verify.add_argument(
        "--suite",
        metavar="SUITE",
        help=f"suite to run, one of {', '.join(const.SUITES + [const.SUITE_ALL])} (default all)",
        choices=const.SUITES + [const.SUITE_ALL],
        action="append",
        default=None,
    )
    parser_verify.add_argument(
        "--seed",
        metavar="SEED",
        help=f"seed for the sampled checks (default {const.DEFAULT_SEED})",
        type=int,
        default=const.DEFAULT_SEED,
    )

    parser_compare.add_argument(
        "--field",
        metavar="FIELD",
        help="a field to compare; give exactly two",
        action="append",
        required=True,
    )
    parser_compare.add_argument(
        "--conductor-norm",
        metavar="N",
        help="conductor norms shared by both towers",
        type=positive_int,
        nargs="+",
        required=True,
    )

    args = parser.parse_args(argv)
    common.VERBOSE = args.verbose

    if args.command == "verify":
        if args.suite is None:
            args.suite = [const.SUITE_ALL]
        if not 0 <= args.seed < 2**64:
            parser.error(f"--seed must be an unsigned 64 bit integer, not {args.seed}")
    elif args.command == "compare":
        if len(args.field) != 2:
            parser.error("compare needs exactly two --field arguments")

    fields = args.field if isinstance(args.field, list) else [args.field]
    for descriptor in fields:
        try:
            make_field(descriptor)
        except FieldError as e:
            parser.error(str(e))

    return args


def main(argv=None):
    """Main program for `drmonoid-ctl`."""

    args = parse_argv(argv)

    caps = {
        "orbit_cap": args.orbit_cap,
        "conductor_norm_cap": args.norm_cap,
        "search_box": args.search_box,
        "norm_bound": args.norm_bound,
    }
    reset_limits()
    init_limits(**{name: value for name, value in caps.items() if value is not None})

    try:
        doc, status = COMMANDS[args.command](args)
    except CapExceededError as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(const.EXIT_CAP)
    except (FieldError, PreconditionError) as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(const.EXIT_USAGE)

    text = render(doc, args.format)
    if args.out is None:
        print(text, end="")
    else:
        args.out.write_text(text)
        common.debug("Wrote", args.out)

    if status != const.EXIT_OK:
        sys.exit(status)


if __name__ == "__main__":
    main()
