"""Command-line front end: ``ellfan <command> [fan] [--point POINT] ...``.

Every command writes one JSON document to stdout (or ``--output``). Domain
errors exit with 1 and an ``{"error": {"kind", "message"}}`` document; usage
errors exit with 2.
"""
import argparse
import json
import logging
import os
import sys

from ellfan import fans, selftest, settings
from ellfan.cech import (build_complex, chart_complex, fiber_complex, global_sections_complex,
                         support_stratification)
from ellfan.errors import CompletenessError, EllFanError
from ellfan.json_parser import (DATA_DIR, bundled_fan_names, load_fan, load_point, parse_weights)
from ellfan.lattice import as_lists
from ellfan.local_model import hh_chart
from ellfan.localization import fixed_fiber_check, fixed_subfan, identity_fiber_check, t_of_e, verify_localization

FAN_COMMANDS = ("validate", "charts", "sheaf", "fiber", "gamma", "strata", "fixed", "localize", "identity-check")
POINT_REQUIRED = ("fiber", "tsub", "fixed", "localize")


def _resolve(path, kind):
    """A file path, or the name of a bundled fan/point."""
    if os.path.exists(path):
        return path
    bundled = os.path.join(DATA_DIR, kind, path + ".json")
    if os.path.exists(bundled):
        return bundled
    return path


def read_fan(args):
    fan = load_fan(_resolve(args.fan, "fans"))
    if args.assume_complete:
        fan.assume_complete = True
    return fan


def read_point(args, rank=None):
    """A point file, or a named point; names are built in the given rank when there is one."""
    if rank is not None and not os.path.exists(args.point):
        named = dict(selftest.point_battery(rank))
        if args.point in named:
            return named[args.point]
    return load_point(_resolve(args.point, "points"))


def run_validate(args):
    fan = read_fan(args)
    report = fan.validate()
    document = report.as_dict()
    document["cones"] = len(fan.faces())
    return (0 if report.valid else 1), document


def run_charts(args):
    fan = read_fan(args)
    fans.require_valid(fan)
    charts = []
    for cone in fan.faces():
        W_A, W_G = fans.chart_weights(fan, cone)
        charts.append({"cone": cone.as_list(), "aweights": as_lists(W_A), "gweights": as_lists(W_G)})
    return 0, {"fan": fan.name, "charts": charts}


def run_sheaf(args):
    fan = read_fan(args)
    complex_ = build_complex(fan, args.max_cones)
    complex_.check_invariants()
    document = complex_.as_dict()
    document["gamma"] = global_sections_complex(complex_).as_dict()
    if args.point:
        document["fiber"] = fiber_complex(complex_, read_point(args, fan.ambient_rank)).as_dict()
    return 0, document


def run_fiber(args):
    fan = read_fan(args)
    complex_ = build_complex(fan, args.max_cones)
    return 0, fiber_complex(complex_, read_point(args, fan.ambient_rank)).as_dict()


def run_gamma(args):
    complex_ = build_complex(read_fan(args), args.max_cones)
    return 0, global_sections_complex(complex_).as_dict()


def run_strata(args):
    fan = read_fan(args)
    complex_ = build_complex(fan, args.max_cones)
    point = read_point(args, fan.ambient_rank) if args.point else None
    return 0, support_stratification(complex_, point).as_dict()


def run_tsub(args):
    e = read_point(args)
    document = t_of_e(e).as_dict()
    document["point"] = e.as_dict()
    return 0, document


def run_fixed(args):
    fan = read_fan(args)
    e = read_point(args, fan.ambient_rank)
    document = fixed_subfan(fan, e).as_dict()
    if fan.is_complete():
        document["fiber_check"] = fixed_fiber_check(fan, e, args.max_cones)
    return 0, document


def run_localize(args):
    fan = read_fan(args)
    report = verify_localization(fan, read_point(args, fan.ambient_rank), args.max_cones)
    return (0 if report.passed else 1), report.as_dict()


def run_identity_check(args):
    fan = read_fan(args)
    if not fan.assume_complete:
        logging.log(logging.ERROR, "identity-check needs a fan flagged complete (--assume-complete).")
        raise CompletenessError("fan " + str(fan.name) + " is not flagged complete; pass --assume-complete")
    report = identity_fiber_check(fan, args.max_cones)
    return (0 if report["passed"] else 1), report


def run_chart_hh(args):
    W_A = parse_weights(args.aweights)
    W_G = parse_weights(args.gweights)
    term = hh_chart(W_A, W_G, args.rank)
    document = {"term": term.as_dict()}
    if args.point:
        complex_ = chart_complex(W_A, W_G, term.ambient_rank)
        document["fiber"] = fiber_complex(complex_, read_point(args, term.ambient_rank)).as_dict()
        document["gamma"] = global_sections_complex(complex_).as_dict()
    return 0, document


def run_selftest(args):
    results = selftest.run_battery(args.only)
    return (0 if all(r["passed"] for r in results) else 1), selftest.format_table(results)


def command_runners():
    return {
        "validate": run_validate,
        "charts": run_charts,
        "sheaf": run_sheaf,
        "fiber": run_fiber,
        "gamma": run_gamma,
        "strata": run_strata,
        "tsub": run_tsub,
        "fixed": run_fixed,
        "localize": run_localize,
        "identity-check": run_identity_check,
        "chart-hh": run_chart_hh,
        "selftest": run_selftest,
    }


def build_parser():
    parser = argparse.ArgumentParser(prog="ellfan",
                                     description="Equivariant elliptic Hochschild homology of smooth toric varieties.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="Indent the JSON output.")
    common.add_argument("--output", help="Write the report to this file instead of stdout.")
    common.add_argument("--max-cones", type=int, default=None,
                        help="Cap on maximal cones (default: $" + settings.MAX_CONES_ENV + " or " +
                             str(settings.DEFAULT_MAX_CONES) + ").")
    common.add_argument("--assume-complete", action="store_true", help="Flag the fan as complete.")
    common.add_argument("--verbose", action="store_true", help="Log progress to stderr.")

    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True
    for name in FAN_COMMANDS:
        sub = commands.add_parser(name, parents=[common])
        sub.add_argument("fan", help="Fan JSON file or bundled fan name (" + ", ".join(bundled_fan_names()) + ").")
        sub.add_argument("--point", required=name in POINT_REQUIRED, help="Point JSON file or bundled point name.")
    sub = commands.add_parser("tsub", parents=[common])
    sub.add_argument("--point", required=True, help="Point JSON file or bundled point name.")
    sub = commands.add_parser("chart-hh", parents=[common])
    sub.add_argument("--aweights", required=True, help="JSON array of affine coordinate weights.")
    sub.add_argument("--gweights", required=True, help="JSON array of torus coordinate weights.")
    sub.add_argument("--rank", type=int, default=None, help="Torus rank, needed when both weight lists are empty.")
    sub.add_argument("--point", help="Also report the fiber and global sections at this point.")
    sub = commands.add_parser("selftest", parents=[common])
    sub.add_argument("--only", action="append", choices=list(selftest.CRITERIA), help="Run only this criterion.")
    return parser


def emit(document, args):
    if isinstance(document, str):
        text = document
    elif args.pretty:
        text = json.dumps(document, sort_keys=True, indent=2)
    else:
        text = json.dumps(document, sort_keys=True, separators=(",", ":"))
    if args.output:
        with open(args.output, "w") as out:
            out.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        code, document = command_runners()[args.command](args)
    except EllFanError as error:
        emit(error.as_dict(), args)
        return 1
    emit(document, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
