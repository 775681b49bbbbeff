"""Command-line interface.

Subcommands: check (validate a rule file), emit (write the compiled CSP
script), conflicts, redundancy, verify (agent conformance).  Exit codes are
uniform: 0 when everything checked holds, 1 when any check is violated (or
the input has diagnostics), 2 for usage/IO problems, 3 when the only
non-holding results are inconclusive.
"""

import argparse
import json
import sys

from .analysis import (check_conflict, check_conformance, overlapping_pairs,
                       redundancy_with_prechecks, HOLDS, VIOLATED,
                       INCONCLUSIVE, SKIPPED)
from .config import apply_flags, engine_config, load_config
from .cspm import emit_assertions, emit_cspm, emit_counts
from .errors import ChannelMismatch, ConfigError, SleecError
from .frontend import parse, validate
from .semantics import translate_spec
from .tockcsp import parse_tcsp

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _common():
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--config", help="config file (default: $SLEEC_CONFIG)")
    c.add_argument("--const", action="append", metavar="NAME=V",
                   help="set a constant (repeatable)")
    c.add_argument("--range", action="append", metavar="m=lo..hi",
                   help="set a numeric measure's domain (repeatable)")
    c.add_argument("--bound-tocks", type=int, metavar="N",
                   help="max tocks explored per path")
    c.add_argument("--bound-depth", type=int, metavar="N",
                   help="max non-tock events explored per path")
    c.add_argument("--tock-unit", type=int, metavar="N",
                   help="seconds represented by one tock (default 1)")
    c.add_argument("--json", action="store_true", help="JSON reports")
    return c


def _parser():
    p = argparse.ArgumentParser(
        prog="sleec",
        description="Parse, compile and check SLEEC rule files.")
    sub = p.add_subparsers(dest="command", required=True)
    common = _common()

    c = sub.add_parser("check", parents=[common],
                       help="parse and validate a rule file")
    c.add_argument("spec")

    e = sub.add_parser("emit", parents=[common],
                       help="write the compiled CSP script")
    e.add_argument("spec")
    e.add_argument("-o", "--output", help="output path (default: stdout)")

    cf = sub.add_parser("conflicts", parents=[common],
                        help="search rule pairs for conflicts")
    cf.add_argument("spec")
    cf.add_argument("rules", nargs="*", metavar="RULE",
                    help="a specific pair; all overlapping pairs when omitted")

    rd = sub.add_parser("redundancy", parents=[common],
                        help="check whether rules restrict anything new")
    rd.add_argument("spec")
    rd.add_argument("rules", nargs="*", metavar="RULE",
                    help="a specific pair; all pairs when omitted")

    v = sub.add_parser("verify", parents=[common],
                       help="check an agent model against the rules")
    v.add_argument("spec")
    v.add_argument("model", help="agent as textual tock-CSP (first equation "
                                 "is the process under verification)")
    v.add_argument("rule", nargs="?", default="all",
                   help="rule id, or `all` (default)")
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (ConfigError, ChannelMismatch) as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_USAGE
    except SleecError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_VIOLATED


def _dispatch(args):
    cfg = load_config(args.config)
    apply_flags(cfg, args.const, args.range, args.bound_tocks,
                args.bound_depth, args.tock_unit, args.json)
    if args.command == "check":
        return _cmd_check(args, cfg)
    wf = _load_spec(args.spec, cfg)
    if args.command == "emit":
        return _cmd_emit(args, cfg, wf)
    if args.command == "conflicts":
        return _cmd_conflicts(args, cfg, wf)
    if args.command == "redundancy":
        return _cmd_redundancy(args, cfg, wf)
    if args.command == "verify":
        return _cmd_verify(args, cfg, wf)
    raise AssertionError(args.command)


def _read(path):
    with open(path) as fh:
        return fh.read()


def _load_spec(path, cfg):
    spec = parse(_read(path))
    wf, diags = validate(spec, cfg)
    for d in diags:
        print(str(d), file=sys.stderr)
    if wf is None:
        raise SleecError("%s has errors; aborting" % path)
    return wf


def _cmd_check(args, cfg):
    try:
        spec = parse(_read(args.spec))
    except SleecError as err:
        if cfg.output_format == "json":
            print(json.dumps([{"code": type(err).__name__, "message": str(err),
                               "line": getattr(err, "line", 0),
                               "col": getattr(err, "col", 0),
                               "severity": "error"}], indent=2))
        else:
            print("error: %s" % err, file=sys.stderr)
        return EXIT_VIOLATED
    wf, diags = validate(spec, cfg)
    if cfg.output_format == "json":
        print(json.dumps([{"code": d.code, "message": d.message,
                           "line": d.span[0], "col": d.span[1],
                           "severity": d.severity} for d in diags], indent=2))
    else:
        for d in diags:
            print(str(d))
        if wf is not None:
            print("%s: %d event(s), %d measure(s), %d rule(s)"
                  % (args.spec, len(wf.events), len(wf.measure_order),
                     len(wf.rule_ids())))
    return EXIT_OK if wf is not None else EXIT_VIOLATED


def _cmd_emit(args, cfg, wf):
    model = translate_spec(wf, cfg.tock_unit_factor)
    assertions = emit_assertions(model, conflict_pairs=overlapping_pairs(wf))
    text = emit_cspm(model, assertions)
    counts = emit_counts(model)
    summary = ("%(channels)d channel(s), %(datatypes)d datatype(s), "
               "%(constants)d constant(s), %(processes)d process(es)" % counts)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        print("wrote %s: %s" % (args.output, summary))
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return EXIT_OK


def _require_rules(wf, names):
    for r in names:
        if r not in wf.rule_ids():
            raise ConfigError("unknown rule %r" % r)


def _exit_for(reports):
    verdicts = [r.verdict for r in reports]
    if VIOLATED in verdicts:
        return EXIT_VIOLATED
    if INCONCLUSIVE in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _print_reports(cfg, reports):
    scale = None
    if cfg.tock_unit_factor != 1:
        scale = "time scale: 1 tock = %d seconds" % cfg.tock_unit_factor
    if cfg.output_format == "json":
        out = [r.to_json() for r in reports]
        if scale:
            for d in out:
                d["notes"].insert(0, scale)
        print(json.dumps(out, indent=2))
        return
    if scale:
        print(scale)
    for r in reports:
        print(r.summary_line())
        for note in r.notes:
            print("    %s" % note)


def _cmd_conflicts(args, cfg, wf):
    if args.rules and len(args.rules) != 2:
        raise ConfigError("conflicts expects zero or two rule names")
    _require_rules(wf, args.rules)
    model = translate_spec(wf, cfg.tock_unit_factor)
    econf = engine_config(cfg, wf)
    if args.rules:
        pairs = [tuple(args.rules)]
    else:
        pairs = overlapping_pairs(wf)
        if cfg.output_format != "json":
            ids = wf.rule_ids()
            total = len(ids) * (len(ids) - 1) // 2
            print("checking %d of %d pair(s); the rest share no events"
                  % (len(pairs), total))
            for (a, b) in pairs:
                print("    (%s, %s)" % (a, b))
    reports = [check_conflict(model, r1, r2, econf) for (r1, r2) in pairs]
    _print_reports(cfg, reports)
    return _exit_for(reports)


def _cmd_redundancy(args, cfg, wf):
    if args.rules and len(args.rules) != 2:
        raise ConfigError("redundancy expects zero or two rule names")
    _require_rules(wf, args.rules)
    model = translate_spec(wf, cfg.tock_unit_factor)
    econf = engine_config(cfg, wf)
    if args.rules:
        r1, r2 = args.rules
        directions = [(r1, r2), (r2, r1)]
    else:
        ids = wf.rule_ids()
        directions = []
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                directions.append((a, b))
                directions.append((b, a))
    reports = [redundancy_with_prechecks(model, r1, r2, econf)
               for (r1, r2) in directions]
    _print_reports(cfg, reports)
    return _exit_for(reports)


def _cmd_verify(args, cfg, wf):
    if args.rule != "all":
        _require_rules(wf, [args.rule])
    suv_env, agent = parse_tcsp(_read(args.model))
    model = translate_spec(wf, cfg.tock_unit_factor)
    econf = engine_config(cfg, wf)
    rules = wf.rule_ids() if args.rule == "all" else [args.rule]
    reports = [check_conformance(model, rid, suv_env, agent, econf)
               for rid in rules]
    if cfg.output_format != "json":
        print("agent process: %s" % agent)
    _print_reports(cfg, reports)
    return _exit_for(reports)


if __name__ == "__main__":
    sys.exit(main())
