"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 cap exceeded,
3 a theorem verdict failed (``verify`` only).
"""

from __future__ import annotations

import argparse
import sys
import warnings
from typing import Optional, Sequence

from . import analysis, dynamics, network, render, semantics
from .errors import MAX_ATOMS_2V, MAX_ATOMS_3V, CapExceeded, DatalogBNError
from .program import GroundProgram, atom_dependency_graph, format_program, ground, parse

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3

SEMANTICS = ("supported", "supported-partial", "stable", "stable-partial",
             "regular", "well-founded")
TG_KINDS = ("stable", "supported", "sync", "async")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_program(path: str) -> GroundProgram:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return ground(parse(text))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"))
    common.add_argument("--max-atoms-2v", type=int, default=MAX_ATOMS_2V, metavar="N",
                        help="cap for 2^n scans (default %(default)s)")
    common.add_argument("--max-atoms-3v", type=int, default=MAX_ATOMS_3V, metavar="N",
                        help="cap for 3^n scans (default %(default)s)")

    p = _Parser(prog="datalog-bn",
                description="Datalog programs with negation as Boolean networks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help, program=True):
        s = sub.add_parser(name, help=help, parents=[common])
        if program:
            s.add_argument("program", help="program file (.dlg), or - for stdin")
        return s

    cmd("ground", "print the ground instantiation")
    s = cmd("graph", "signed dependency graphs")
    s.add_argument("--which", choices=("adg", "ig", "syng"), default="adg",
                   help="atom dependency, influence or syntactic influence graph")
    cmd("encode", "print the encoded Boolean network")
    s = cmd("models", "enumerate models")
    s.add_argument("--semantics", choices=SEMANTICS, default="stable")
    s = cmd("trap-spaces", "enumerate trap spaces")
    s.add_argument("--kind", choices=("stable", "supported", "network"), default="stable")
    s.add_argument("--minimal", action="store_true", help="only the minimal ones")
    s = cmd("classes", "strict classes of a transition graph")
    s.add_argument("--kind", choices=("stable", "supported"), default="stable")
    s = cmd("stg", "transition graphs")
    s.add_argument("--kind", choices=TG_KINDS, default="stable")
    s.add_argument("--labels", choices=("bits", "sets"), default=None,
                   help="DOT node labels (default: sets for program graphs, bits for network STGs)")
    cmd("analyze", "structure, model counts and bounds")
    cmd("verify", "check every applicable theorem by enumeration")
    s = cmd("probe", "search random programs for conjecture counterexamples", program=False)
    s.add_argument("--atoms", type=int, default=5)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    return p


DEFAULT_FORMAT = {"ground": "text", "graph": "dot", "encode": "text", "models": "text",
                  "trap-spaces": "text", "classes": "text", "stg": "dot",
                  "analyze": "json", "verify": "json", "probe": "json"}

ALLOWED_FORMATS = {"graph": ("text", "json", "dot"), "stg": ("text", "json", "dot")}


# ------------------------------------------------------------------ commands

def _ground(g, args):
    if args.format == "json":
        return render.dumps(render.program_json(g))
    return format_program(g)


def _graph(g, args):
    if args.which == "adg":
        sg = atom_dependency_graph(g)
    elif args.which == "ig":
        sg = network.influence_graph(network.encode(g))
    else:
        sg = network.syntactic_influence_graph(network.encode(g))
    if args.format == "dot":
        return render.signed_graph_dot(sg, args.which.upper())
    if args.format == "json":
        return render.dumps(render.graph_json(sg))
    return render.graph_text(sg)


def _encode(g, args):
    f = network.encode(g)
    if args.format == "json":
        return render.dumps(render.network_json(f))
    return str(f)


def _models(g, args):
    c2, c3 = args.max_atoms_2v, args.max_atoms_3v
    sem = args.semantics
    if sem == "supported":
        ms = semantics.supported_models(g, c2)
    elif sem == "supported-partial":
        ms = semantics.supported_partial_models(g, c3)
    elif sem == "stable":
        ms = semantics.stable_models(g, c2)
    elif sem == "stable-partial":
        ms = semantics.stable_partial_models(g, c3)
    elif sem == "regular":
        ms = semantics.regular_models(g, c3)
    else:
        ms = [semantics.well_founded_model(g, c3)]
    if args.format == "json":
        return render.dumps({"semantics": sem, "atoms": [str(a) for a in g.atoms],
                             "models": render.interpretations_json(ms)})
    return "".join(m.pretty() + "\n" for m in ms)


def _trap_spaces(g, args):
    c3 = args.max_atoms_3v
    if args.kind == "network":
        f = network.encode(g)
        spaces = network.minimal_trap_spaces(f, c3) if args.minimal else network.trap_spaces(f, c3)
    elif args.minimal:
        spaces = dynamics.minimal_trap_spaces_of(g, args.kind, c3)
    else:
        spaces = dynamics.trap_spaces_of(g, args.kind, c3)
    if args.format == "json":
        return render.dumps({"kind": args.kind, "minimal": args.minimal,
                             "atoms": [str(a) for a in g.atoms],
                             "trap_spaces": render.interpretations_json(spaces)})
    return "".join(s.render() + "\n" for s in spaces)


def _classes(g, args):
    tg = dynamics.transition_graph(g, args.kind, args.max_atoms_2v)
    classes = dynamics.strict_classes(tg)
    if args.format == "json":
        return render.dumps({"kind": args.kind, "atoms": [str(a) for a in g.atoms],
                             "classes": [render.states_json(tg, c) for c in classes]})
    return "".join(render.class_text(tg, c) + "\n" for c in classes)


def _stg(g, args):
    c2 = args.max_atoms_2v
    if args.kind in ("sync", "async"):
        f = network.encode(g)
        tg = network.sync_stg(f, c2) if args.kind == "sync" else network.async_stg(f, c2)
        boxed = {s for a in network.attractors(tg) for s in a}
        labels = args.labels or "bits"
    else:
        tg = dynamics.transition_graph(g, args.kind, c2)
        boxed = {s for s in range(len(tg)) if tg.successor(s) == s}
        labels = args.labels or "sets"
    if args.format == "json":
        return render.dumps(render.transition_graph_json(tg))
    if args.format == "text":
        return render.transition_graph_text(tg)
    return render.transition_graph_dot(tg, boxed, labels)


def _analyze(g, args):
    report = analysis.analyze(g, args.max_atoms_2v, args.max_atoms_3v).as_dict()
    if args.format == "json":
        return render.dumps(report)
    lines = [f"atoms: {' '.join(report['atoms'])}",
             f"rules: {report['rules']}",
             f"tight: {report['tight']}",
             f"uni-rule: {report['uni_rule']}",
             f"negative: {report['negative']}",
             f"odd cycle: {report['has_odd_cycle']}",
             f"even cycle: {report['has_even_cycle']}",
             f"even FVS: {render.atom_set_label(report['even_fvs'])}"]
    if report["delocalizing_free_fvs"] is not None:
        lines.append(f"delocalizing-free even FVS: "
                     f"{render.atom_set_label(report['delocalizing_free_fvs'])}")
    for c in report["cycles"]:
        lines.append(f"cycle {c['cycle']} ({c['parity']})")
    for k, v in report["counts"].items():
        lines.append(f"count {k}: {v}")
    for b in report["bounds"]:
        if not b["applicable"]:
            continue
        tag = "reference " if b["reference"] else ""
        lines.append(f"{tag}bound {b['id']}: {b['actual']} <= {b['expression']} "
                     f"({'holds' if b['holds'] else 'VIOLATED'})")
    return "\n".join(lines) + "\n"


def verify_report(g: GroundProgram, max_atoms_2v: int = MAX_ATOMS_2V,
                  max_atoms_3v: int = MAX_ATOMS_3V) -> dict:
    ctx = analysis.Context(g, max_atoms_2v, max_atoms_3v)
    verdicts = analysis.verify_theorems(g, ctx=ctx)
    report = analysis.analyze(g, ctx=ctx)
    hypotheses = {"tight": ctx.tight, "negative": ctx.negative, "uni-rule": ctx.uni_rule,
                  "consistent-bodies": ctx.consistent_bodies,
                  "odd-cycle": ctx.odd, "even-cycle": ctx.even}
    return {"program": format_program(g),
            "hypotheses": [{"name": k, "holds": v} for k, v in hypotheses.items()],
            "verdicts": [v.as_dict() for v in verdicts],
            "bounds": report.bounds,
            "counts": report.counts,
            "observations": analysis.observations(g, ctx)}


def _verify(g, args):
    report = verify_report(g, args.max_atoms_2v, args.max_atoms_3v)
    failed = any(v["verdict"] == "fail" for v in report["verdicts"])
    if args.format == "json":
        out = render.dumps(report)
    else:
        out = "".join(f"{v['verdict']:4} {v['id']}\n" for v in report["verdicts"])
    return out, EXIT_VERIFY if failed else EXIT_OK


def _probe(args):
    config = analysis.GeneratorConfig(atoms=args.atoms)
    try:
        config.validate()
    except DatalogBNError as e:
        raise UsageError(str(e)) from None
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    report = analysis.probe_conjectures(config, args.trials, args.seed)
    if args.format == "json":
        return render.dumps(report)
    lines = [f"trials: {report['trials']} (seed {report['seed']})"]
    for c in report["conjectures"]:
        lines.append(f"{c['id']}: applicable {c['applicable']} (nontrivial {c['nontrivial']}), "
                     f"confirmed {c['confirmed']}, counterexamples {len(c['counterexamples'])}")
    return "\n".join(lines) + "\n"


COMMANDS = {"ground": _ground, "graph": _graph, "encode": _encode, "models": _models,
            "trap-spaces": _trap_spaces, "classes": _classes, "stg": _stg,
            "analyze": _analyze, "verify": _verify}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format or DEFAULT_FORMAT[args.command]
        if fmt == "dot" and args.command not in ALLOWED_FORMATS:
            raise UsageError(f"--format dot is not available for {args.command}")
        args.format = fmt
        code = EXIT_OK
        if args.command == "probe":
            text = _probe(args)
        else:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                g = _read_program(args.program)
            for w in caught:
                err.write(f"warning: {w.message}\n")
            result = COMMANDS[args.command](g, args)
            text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
        out.write(text)
        return code
    except UsageError as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except CapExceeded as e:
        err.write(f"error: {e}\n")
        return EXIT_CAP
    except DatalogBNError as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
