"""Command-line driver: ``numsys <command> ...``; results go to stdout as JSON."""

from __future__ import annotations

import argparse
import json
import os
import sys

from numsys import automata, experiments, positional, series, transducer
from numsys.errors import GoldenMismatch, NumsysError
from numsys.languages import EXAMPLES
from numsys.numeration import make_system, progression_automaton, representation, value

EXIT_OK, EXIT_ERROR, EXIT_VERDICT = 0, 1, 2


def _load_automaton(source: str) -> automata.OrderedDfa:
    """A JSON file path, or the name of a built-in example language."""
    if os.path.exists(source):
        return automata.load_dfa(source)
    if source in EXAMPLES:
        return EXAMPLES[source]()
    raise FileNotFoundError(f"{source!r} is neither a file nor one of {sorted(EXAMPLES)}")


def _word_out(word):
    return word if isinstance(word, str) else " ".join(word)


def _digits_arg(text: str) -> list:
    text = text.strip()
    return [int(d) for d in text.split(",")] if text else []


def cmd_rank(args):
    ns = make_system(_load_automaton(args.automaton))
    return {"word": args.word, "value": value(ns, args.word)}


def cmd_unrank(args):
    ns = make_system(_load_automaton(args.automaton))
    return {"value": args.x, "word": _word_out(representation(ns, args.x))}


def cmd_counts(args):
    dfa = automata.minimize(_load_automaton(args.automaton))
    table = automata.CountTable(dfa)
    state = dfa.initial if args.state is None else args.state
    if not 0 <= state < dfa.n_states:
        raise ValueError(f"state {state} out of range 0..{dfa.n_states - 1}")
    return {
        "state": state,
        "u": [table.u(state, n) for n in range(args.max + 1)],
        "v": [table.v(state, n) for n in range(args.max + 1)],
    }


def cmd_classify(args):
    dfa = automata.minimize(_load_automaton(args.automaton))
    growth = automata.classify_growth(dfa)
    out = {
        "states": dfa.n_states,
        "growth": growth.kind,
        "degree": growth.degree,
        "finite": growth.finite,
    }
    if not growth.finite:
        out["recurrence"] = list(automata.common_recurrence(dfa))
    return out


def cmd_series(args):
    ns = make_system(_load_automaton(args.automaton))
    rep = series.build_series_representation(ns)
    if args.mod is not None:
        rep = series.reduce_mod(rep, args.mod)
    doc = rep.to_json()
    if args.dump:
        with open(args.dump, "w") as fh:
            json.dump(doc, fh)
    out = {"dim": rep.dim, "ring": rep.ring}
    if args.word is not None:
        out["word"] = args.word
        out["value"] = series.evaluate(rep, args.word)
    if not args.dump and args.word is None:
        out["representation"] = doc
    return out


def cmd_progression(args):
    ns = make_system(_load_automaton(args.automaton))
    dfa = progression_automaton(ns, args.p, args.q)
    if args.dump:
        automata.save_dfa(dfa, args.dump)
    out = {"p": args.p, "q": args.q, "states": dfa.n_states}
    if not args.dump:
        out["automaton"] = dfa.to_json()
    return out


def cmd_positional(args):
    with open(args.system) as fh:
        ps = positional.PositionalSystem.from_json(json.load(fh))
    out = {"system": ps.to_json(), "digit_bound": ps.digit_bound}
    if args.op == "pi":
        out["value"] = positional.pi_U(ps, _digits_arg(args.arg))
    elif args.op == "rho":
        out["digits"] = list(positional.rho_U(ps, int(args.arg)).digits)
    else:
        out["digits"] = list(positional.normalize(ps, _digits_arg(args.arg)).digits)
    if args.pisot:
        out["pisot"] = positional.pisot_check(ps.recurrence).to_json()
    return out


def cmd_transduce(args):
    ns = make_system(_load_automaton(args.automaton))
    dec = transducer.solve_decomposition(ns)
    t = transducer.build_transducer(ns, dec)
    if args.dump:
        with open(args.dump, "w") as fh:
            json.dump(t.to_json(), fh)
    out = {"decomposition": dec.to_json(), "states": t.n_states, "B": sorted(t.digits), "T": sorted(t.remainders)}
    if args.word is not None:
        g = transducer.apply_transducer(t, args.word)
        out["word"] = args.word
        out["digits"] = list(g.digits)
        out["value"] = positional.pi_U(dec.U, g)
        out["canonical"] = list(transducer.convert_representation(ns, dec, t, args.word).digits)
    return out


def cmd_experiment(args):
    if args.which == "table1":
        report = experiments.table1_experiment(n_max=args.n_max or 21)
    else:
        if not args.automaton:
            raise ValueError(f"experiment {args.which} needs --automaton")
        ns = make_system(_load_automaton(args.automaton))
        if args.which == "mult":
            report = experiments.multiplication_experiment(
                ns, args.lam, n_max=args.n_max or 400, gamma_max=args.gamma_max
            )
        else:
            report = experiments.convergence_experiment(ns, n_max=args.n_max or 2000)
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="numsys", description="Abstract numeration systems on regular languages.")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = parser.add_subparsers(dest="command", required=True)
    auto_help = "automaton JSON file or built-in example name (" + ", ".join(sorted(EXAMPLES)) + ")"

    p = sub.add_parser("rank", help="genealogical rank of a word")
    p.add_argument("automaton", help=auto_help)
    p.add_argument("word")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("unrank", help="word of a given rank")
    p.add_argument("automaton", help=auto_help)
    p.add_argument("x", type=int)
    p.set_defaults(func=cmd_unrank)

    p = sub.add_parser("counts", help="u_n and v_n for one state")
    p.add_argument("automaton", help=auto_help)
    p.add_argument("--state", type=int, default=None, help="state of the minimal automaton (default: initial)")
    p.add_argument("--max", type=int, default=10)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("classify", help="growth class and common recurrence")
    p.add_argument("automaton", help=auto_help)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("series", help="linear representation of the value series")
    p.add_argument("automaton", help=auto_help)
    p.add_argument("--mod", type=int, default=None)
    p.add_argument("--dump", default=None, help="write the representation JSON here")
    p.add_argument("--word", default=None, help="evaluate the representation on this word")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("progression", help="automaton for the representations of p + qN")
    p.add_argument("automaton", help=auto_help)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--dump", default=None)
    p.set_defaults(func=cmd_progression)

    p = sub.add_parser("positional", help="positional system operations")
    p.add_argument("system", help='JSON {"recurrence": [...], "initial": [...], "horizon": N}')
    p.add_argument("op", choices=["pi", "rho", "normalize"])
    p.add_argument("arg", help="comma-separated digits (pi, normalize) or an integer (rho)")
    p.add_argument("--pisot", action="store_true", help="also report the Pisot check")
    p.set_defaults(func=cmd_positional)

    p = sub.add_parser("transduce", help="digit transducer into the anchored positional system")
    p.add_argument("automaton", help=auto_help)
    p.add_argument("--dump", default=None)
    p.add_argument("--word", default=None)
    p.set_defaults(func=cmd_transduce)

    p = sub.add_parser("experiment", help="reproducible experiments")
    p.add_argument("which", choices=["table1", "mult", "convergence"])
    p.add_argument("--automaton", default=None, help=auto_help)
    p.add_argument("--lambda", dest="lam", type=int, default=2)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--gamma-max", type=int, default=64)
    p.set_defaults(func=cmd_experiment)
    return parser


def _emit(obj, pretty: bool, stream=None) -> None:
    stream = stream or sys.stdout
    if isinstance(obj, experiments.ExperimentReport):
        text = obj.dumps(pretty)
    else:
        text = json.dumps(obj, sort_keys=True, indent=2 if pretty else None)
    stream.write(text + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except GoldenMismatch as exc:
        report = getattr(exc, "report", None)
        _emit(report if report is not None else {"error": "GoldenMismatch", "message": str(exc)}, args.pretty)
        return EXIT_VERDICT
    except (NumsysError, ValueError, KeyError, OSError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.pretty, sys.stderr)
        return EXIT_ERROR
    _emit(result, args.pretty)
    if isinstance(result, experiments.ExperimentReport) and result.verdict == experiments.ANOMALY:
        return EXIT_VERDICT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
