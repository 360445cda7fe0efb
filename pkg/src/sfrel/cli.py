"""Command-line front end.

Every subcommand reads a system file (see :mod:`sfrel.formats`) and prints
a plain-text report, or a single JSON object with ``--json``.  Exit codes:

====  =========================================================
0     success; InSF; certificate valid; word in Lin; class in T_w
1     NotInSF; certificate invalid; word not in Lin; class not in T_w
2     Indeterminate (budget exhausted)
64    usage error
65    malformed input data (system, word or certificate)
66    input file cannot be read
69    operation not available for this system or word
70    internal invariant violated
====  =========================================================
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .closures import DEFAULT_CLOSURE_BUDGET, analyze, build_tau
from .decide import DEFAULT_BUDGET, Verdict, decide_sf_rel, decide_via_structure, thue_generate
from .errors import (
    AlphabetError,
    AnalysisStateError,
    ClassificationError,
    FormatError,
    IndeterminateError,
    InvalidCertificateError,
    InvariantViolation,
    PreconditionError,
    RelationError,
)
from .formats import (
    certificate_to_json,
    class_result_to_json,
    class_to_dot,
    decision_to_json,
    dumps,
    format_certificate,
    parse_certificate,
    parse_system,
)
from .lindecomp import is_lin, lin_enumerate, verify
from .maxlin import maximal_occurrences
from .systems import ClassResult, Exploration, Status, Tag, classify
from .words import Alphabet

EX_OK, EX_NEGATIVE, EX_INDETERMINATE = 0, 1, 2
EX_USAGE, EX_DATAERR, EX_NOINPUT, EX_UNAVAILABLE, EX_SOFTWARE = 64, 65, 66, 69, 70

_DATA_ERRORS = (FormatError, AlphabetError, RelationError, InvalidCertificateError)
_UNAVAILABLE = (ClassificationError, AnalysisStateError, PreconditionError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _non_negative(text):
    value = int(text) if text.lstrip("-").isdigit() else None
    if value is None or value < 0:
        raise argparse.ArgumentTypeError(f"must be a non-negative integer: {text!r}")
    return value


class _Out:
    """Collects the report; ``emit`` writes text or the JSON object."""

    def __init__(self, args):
        self.json = args.json
        self.lines: list[str] = []

    def line(self, text=""):
        self.lines.append(text)

    def emit(self, obj):
        if self.json:
            sys.stdout.write(dumps(obj) + "\n")
        elif self.lines:
            sys.stdout.write("\n".join(self.lines) + "\n")


def _words(alphabet: Alphabet, words) -> list[str]:
    return [alphabet.format(w) for w in alphabet.sorted(words)]


def _tau(system, budget):
    cls = classify(system)
    if cls.tag is not Tag.TWO_BLOCK:
        raise ClassificationError(f"this command needs a TwoBlock system, got {cls}")
    return build_tau(analyze(system, budget))


# -- subcommands ------------------------------------------------------------


def cmd_classify(args, system, out):
    cls = classify(system)
    a = system.alphabet
    blocks = [_words(a, b) for b in system.blocks]
    out.line(str(cls))
    for i, b in enumerate(blocks, 1):
        out.line(f"block {i}: " + " ".join(x or "ε" for x in b))
    out.emit({"result": {"class": cls.tag.value, "block_count": cls.block_count, "blocks": blocks,
                         "decidable": cls.decidable},
              "stats": {"relations": len(system.relations), "defining_words": len(system.defining_words)}})
    return EX_OK


def cmd_decide(args, system, out):
    w = system.alphabet.parse(args.word)
    d = decide_sf_rel(w, system, args.budget)
    a = system.alphabet
    out.line(d.verdict.value)
    if d.verdict is Verdict.IN_SF:
        out.line(f"class ({len(d.members)}): " + " ".join(a.show(m) for m in d.members))
    elif d.verdict is Verdict.NOT_IN_SF:
        out.line("derivation: " + " -> ".join(a.show(x) for x in d.witness.words))
        u, s, _ = d.witness.square
        out.line(f"square: ({a.show(s)})^2 at position {len(u)} of {a.show(d.witness.words[-1])}")
    else:
        out.line(d.diagnostic)
    st = d.stats
    out.line(f"explored {st.explored} words, {st.expansions} expansions, depth {st.depth}")
    out.emit(decision_to_json(d, system))
    return {Verdict.IN_SF: EX_OK, Verdict.NOT_IN_SF: EX_NEGATIVE, Verdict.INDETERMINATE: EX_INDETERMINATE}[d.verdict]


def cmd_class(args, system, out):
    w = system.alphabet.parse(args.word)
    ex = Exploration([w], system, args.budget)
    if args.dot:
        ex.record_edges()
    ex.run()
    status = Status.COMPLETE if ex.complete else Status.TRUNCATED
    result = ClassResult(status, tuple(ex.members()), ex.expansions)
    a = system.alphabet
    if args.dot:
        dot = class_to_dot(result.members, ex.edges, system)
        if args.dot == "-":
            sys.stdout.write(dot)
        else:
            Path(args.dot).write_text(dot, encoding="utf-8")
    out.line(f"{status.value} ({len(result.members)} words, {result.expansions} expansions)")
    for m in result.members:
        out.line(a.show(m))
    obj = class_result_to_json(result, a)
    out.emit({"result": obj, "stats": {"explored": len(result.members), "expansions": result.expansions,
                                       "depth": ex.depth}})
    return EX_OK if result.complete else EX_INDETERMINATE


def cmd_closure(args, system, out):
    an = analyze(system, args.budget)
    a = system.alphabet

    def side(defining, clo, closed):
        return {"defining": _words(a, defining), "closure": _words(a, clo.words),
                "status": clo.status.value, "closed_under_own_block": closed}

    result = {
        "outcome": an.outcome.value,
        "sigma": side(an.sigma_words, an.sigma_closure, an.sigma_closed_under_sigma),
        "rho": side(an.rho_words, an.rho_closure, an.rho_closed_under_rho),
        "closures_intersect": an.intersection_nonempty,
        "reduction": None,
    }
    out.line(an.outcome.value)
    for name in ("sigma", "rho"):
        s = result[name]
        out.line(f"{name} closure ({s['status']}, {len(s['closure'])} words): "
                 + " ".join(x or "ε" for x in s["closure"]))
        if s["closed_under_own_block"] is not None:
            out.line(f"{name} closed under its own block: {'yes' if s['closed_under_own_block'] else 'no'}")
    out.line(f"closures intersect: {'yes' if an.intersection_nonempty else 'no'}")
    if an.reduction is not None:
        red = an.reduction
        result["reduction"] = {
            "reason": red.reason.value,
            "relations": [[a.format(r.lhs), a.format(r.rhs)] for r in red.system.relations],
            "forbidden": _words(a, red.forbidden),
        }
        out.line(f"reduction: {red.reason.value}, {len(red.system.relations)} relations, "
                 f"forbidden factors: " + (" ".join(result["reduction"]["forbidden"]) or "none"))
    out.emit({"result": result, "stats": {"sigma_closure": len(an.sigma_closure.words),
                                          "rho_closure": len(an.rho_closure.words)}})
    return EX_OK


def cmd_lin(args, system, out):
    tau = _tau(system, args.closure_budget)
    w = system.alphabet.parse(args.word)
    v = is_lin(w, args.order, tau)
    a = system.alphabet
    if v.member:
        out.line(f"in Lin({args.order}), least order {v.order}")
        out.lines.extend(format_certificate(v.certificate, a).splitlines())
    else:
        out.line(f"not in Lin({args.order})")
    out.emit({"verdict": "member" if v.member else "non-member",
              "witness": certificate_to_json(v.certificate, a) if v.member else None,
              "stats": {"order": v.order, "bound": args.order}})
    return EX_OK if v.member else EX_NEGATIVE


def cmd_lin_enum(args, system, out):
    tau = _tau(system, args.closure_budget)
    words = _words(system.alphabet, lin_enumerate(args.order, tau))
    out.line(f"Lin({args.order}): {len(words)} words")
    out.lines.extend(x or "ε" for x in words)
    out.emit({"result": words, "stats": {"count": len(words), "order": args.order}})
    return EX_OK


def cmd_maxlin(args, system, out):
    tau = _tau(system, args.closure_budget)
    w = system.alphabet.parse(args.word)
    a = system.alphabet
    occs = maximal_occurrences(w, args.order, tau)
    rows = []
    for m in occs:
        o = m.occurrence
        rows.append({"start": o.start, "end": o.end, "base": a.format(o.base), "order": m.order})
        out.line(f"[{o.start}, {o.end}) {a.show(o.base)} order {m.order}")
    if not rows:
        out.line("no maximal occurrences")
    out.emit({"result": rows, "stats": {"count": len(rows), "order": args.order, "length": len(w)}})
    return EX_OK


def cmd_tw(args, system, out):
    w = system.alphabet.parse(args.word)
    sd = decide_via_structure(w, system, args.budget, args.closure_budget)
    if sd.unavailable:
        raise ClassificationError(sd.unavailable)
    verdict = sd.decision.verdict
    if verdict is not Verdict.IN_SF:
        raise PreconditionError(f"T_w needs a word square-free relative to the system; decide says {verdict.value}")
    rep = sd.report
    a = system.alphabet
    fact = rep.factorization
    members = _words(a, rep.tw)
    result = {
        "factorization": {"separators": [a.format(r) for r in fact.separators],
                          "bases": [a.format(x) for x in fact.bases], "orders": list(fact.orders)},
        "members": members,
        "class": [a.format(m) for m in sd.decision.members],
        "class_in_tw": rep.class_in_tw,
        "outside": [a.format(m) for m in rep.outside],
    }
    out.line("factorization: " + " ".join(
        f"{a.show(r)}" + (f" [{a.show(x)}:{n}]" if x is not None else "")
        for r, x, n in zip(fact.separators, list(fact.bases) + [None], list(fact.orders) + [None])))
    out.line(f"T_w ({len(members)}): " + " ".join(x or "ε" for x in members))
    out.line(f"class ({rep.class_size}) contained in T_w: {'yes' if rep.class_in_tw else 'no'}")
    out.emit({"result": result, "stats": {"tw_size": rep.tw_size, "class_size": rep.class_size}})
    return EX_OK if rep.class_in_tw else EX_NEGATIVE


def cmd_gen(args, out):
    alphabet = Alphabet(tuple(args.alphabet.split())) if args.alphabet else None
    w = thue_generate(args.length, alphabet)
    text = alphabet.format(w) if alphabet else w
    out.line(text)
    out.emit({"result": text, "stats": {"length": args.length}})
    return EX_OK


def cmd_verify_cert(args, system, out):
    tau = _tau(system, args.closure_budget)
    cert = parse_certificate(_read(args.certfile), system.alphabet)
    violations = verify(cert, tau)
    if violations:
        out.lines.extend(str(v) for v in violations)
    else:
        out.line("valid")
    out.emit({"verdict": "invalid" if violations else "valid",
              "result": [{"condition": v.condition, "index": v.index, "message": v.message}
                         for v in violations],
              "stats": {"order": cert.order, "violations": len(violations)}})
    return EX_NEGATIVE if violations else EX_OK


# -- wiring -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sfrel", description="Square-free words relative to string rewriting systems.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help, word=False, budget=None, closure=False, order=False):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("system", help="system file ('-' for standard input)")
        if word:
            sp.add_argument("word", help="input word ('ε' or '' for the empty word)")
        if budget is not None:
            sp.add_argument("--budget", type=_positive, default=budget, help=f"word budget (default {budget})")
        if closure:
            sp.add_argument("--closure-budget", type=_positive, default=DEFAULT_CLOSURE_BUDGET,
                            help=f"closure budget (default {DEFAULT_CLOSURE_BUDGET})")
        if order:
            sp.add_argument("--order", type=_positive, required=True, help="block bound n")
        sp.add_argument("--json", action="store_true", help="emit one JSON object")
        sp.set_defaults(fn=fn)
        return sp

    add("classify", cmd_classify, "report the block structure")
    add("decide", cmd_decide, "decide square-freeness relative to the system", word=True, budget=DEFAULT_BUDGET)
    sp = add("class", cmd_class, "enumerate the class of a word", word=True, budget=DEFAULT_BUDGET)
    sp.add_argument("--dot", metavar="FILE", help="write the derivation graph in DOT format ('-' for stdout)")
    add("closure", cmd_closure, "closure analysis of a TwoBlock system", budget=DEFAULT_CLOSURE_BUDGET)
    add("lin", cmd_lin, "search a linear decomposition", word=True, closure=True, order=True)
    add("lin-enum", cmd_lin_enum, "list Lin(n)", closure=True, order=True)
    add("maxlin", cmd_maxlin, "maximal Lin occurrences in a word", word=True, closure=True, order=True)
    add("tw", cmd_tw, "T_w and its containment of the class", word=True, budget=DEFAULT_BUDGET, closure=True)
    sp = add("verify-cert", cmd_verify_cert, "check a linear decomposition certificate", closure=True)
    sp.add_argument("certfile", help="certificate file ('-' for standard input)")

    g = sub.add_parser("gen", help="print a square-free word over three letters")
    g.add_argument("--length", type=_non_negative, required=True)
    g.add_argument("--alphabet", help="three space-separated letters replacing a b c")
    g.add_argument("--json", action="store_true", help="emit one JSON object")
    g.set_defaults(fn=None)
    return p


def _fail(code, message):
    sys.stderr.write(f"sfrel: error: {message}\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _fail(EX_USAGE, exc)
    out = _Out(args)
    try:
        if args.command == "gen":
            return cmd_gen(args, out)
        system = parse_system(_read(args.system))
        return args.fn(args, system, out)
    except OSError as exc:
        return _fail(EX_NOINPUT, f"cannot access {exc.filename or 'input'}: {exc.strerror or exc}")
    except _DATA_ERRORS as exc:
        return _fail(EX_DATAERR, exc)
    except _UNAVAILABLE as exc:
        return _fail(EX_UNAVAILABLE, exc)
    except IndeterminateError as exc:
        return _fail(EX_INDETERMINATE, exc)
    except InvariantViolation as exc:
        return _fail(EX_SOFTWARE, f"internal invariant violated: {exc}")
    except ValueError as exc:
        return _fail(EX_USAGE, exc)


if __name__ == "__main__":
    sys.exit(main())
