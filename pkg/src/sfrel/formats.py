"""Text formats: system files, certificate files, JSON objects and DOT graphs.

System file grammar::

    system   := header (blank | comment | relation)*
    header   := "alphabet:" token (" " token)*
    relation := word "=" word
    comment  := "#" ...        (also allowed at the end of any line)

A word juxtaposes single-character letters; multi-character letters are
written inside ``[...]`` separated by spaces.  An empty side (or ``ε``,
or ``[]``) is the empty word.  Blank and comment lines may precede the
header.

Certificate file grammar (indices are 1-based, ``|`` separates the left
margin, the block and the right margin)::

    certificate := "order:" INT
                   ("block" INT ":" word "|" word "|" word)   one per block
                   ("u" INT ":" word)                         for 2 <= i <= n
                   ("v" INT ":" word)                         for 1 <= i <  n
"""

from __future__ import annotations

import json
import re

from .decide import Decision, Derivation, Stats, Verdict
from .errors import AlphabetError, FormatError, RelationError
from .lindecomp import LinearDecomposition
from .systems import ClassResult, Relation, RewriteSystem, Status, Step
from .words import EPSILON, Alphabet


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_system(text: str) -> RewriteSystem:
    alphabet = None
    relations = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        if alphabet is None:
            head, sep, rest = line.partition(":")
            if not sep or head.strip() != "alphabet":
                raise FormatError(f"line {lineno}: expected 'alphabet: <symbols>' header")
            try:
                alphabet = Alphabet(tuple(rest.split()))
            except AlphabetError as exc:
                raise FormatError(f"line {lineno}: {exc}") from None
            continue
        if line.count("=") != 1:
            raise FormatError(f"line {lineno}: expected '<word> = <word>'")
        left, right = line.split("=")
        try:
            u, v = alphabet.parse(left), alphabet.parse(right)
        except AlphabetError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        if u == v:
            raise RelationError(f"line {lineno}: identity relation {left.strip() or EPSILON} = {right.strip() or EPSILON}")
        relations.append(Relation(u, v))
    if alphabet is None:
        raise FormatError("missing 'alphabet:' header")
    try:
        return RewriteSystem(alphabet, tuple(relations))
    except RelationError as exc:
        raise RelationError(str(exc)) from None


def format_system(system: RewriteSystem) -> str:
    a = system.alphabet
    lines = ["alphabet: " + " ".join(a.letters)]
    for r in system.relations:
        lines.append(f"{a.format(r.lhs) or EPSILON} = {a.format(r.rhs) or EPSILON}")
    return "\n".join(lines) + "\n"


# -- certificates -------------------------------------------------------------

_BLOCK = re.compile(r"^block\s+(\d+)\s*:(.*)$")
_WITNESS = re.compile(r"^([uv])\s+(\d+)\s*:(.*)$")
_ORDER = re.compile(r"^order\s*:\s*(\d+)$")


def format_certificate(cert: LinearDecomposition, alphabet: Alphabet) -> str:
    f = alphabet.show
    n = cert.order
    lines = [f"order: {n}"]
    for i in range(1, n + 1):
        lines.append(f"block {i}: {f(cert.p(i))} | {f(cert.blocks[i - 1])} | {f(cert.q(i))}")
    for i in range(2, n + 1):
        lines.append(f"u {i}: {f(cert.u(i))}")
    for i in range(1, n):
        lines.append(f"v {i}: {f(cert.v(i))}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str, alphabet: Alphabet) -> LinearDecomposition:
    order = None
    blocks, us, vs = {}, {}, {}
    try:
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = _strip_comment(raw)
            if not line:
                continue
            if m := _ORDER.match(line):
                order = int(m.group(1))
            elif m := _BLOCK.match(line):
                fields = m.group(2).split("|")
                if len(fields) != 3:
                    raise FormatError(f"line {lineno}: a block row needs 'p | x | q'")
                blocks[int(m.group(1))] = tuple(alphabet.parse(s) for s in fields)
            elif m := _WITNESS.match(line):
                target = us if m.group(1) == "u" else vs
                target[int(m.group(2))] = alphabet.parse(m.group(3))
            else:
                raise FormatError(f"line {lineno}: unrecognized certificate row {line!r}")
    except AlphabetError as exc:
        raise FormatError(str(exc)) from None
    if order is None or order < 1:
        raise FormatError("certificate needs a positive 'order:' row")
    n = order
    for what, have, want in (("block", blocks, range(1, n + 1)), ("u", us, range(2, n + 1)),
                             ("v", vs, range(1, n))):
        if sorted(have) != list(want):
            raise FormatError(f"certificate rows '{what}' must cover indices {list(want)}, got {sorted(have)}")
    return LinearDecomposition(
        blocks=[blocks[i][1] for i in range(1, n + 1)],
        left_margins=[blocks[i][0] for i in range(1, n + 1)],
        right_margins=[blocks[i][2] for i in range(1, n + 1)],
        right_witnesses=[us[i] for i in range(2, n + 1)],
        left_witnesses=[vs[i] for i in range(1, n)],
    )


# -- JSON -------------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def class_result_to_json(result: ClassResult, alphabet: Alphabet) -> dict:
    return {
        "status": result.status.value,
        "members": [alphabet.format(m) for m in result.members],
        "expansions": result.expansions,
    }


def class_result_from_json(obj: dict, alphabet: Alphabet) -> ClassResult:
    try:
        return ClassResult(Status(obj["status"]), tuple(alphabet.parse(m) for m in obj["members"]),
                           int(obj["expansions"]))
    except (KeyError, ValueError, AlphabetError) as exc:
        raise FormatError(f"bad class result object: {exc}") from None


def _step_to_json(step: Step, system: RewriteSystem) -> dict:
    a = system.alphabet
    rel = system.relations[step.relation]
    src, dst = (rel.lhs, rel.rhs) if step.forward else (rel.rhs, rel.lhs)
    return {"relation": step.relation, "position": step.position,
            "direction": "forward" if step.forward else "backward",
            "from": a.format(src), "to": a.format(dst)}


def decision_to_json(decision: Decision, system: RewriteSystem) -> dict:
    a = system.alphabet
    witness = None
    if decision.witness is not None:
        u, s, v = decision.witness.square
        witness = {
            "derivation": [a.format(w) for w in decision.witness.words],
            "steps": [_step_to_json(st, system) for st in decision.witness.steps],
            "square": {"u": a.format(u), "s": a.format(s), "v": a.format(v)},
        }
    st = decision.stats
    return {
        "verdict": decision.verdict.value,
        "witness": witness,
        "stats": {"explored": st.explored, "expansions": st.expansions,
                  "completed": st.completed, "depth": st.depth},
        "class": [a.format(m) for m in decision.members],
        "diagnostic": decision.diagnostic,
    }


def decision_from_json(obj: dict, system: RewriteSystem) -> Decision:
    a = system.alphabet
    try:
        witness = None
        if obj["witness"] is not None:
            wj = obj["witness"]
            words = tuple(a.parse(w) for w in wj["derivation"])
            steps = tuple(Step(words[k + 1], sj["relation"], sj["position"], sj["direction"] == "forward")
                          for k, sj in enumerate(wj["steps"]))
            sq = wj["square"]
            witness = Derivation(words, steps, (a.parse(sq["u"]), a.parse(sq["s"]), a.parse(sq["v"])))
        sj = obj["stats"]
        return Decision(Verdict(obj["verdict"]), witness,
                        Stats(sj["explored"], sj["expansions"], sj["completed"], sj["depth"]),
                        tuple(a.parse(m) for m in obj["class"]), obj["diagnostic"])
    except (KeyError, ValueError, IndexError, AlphabetError) as exc:
        raise FormatError(f"bad decision object: {exc}") from None


def certificate_to_json(cert: LinearDecomposition, alphabet: Alphabet) -> dict:
    f = alphabet.format
    return {
        "order": cert.order,
        "blocks": [f(x) for x in cert.blocks],
        "left_margins": [f(p) for p in cert.left_margins],
        "right_margins": [f(q) for q in cert.right_margins],
        "right_witnesses": [f(u) for u in cert.right_witnesses],
        "left_witnesses": [f(v) for v in cert.left_witnesses],
    }


# -- DOT --------------------------------------------------------------------


def _dot_id(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def class_to_dot(members, edges, system: RewriteSystem, name: str = "class") -> str:
    """Derivation graph of a class: one node per member, one edge per rewrite.

    Each undirected rewrite is drawn once, from the shortlex-smaller word,
    labelled with the applied relation and position.
    """
    a = system.alphabet
    show = a.show
    members = list(members)
    inside = set(members)
    lines = [f"digraph {_dot_id(name)} {{", "  node [shape=box];"]
    for m in members:
        lines.append(f"  {_dot_id(show(m))};")
    seen = set()
    rows = []
    for src, step in edges:
        dst = step.target
        if dst not in inside or a.key(src) > a.key(dst):
            continue
        rel = system.relations[step.relation]
        lhs, rhs = (rel.lhs, rel.rhs) if step.forward else (rel.rhs, rel.lhs)
        label = f"{show(lhs)}→{show(rhs)} @{step.position}"
        k = (src, dst, label)
        if k in seen:
            continue
        seen.add(k)
        rows.append((a.key(src), a.key(dst), label, src, dst))
    for _, _, label, src, dst in sorted(rows):
        lines.append(f"  {_dot_id(show(src))} -> {_dot_id(show(dst))} [label={_dot_id(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
