"""Proof files: a JSON envelope holding the signature and the proof tree.

Node format: {"rule": ..., "params": {...}, "conclusion": ..., "premisses": [...]}.
Sequents serialize gamma/delta as arrays in canonical order; formulae and
terms are tagged objects.  The envelope carries the predicate polarities so
a proof file is self-contained (cut elimination needs them even without the
originating problem file).  Round-trips are exact: load(dump(p)) == p.
"""

from __future__ import annotations

import json

from .kernel import Focused, Proof, Sequent, TheoryRecord, Unfocused
from .syntax import (
    NEGATIVE, POSITIVE,
    AndN, AndP, App, Exists, Forall, Formula, IntConst, Lit, Literal, OrN,
    OrP, Plus, PolarityTable, ScalarMul, Term, Var, literal_key, mset,
)

FORMAT = "lkt-proof/1"


class ProofFormatError(Exception):
    pass


# ---------------------------------------------------------------------------
# Terms / literals / formulae

def term_to_json(t: Term):
    match t:
        case Var(n):
            return {"var": n}
        case App(f, args):
            return {"fun": f, "args": [term_to_json(a) for a in args]}
        case IntConst(v):
            return {"int": v}
        case Plus(a, b):
            return {"plus": [term_to_json(a), term_to_json(b)]}
        case ScalarMul(c, b):
            return {"mul": [c, term_to_json(b)]}
    raise ProofFormatError("not a term: %r" % (t,))


def term_from_json(j) -> Term:
    match j:
        case {"var": n}:
            return Var(n)
        case {"fun": f, "args": args}:
            return App(f, tuple(term_from_json(a) for a in args))
        case {"int": v}:
            return IntConst(v)
        case {"plus": [a, b]}:
            return Plus(term_from_json(a), term_from_json(b))
        case {"mul": [c, b]}:
            return ScalarMul(c, term_from_json(b))
    raise ProofFormatError("bad term: %r" % (j,))


def literal_to_json(l: Literal):
    return {"pred": l.pred, "args": [term_to_json(a) for a in l.args],
            "neg": l.negated}


def literal_from_json(j) -> Literal:
    try:
        return Literal(j["pred"], tuple(term_from_json(a) for a in j["args"]),
                       bool(j["neg"]))
    except (KeyError, TypeError) as e:
        raise ProofFormatError("bad literal: %r" % (j,)) from e


_CONN = {AndP: "and+", AndN: "and-", OrP: "or+", OrN: "or-"}
_CONN_INV = {v: k for k, v in _CONN.items()}


def formula_to_json(f: Formula):
    match f:
        case Lit(l):
            return {"lit": literal_to_json(l)}
        case AndP(a, b) | AndN(a, b) | OrP(a, b) | OrN(a, b):
            return {_CONN[type(f)]: [formula_to_json(a), formula_to_json(b)]}
        case Exists(x, b):
            return {"exists": [x, formula_to_json(b)]}
        case Forall(x, b):
            return {"forall": [x, formula_to_json(b)]}
    raise ProofFormatError("not a formula: %r" % (f,))


def formula_from_json(j) -> Formula:
    if not isinstance(j, dict) or len(j) != 1:
        raise ProofFormatError("bad formula: %r" % (j,))
    (tag, body), = j.items()
    if tag == "lit":
        return Lit(literal_from_json(body))
    if tag in _CONN_INV:
        return _CONN_INV[tag](formula_from_json(body[0]), formula_from_json(body[1]))
    if tag == "exists":
        return Exists(body[0], formula_from_json(body[1]))
    if tag == "forall":
        return Forall(body[0], formula_from_json(body[1]))
    raise ProofFormatError("bad formula tag: %r" % (tag,))


# ---------------------------------------------------------------------------
# Sequents and proof nodes

def sequent_to_json(s: Sequent):
    if isinstance(s, Focused):
        return {"gamma": [formula_to_json(f) for f in s.gamma],
                "focus": formula_to_json(s.focus)}
    return {"gamma": [formula_to_json(f) for f in s.gamma],
            "delta": [formula_to_json(f) for f in s.delta]}


def sequent_from_json(j) -> Sequent:
    try:
        gamma = mset(formula_from_json(f) for f in j["gamma"])
        if "focus" in j:
            return Focused(gamma, formula_from_json(j["focus"]))
        return Unfocused(gamma, mset(formula_from_json(f) for f in j["delta"]))
    except (KeyError, TypeError) as e:
        raise ProofFormatError("bad sequent: %r" % (j,)) from e


def _record_to_json(r: TheoryRecord):
    lits = sorted(r.literals, key=literal_key)
    return {"literals": [literal_to_json(l) for l in lits], "verdict": r.verdict}


def _record_from_json(j) -> TheoryRecord:
    return TheoryRecord(frozenset(literal_from_json(l) for l in j["literals"]),
                        j["verdict"])


def proof_to_json(pf: Proof):
    params = {}
    if pf.witness is not None:
        params["witness"] = term_to_json(pf.witness)
    if pf.eigen is not None:
        params["eigen"] = pf.eigen
    if pf.position is not None:
        params["position"] = pf.position
    if pf.selected is not None:
        params["selected"] = formula_to_json(pf.selected)
    if pf.record is not None:
        params["record"] = _record_to_json(pf.record)
    if pf.lit is not None:
        params["lit"] = literal_to_json(pf.lit)
    if pf.lits is not None:
        params["lits"] = [literal_to_json(l) for l in pf.lits]
    return {"rule": pf.rule,
            "params": params,
            "conclusion": sequent_to_json(pf.conclusion),
            "premisses": [proof_to_json(p) for p in pf.premisses]}


def proof_from_json(j) -> Proof:
    try:
        params = j["params"]
        return Proof(
            j["rule"],
            sequent_from_json(j["conclusion"]),
            tuple(proof_from_json(p) for p in j["premisses"]),
            witness=term_from_json(params["witness"]) if "witness" in params else None,
            eigen=params.get("eigen"),
            position=params.get("position"),
            selected=formula_from_json(params["selected"]) if "selected" in params else None,
            record=_record_from_json(params["record"]) if "record" in params else None,
            lit=literal_from_json(params["lit"]) if "lit" in params else None,
            lits=tuple(literal_from_json(l) for l in params["lits"])
                 if "lits" in params else None,
        )
    except (KeyError, TypeError) as e:
        raise ProofFormatError("bad proof node: %r" % (e,)) from e


# ---------------------------------------------------------------------------
# Envelope

def signature_to_json(tbl: PolarityTable):
    return {"preds": {n: {"arity": a, "polarity": p}
                      for n, (a, p) in sorted(tbl.preds.items())},
            "funs": {n: a for n, a in sorted(tbl.funs.items())}}


def signature_from_json(j) -> PolarityTable:
    try:
        preds = {n: (d["arity"], d["polarity"]) for n, d in j["preds"].items()}
        for n, (a, p) in preds.items():
            if p not in (POSITIVE, NEGATIVE):
                raise ProofFormatError("bad polarity for %s: %r" % (n, p))
        return PolarityTable(preds, dict(j["funs"]))
    except (KeyError, TypeError) as e:
        raise ProofFormatError("bad signature: %r" % (j,)) from e


def dump_proof(pf: Proof, tbl: PolarityTable) -> str:
    doc = {"format": FORMAT,
           "signature": signature_to_json(tbl),
           "proof": proof_to_json(pf)}
    return json.dumps(doc, indent=1) + "\n"


def load_proof(text: str):
    """Returns (proof, signature table)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProofFormatError("not valid JSON: %s" % e) from e
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise ProofFormatError("not a %s file" % FORMAT)
    return proof_from_json(doc["proof"]), signature_from_json(doc["signature"])


# ---------------------------------------------------------------------------
# Human-readable proof trees

def format_proof(pf: Proof, indent: int = 0) -> str:
    from .kernel import format_sequent
    pad = "  " * indent
    bits = [pf.rule]
    if pf.witness is not None:
        bits.append("witness=%s" % pf.witness)
    if pf.eigen is not None:
        bits.append("eigen=%s" % pf.eigen)
    if pf.lit is not None:
        bits.append("lit=%s" % pf.lit)
    lines = ["%s%s  [%s]" % (pad, format_sequent(pf.conclusion), " ".join(bits))]
    for p in pf.premisses:
        lines.append(format_proof(p, indent + 1))
    return "\n".join(lines)
