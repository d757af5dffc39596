"""Plain-text instance formats.

One record per line, ``#`` starts a comment.  The header names the format::

    vcsp <n> <m>      then m lines   <pred-name> <u> <v> <w>
    wcnf <n> <m>      then m lines   <w> <lit> ... <lit> 0
    2lin <n> <m>      then m lines   <u> <v> <rhs> <w>

Variables are 0-based in ``vcsp`` and ``2lin`` files; ``wcnf`` literals are
DIMACS style (1-based, negative for negation).  Weights are printed with
``repr`` so that printing and parsing round-trips exactly.
"""
from __future__ import annotations

import re
from typing import Union

from .applications import Equation, TwoLinSystem, TwoSatClause, TwoSatFormula
from .double_cover import DoubleCoverGraph, vertex_label
from .hypergraph import Clause, KSatFormula
from .model import Constraint, VcspInstance
from .predicates import Predicate

Instance = Union[VcspInstance, TwoSatFormula, TwoLinSystem, KSatFormula]

FORMATS = ("vcsp", "2sat", "ksat", "2lin")
_TOKEN = re.compile(r"\S+")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if tokens:
            yield lineno, tokens


def _int(tok, lineno, what):
    text, col = tok
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"malformed {what} {text!r}", lineno, col) from None


def _weight(tok, lineno):
    text, col = tok
    try:
        w = float(text)
    except ValueError:
        raise ParseError(f"malformed weight {text!r}", lineno, col) from None
    if not w >= 0 or w == float("inf"):
        raise ParseError(f"weight must be finite and nonnegative, got {text}", lineno, col)
    return w


def _var(tok, lineno, n):
    v = _int(tok, lineno, "variable index")
    if not 0 <= v < n:
        raise ParseError(f"variable index {v} out of range [0, {n})", lineno, tok[1])
    return v


def _literal(tok, lineno, n):
    lit = _int(tok, lineno, "literal")
    if lit == 0 or abs(lit) > n:
        raise ParseError(f"literal {lit} out of range for {n} variables", lineno, tok[1])
    return lit


def parse_instance(text: str, kind: str | None = None) -> Instance:
    """Parse any of the supported formats.

    ``wcnf`` files become a :class:`TwoSatFormula` when every clause has one
    or two literals and ``kind`` is not ``"ksat"``; otherwise a
    :class:`KSatFormula`.
    """
    records = list(_records(text))
    if not records:
        raise ParseError("empty input, expected a header line", 1)
    lineno, header = records[0]
    tag = header[0][0]
    if tag not in ("vcsp", "wcnf", "2lin"):
        raise ParseError(f"unknown format {tag!r}; expected vcsp, wcnf or 2lin", lineno, header[0][1])
    if len(header) != 3:
        raise ParseError(f"header must read '{tag} <n> <m>'", lineno, header[0][1])
    n = _int(header[1], lineno, "variable count")
    m = _int(header[2], lineno, "record count")
    if n < 0 or m < 0:
        raise ParseError("counts must be nonnegative", lineno, header[1][1])
    body = records[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else lineno + 1)
        raise ParseError(f"header declares {m} records, found {len(body)}", where)

    if tag == "vcsp":
        if kind not in (None, "vcsp"):
            raise ParseError(f"file is vcsp, not {kind}", lineno)
        return VcspInstance(n, tuple(_vcsp_record(r, n) for r in body))
    if tag == "2lin":
        if kind not in (None, "2lin"):
            raise ParseError(f"file is 2lin, not {kind}", lineno)
        return TwoLinSystem(n, tuple(_2lin_record(r, n) for r in body))
    if kind not in (None, "2sat", "ksat"):
        raise ParseError(f"file is wcnf, not {kind}", lineno)
    clauses = [_wcnf_record(r, n) for r in body]
    if kind == "2sat" or (kind is None and all(1 <= len(c.literals) <= 2 for c in clauses)):
        out = []
        for (ln, _), c in zip(body, clauses):
            if not 1 <= len(c.literals) <= 2:
                raise ParseError("2SAT clauses need one or two literals", ln)
            lits = c.literals if len(c.literals) == 2 else c.literals * 2
            out.append(TwoSatClause(lits[0], lits[1], c.weight))
        return TwoSatFormula(n, tuple(out))
    return KSatFormula(n, tuple(clauses))


def _vcsp_record(record, n):
    lineno, toks = record
    if len(toks) != 4:
        raise ParseError("expected '<pred-name> <u> <v> <w>'", lineno, toks[0][1])
    try:
        p = Predicate.from_name(toks[0][0])
    except ValueError as exc:
        raise ParseError(str(exc), lineno, toks[0][1]) from None
    return Constraint(_var(toks[1], lineno, n), _var(toks[2], lineno, n), p, _weight(toks[3], lineno))


def _2lin_record(record, n):
    lineno, toks = record
    if len(toks) != 4:
        raise ParseError("expected '<u> <v> <rhs> <w>'", lineno, toks[0][1])
    rhs = _int(toks[2], lineno, "right-hand side")
    if rhs not in (0, 1):
        raise ParseError(f"right-hand side must be 0 or 1, got {rhs}", lineno, toks[2][1])
    return Equation(_var(toks[0], lineno, n), _var(toks[1], lineno, n), rhs, _weight(toks[3], lineno))


def _wcnf_record(record, n):
    lineno, toks = record
    if len(toks) < 2 or toks[-1][0] != "0":
        raise ParseError("expected '<w> <lit> ... <lit> 0'", lineno, toks[-1][1])
    return Clause(tuple(_literal(t, lineno, n) for t in toks[1:-1]), _weight(toks[0], lineno))


def format_instance(obj: Instance) -> str:
    if isinstance(obj, VcspInstance):
        lines = [f"vcsp {obj.n} {len(obj.constraints)}"]
        lines += [f"{c.predicate.name} {c.u} {c.v} {c.weight!r}" for c in obj.constraints]
    elif isinstance(obj, TwoSatFormula):
        lines = [f"wcnf {obj.n} {len(obj.clauses)}"]
        lines += [f"{c.weight!r} {c.lit1} {c.lit2} 0" for c in obj.clauses]
    elif isinstance(obj, TwoLinSystem):
        lines = [f"2lin {obj.n} {len(obj.equations)}"]
        lines += [f"{e.u} {e.v} {e.rhs} {e.weight!r}" for e in obj.equations]
    elif isinstance(obj, KSatFormula):
        body = [" ".join([repr(c.weight), *map(str, c.literals), "0"]) for c in obj.clauses]
        if obj.offset:
            if obj.n == 0:
                raise ValueError("cannot write a constant offset for a formula without variables")
            # tautologies fold back into the offset when parsed
            body.append(f"{obj.offset!r} 1 -1 0")
        lines = [f"wcnf {obj.n} {len(body)}"] + body
    else:
        raise TypeError(f"cannot format {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def format_cover(cover: DoubleCoverGraph) -> str:
    g = cover.graph
    lines = [f"cover {g.n} {g.m}"]
    lines += [f"{vertex_label(u, cover.base_n)} {vertex_label(v, cover.base_n)} {w!r}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"
