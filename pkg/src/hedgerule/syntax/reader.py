"""
Turns bracket skeletons into terms, hedges, literals and program items.

Operator resolution is precedence climbing over the flat token runs of the
skeleton: a primary is read first (prefix operators, brackets, compounds),
then infix and postfix operators extend it for as long as their priority
fits the enclosing limit.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from pydantic import ValidationError

from ..core.clauses import (Abbreviation, Call, Cut, Literal, PredicateClause, Query,
                            SourceRef, Transform, TransformClause)
from ..core.errors import ParseError
from ..core.terms import App, CApp, HOLE, Hedge, Symbol, Term, VarKind, Variable, hole_count
from .grammar import Compound, Group, Sentence, Tok, read_query, read_sentences
from .models import ModeDeclaration, SourceProgram
from .operators import OperatorDirective, OperatorTable

_PREFIXES = {k.prefix: k for k in VarKind}
_OPERATOR_TOKENS = ("NAME", "SYMBOLIC", "COMMA", "SEMI", "CUT")


@dataclass(frozen=True, slots=True)
class Raw:
    name: str | int
    args: tuple = ()
    var: bool = False
    quoted: bool = False
    functional: bool = False
    line: int = 0
    column: int = 0

    def is_op(self, name: str, arity: int) -> bool:
        return (not self.functional and not self.quoted and not self.var
                and self.name == name and len(self.args) == arity)

    def is_atom(self, name: str) -> bool:
        return not self.quoted and not self.var and not self.args and self.name == name


def _unquote(text: str) -> str:
    body = text[1:-1]
    out, chars = [], iter(body)
    for c in chars:
        if c == "\\":
            nxt = next(chars, "")
            out.append({"n": "\n", "t": "\t", "\\": "\\", "'": "'"}.get(nxt, nxt))
        elif c == "'":
            out.append(next(chars, ""))
        else:
            out.append(c)
    return "".join(out)


def _split_commas(seq: tuple) -> list[tuple]:
    parts, current = [], []
    for e in seq:
        if isinstance(e, Tok) and e.kind == "COMMA":
            parts.append(tuple(current))
            current = []
        else:
            current.append(e)
    parts.append(tuple(current))
    return parts


def _describe(node) -> str:
    if isinstance(node, Tok):
        return repr(node.text)
    if isinstance(node, Compound):
        return f"{node.functor.text}(...)"
    return "(...)"


class _Cursor:
    __slots__ = ("seq", "pos")

    def __init__(self, seq: tuple):
        self.seq = seq
        self.pos = 0

    def done(self) -> bool:
        return self.pos >= len(self.seq)

    def peek(self):
        return self.seq[self.pos]

    def next(self):
        node = self.seq[self.pos]
        self.pos += 1
        return node


class OperatorReader:
    def __init__(self, operators: OperatorTable):
        self.ops = operators

    def read(self, seq: tuple, max_prec: int = 1200, line: int = 0) -> Raw:
        if not seq:
            raise ParseError("empty term", line, 0)
        cur = _Cursor(seq)
        raw, _ = self._parse(cur, max_prec)
        if not cur.done():
            node = cur.peek()
            raise ParseError(f"unexpected {_describe(node)} (operator priority clash)",
                             node.line, node.column)
        return raw

    def _parse(self, cur: _Cursor, max_prec: int) -> tuple[Raw, int]:
        left, left_prec = self._primary(cur, max_prec)
        while not cur.done():
            node = cur.peek()
            if not (isinstance(node, Tok) and node.kind in _OPERATOR_TOKENS):
                break
            op = self.ops.infix(node.text)
            if op is not None:
                left_max, right_max = op.argument_limits()
                if op.priority <= max_prec and left_prec <= left_max:
                    cur.next()
                    if cur.done():
                        raise ParseError(f"missing right operand of {node.text!r}", node.line, node.end_column)
                    right, _ = self._parse(cur, right_max)
                    left = Raw(node.text, (left, right), line=node.line, column=node.column)
                    left_prec = op.priority
                    continue
            op = self.ops.postfix(node.text)
            if op is not None:
                left_max, _ = op.argument_limits()
                if op.priority <= max_prec and left_prec <= left_max:
                    cur.next()
                    left = Raw(node.text, (left,), line=node.line, column=node.column)
                    left_prec = op.priority
                    continue
            break
        return left, left_prec

    def _starts_term(self, node) -> bool:
        if not isinstance(node, Tok):
            return True
        if node.kind == "COMMA":
            return False
        if node.kind in ("NAME", "SYMBOLIC", "SEMI", "CUT"):
            if self.ops.infix(node.text) or self.ops.postfix(node.text):
                return self.ops.prefix(node.text) is not None
        return True

    def _primary(self, cur: _Cursor, max_prec: int) -> tuple[Raw, int]:
        node = cur.next()
        if isinstance(node, Group):
            return self.read(node.seq, 1200, node.line), 0
        if isinstance(node, Compound):
            functor = node.functor.text
            quoted = functor.startswith("'")
            name = _unquote(functor) if quoted else functor
            args = []
            for part in _split_commas(node.seq):
                if not part:
                    raise ParseError(f"empty argument in {name}(...)", node.line, node.column)
                args.append(self.read(part, 999, node.line))
            return Raw(name, tuple(args), quoted=quoted, functional=True,
                       line=node.line, column=node.column), 0
        kind, text = node.kind, node.text
        if kind == "NUMBER":
            return Raw(int(text), line=node.line, column=node.column), 0
        if kind == "VARNAME":
            return Raw(text, var=True, line=node.line, column=node.column), 0
        if kind == "QUOTED":
            return Raw(_unquote(text), quoted=True, line=node.line, column=node.column), 0
        if kind == "COMMA":
            raise ParseError("unexpected ','", node.line, node.column)
        if text == "-" and not cur.done():
            nxt = cur.peek()
            if isinstance(nxt, Tok) and nxt.kind == "NUMBER" and nxt.line == node.line \
                    and nxt.column == node.end_column:
                cur.next()
                return Raw(-int(nxt.text), line=node.line, column=node.column), 0
        op = self.ops.prefix(text)
        if op is not None and not cur.done() and self._starts_term(cur.peek()):
            _, right_max = op.argument_limits()
            priority = op.priority
            if priority > max_prec:
                priority, right_max = 999, min(right_max, 999)
            arg, _ = self._parse(cur, right_max)
            return Raw(text, (arg,), line=node.line, column=node.column), priority
        return Raw(text, line=node.line, column=node.column), 0


class TermBuilder:
    """Builds core values from resolved operator trees."""

    def __init__(self, host_variables: bool = False):
        self.host_variables = host_variables
        self._anon = itertools.count(1)

    def _anonymous(self, kind: VarKind) -> Variable:
        return Variable(kind, f"_{next(self._anon)}", anonymous=True)

    def _variable(self, raw: Raw) -> Variable | None:
        if raw.quoted or not isinstance(raw.name, str):
            return None
        if raw.var:
            if not self.host_variables:
                raise ParseError(f"variable {raw.name} is only allowed in predicate clauses; "
                                 f"write i_{raw.name.lstrip('_')} instead", raw.line, raw.column)
            if raw.name == "_":
                return self._anonymous(VarKind.INDIVIDUAL)
            return Variable(VarKind.INDIVIDUAL, raw.name)
        kind = _PREFIXES.get(raw.name[:2])
        if kind is None:
            return None
        if raw.name == kind.prefix:
            return self._anonymous(kind)
        return Variable(kind, raw.name)

    def hedge(self, raw: Raw) -> Hedge:
        if raw.is_op(",", 2):
            return self.hedge(raw.args[0]) + self.hedge(raw.args[1])
        if raw.is_atom("eps") and not raw.functional:
            return ()
        var = self._variable(raw)
        if var is not None and var.kind is VarKind.SEQUENCE:
            if raw.args:
                raise ParseError(f"sequence variable {raw.name} cannot take arguments", raw.line, raw.column)
            return (var,)
        return (self.term(raw),)

    def arguments(self, raw: Raw) -> Hedge:
        out: tuple = ()
        for a in raw.args:
            out += self.hedge(a)
        return out

    def term(self, raw: Raw) -> Term:
        if isinstance(raw.name, int):
            return App(Symbol(raw.name))
        var = self._variable(raw)
        if var is not None:
            if var.kind is VarKind.INDIVIDUAL:
                if raw.args:
                    raise ParseError(f"individual variable {raw.name} cannot take arguments",
                                     raw.line, raw.column)
                return var
            if var.kind is VarKind.SEQUENCE:
                raise ParseError(f"sequence variable {raw.name} used where a term is expected",
                                 raw.line, raw.column)
            if var.kind is VarKind.FUNCTION:
                return App(var, self.arguments(raw))
            inner = self.arguments(raw)
            if len(inner) != 1 or (isinstance(inner[0], Variable) and inner[0].kind is VarKind.SEQUENCE):
                raise ParseError(f"context variable {raw.name} takes exactly one term",
                                 raw.line, raw.column)
            return CApp(var, inner[0])
        if not raw.quoted and raw.name == "hole":
            if raw.args:
                raise ParseError("hole is reserved and cannot take arguments", raw.line, raw.column)
            return HOLE
        if raw.is_atom("eps"):
            raise ParseError("eps is the empty hedge and cannot stand for a term", raw.line, raw.column)
        if raw.is_op(",", 2):
            raise ParseError("a hedge was found where a single term is expected", raw.line, raw.column)
        return App(Symbol(raw.name), self.arguments(raw))

    def literal(self, raw: Raw) -> Literal:
        if raw.is_op("::", 2):
            st, rule = raw.args
            if rule.is_op("==>", 2) or rule.is_op("=\\=>", 2):
                lhs, rhs = rule.args
                lit = Transform(self.term(st), self.hedge(lhs), self.hedge(rhs),
                                negative=rule.name == "=\\=>")
                if hole_count((lit.strategy,) + lit.lhs + lit.rhs):
                    raise ParseError("hole only occurs inside contexts, not in transform literals",
                                     raw.line, raw.column)
                return lit
            raise ParseError("expected '==>' or '=\\=>' after '::'", raw.line, raw.column)
        if raw.is_atom("!"):
            return Cut()
        goal = self.term(raw)
        if not isinstance(goal, App) or isinstance(goal.head, Variable) or goal.head.is_number:
            raise ParseError(f"{raw.name} is not callable", raw.line, raw.column)
        return Call(goal)

    def conjunction(self, raw: Raw) -> tuple[Literal, ...]:
        if raw.is_op(",", 2):
            return self.conjunction(raw.args[0]) + self.conjunction(raw.args[1])
        return (self.literal(raw),)


def _is_transform_atom(raw: Raw) -> bool:
    return raw.is_op("::", 2)


def _directive(raw: Raw, operators: OperatorTable, source: SourceRef):
    if raw.is_op("op", 3) or (raw.functional and raw.name == "op" and len(raw.args) == 3):
        prio, fixity, name = raw.args
        try:
            directive = OperatorDirective(priority=prio.name, type=fixity.name, name=name.name)
        except ValidationError as exc:
            message = "; ".join(err["msg"] for err in exc.errors())
            raise ParseError(f"bad operator directive: {message}", raw.line, raw.column) from None
        operators.add(directive)
        return directive
    if raw.functional and raw.name == "mode" and len(raw.args) == 1:
        spec = raw.args[0]
        try:
            return ModeDeclaration(name=str(spec.name), modes=tuple(a.name for a in spec.args),
                                   source=str(source))
        except ValidationError as exc:
            message = "; ".join(err["msg"] for err in exc.errors())
            raise ParseError(f"bad mode declaration: {message}", raw.line, raw.column) from None
    raise ParseError(f"unsupported directive {raw.name}", raw.line, raw.column)


def _item(raw: Raw, operators: OperatorTable, source: SourceRef):
    if raw.is_op(":-", 1):
        return _directive(raw.args[0], operators, source)
    if raw.is_op(":=", 2):
        b = TermBuilder()
        return Abbreviation(b.term(raw.args[0]), b.term(raw.args[1]), source)
    head, body = (raw.args if raw.is_op(":-", 2) else (raw, None))
    if _is_transform_atom(head):
        b = TermBuilder()
        lit = b.literal(head)
        if lit.negative:
            raise ParseError("a clause head cannot be a negative literal", raw.line, raw.column)
        return TransformClause(lit, b.conjunction(body) if body is not None else (), source)
    b = TermBuilder(host_variables=True)
    lit = b.literal(head)
    if not isinstance(lit, Call):
        raise ParseError("a clause head must be a transform atom or a predicate", raw.line, raw.column)
    return PredicateClause(lit.goal, b.conjunction(body) if body is not None else (), source)


def parse_program(text: str, origin: str = "<input>",
                  operators: OperatorTable | None = None) -> SourceProgram:
    """Read every item of a program text, applying operator directives as they appear."""
    table = (operators or OperatorTable()).copy()
    program = SourceProgram(origin=origin, operators=table)
    reader = OperatorReader(table)
    for sentence in read_sentences(text):
        try:
            raw = reader.read(sentence.seq, 1200, sentence.line)
        except RecursionError:
            raise ParseError("item nests too deeply to read", sentence.line) from None
        program.items.append(_item(raw, table, SourceRef(origin, sentence.line)))
    return program


def _read_one(text: str, operators: OperatorTable | None, max_prec: int = 1200) -> Raw:
    sentence: Sentence = read_query(text)
    try:
        return OperatorReader(operators or OperatorTable()).read(sentence.seq, max_prec, sentence.line)
    except RecursionError:
        raise ParseError("input nests too deeply to read", sentence.line) from None


def parse_query(text: str, operators: OperatorTable | None = None) -> Query:
    return Query(TermBuilder().conjunction(_read_one(text, operators)))


def parse_term(text: str, operators: OperatorTable | None = None) -> Term:
    return TermBuilder().term(_read_one(text, operators))


def parse_hedge(text: str, operators: OperatorTable | None = None) -> Hedge:
    return TermBuilder().hedge(_read_one(text, operators))
