"""
Bracket structure of program texts.

The lark grammar only knows about tokens, brackets, argument lists and the
terminating period. Operators are left as flat token runs because the
operator table changes while a program is read (``:- op(...)``); the reader
resolves them item by item.
"""
from __future__ import annotations

from dataclasses import dataclass

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from ..core.errors import ParseError

skeleton_grammar = r"""
    program: item*
    query: seq END?

    item: seq END
    seq: element+

    ?element: compound
            | group
            | NAME | VARNAME | NUMBER | QUOTED | SYMBOLIC
            | COMMA | CUT | SEMI

    compound: FUNCTOR seq ")"
    group: "(" seq ")"

    FUNCTOR.3: /(?:[a-z][A-Za-z0-9_]*|'(?:[^'\\\n]|\\.|'')*'|[+\-*\/\\^<>=~:?@#&$]+)\(/
    END.4: /\.(?=\s|%|$)/
    NAME.2: /[a-z][A-Za-z0-9_]*/
    VARNAME.2: /[A-Z_][A-Za-z0-9_]*/
    NUMBER.2: /\d+/
    QUOTED.2: /'(?:[^'\\\n]|\\.|'')*'/
    SYMBOLIC.1: /[+\-*\/\\^<>=~:?@#&$]+/
    COMMA: ","
    CUT: "!"
    SEMI: ";"

    COMMENT: /%[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""


@dataclass(frozen=True, slots=True)
class Tok:
    kind: str
    text: str
    line: int
    column: int
    end_column: int


@dataclass(frozen=True, slots=True)
class Compound:
    functor: Tok
    seq: tuple

    @property
    def line(self) -> int:
        return self.functor.line

    @property
    def column(self) -> int:
        return self.functor.column


@dataclass(frozen=True, slots=True)
class Group:
    seq: tuple
    line: int
    column: int


@dataclass(frozen=True, slots=True)
class Sentence:
    """One period-terminated item."""
    seq: tuple
    line: int


def _tok(token: Token) -> Tok:
    return Tok(token.type, str(token), token.line, token.column, token.end_column)


class _Skeleton(Transformer):
    def program(self, items):
        return list(items)

    def query(self, children):
        seq = children[0]
        return Sentence(seq, _first_line(seq))

    def item(self, children):
        seq = children[0]
        return Sentence(seq, _first_line(seq))

    def seq(self, elements):
        return tuple(_tok(e) if isinstance(e, Token) else e for e in elements)

    def compound(self, children):
        functor, seq = children
        name = str(functor)[:-1]
        return Compound(Tok("FUNCTOR", name, functor.line, functor.column, functor.end_column - 1), seq)

    def group(self, children):
        seq = children[0]
        first = seq[0]
        return Group(seq, first.line, max(first.column - 1, 1))


def _first_line(seq) -> int:
    return seq[0].line if seq else 0


_parser = Lark(skeleton_grammar, start=["program", "query"], parser="lalr",
               propagate_positions=True, maybe_placeholders=False)


def _as_parse_error(exc: UnexpectedInput) -> ParseError:
    if isinstance(exc, UnexpectedCharacters):
        return ParseError(f"unexpected character {exc.char!r}", exc.line, exc.column,
                          sorted(exc.allowed or ()))
    if isinstance(exc, UnexpectedToken):
        what = "end of input" if exc.token.type == "$END" else repr(str(exc.token))
        return ParseError(f"unexpected {what}", exc.line if exc.line != -1 else 0,
                          exc.column if exc.column != -1 else 0, sorted(exc.expected))
    if isinstance(exc, UnexpectedEOF):
        return ParseError("unexpected end of input", 0, 0, sorted(exc.expected))
    return ParseError(str(exc))


def read_sentences(text: str) -> list[Sentence]:
    try:
        tree = _parser.parse(text, start="program")
    except UnexpectedInput as exc:
        raise _as_parse_error(exc) from None
    return _Skeleton().transform(tree)


def read_query(text: str) -> Sentence:
    try:
        tree = _parser.parse(text, start="query")
    except UnexpectedInput as exc:
        raise _as_parse_error(exc) from None
    return _Skeleton().transform(tree)
