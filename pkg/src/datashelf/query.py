"""Filtration query language: lexer, recursive-descent parser, and evaluator.

Grammar (also published in docs/query-language.md):

    query      := or_expr
    or_expr    := and_expr ("or" and_expr)*
    and_expr   := not_expr ("and" not_expr)*
    not_expr   := "not" not_expr | primary
    primary    := "(" or_expr ")" | comparison
    comparison := operand cmp_op operand
    operand    := feature_ref | literal

Precedence: not > and > or. Same-level and/or chains flatten into one n-ary
node. Keywords are lowercase and case-sensitive. Identifiers are bare
([A-Za-z_][A-Za-z0-9_]*) or backtick-quoted for names containing spaces.
String literals use single or double quotes, with no escape sequences.

Comparison semantics: integer features compare numerically against numeric
literals; text features compare by exact equality or code-point order; a
text-list feature under ==/!= tests membership of a string literal among its
elements. A comparison with MISSING on either side is false, including !=.
Ordering operators on text lists are a type error.
"""

from __future__ import annotations

import enum
import operator
import re
from dataclasses import dataclass, field

from .catalog import MISSING, CatalogSnapshot, DatasetRecord, FeatureKind, Schema
from .errors import (
    IllegalCharacter,
    SyntaxError_,
    TypeMismatch,
    UnknownFeature,
    UnterminatedBacktick,
    UnterminatedString,
)

_BARE_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_KEYWORDS = {"and", "or", "not"}
_CMP_OPS = ("==", "!=", "<=", ">=", "<", ">")
_OP_FUNCS = {
    "==": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}


class TokenKind(enum.Enum):
    IDENT = "ident"
    INT = "int"
    FLOAT = "float"
    STR = "str"
    CMP = "cmp"
    AND = "and"
    OR = "or"
    NOT = "not"
    LPAREN = "("
    RPAREN = ")"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str  # the exact lexeme, a substring of the input at `offset`
    offset: int
    value: object = None  # decoded literal / identifier name


def tokenize(text: str) -> list[Token]:
    """Maximal-munch token stream; offsets are character positions."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in _KEYWORDS:
                tokens.append(Token(TokenKind[word.upper()], word, i, word))
            else:
                tokens.append(Token(TokenKind.IDENT, word, i, word))
            i = j
            continue
        if ch == "`":
            j = text.find("`", i + 1)
            if j < 0:
                raise UnterminatedBacktick(i)
            tokens.append(Token(TokenKind.IDENT, text[i : j + 1], i, text[i + 1 : j]))
            i = j + 1
            continue
        if ch in "'\"":
            j = text.find(ch, i + 1)
            if j < 0:
                raise UnterminatedString(i)
            tokens.append(Token(TokenKind.STR, text[i : j + 1], i, text[i + 1 : j]))
            i = j + 1
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
                tokens.append(Token(TokenKind.FLOAT, text[i:j], i, float(text[i:j])))
            else:
                tokens.append(Token(TokenKind.INT, text[i:j], i, int(text[i:j])))
            i = j
            continue
        two = text[i : i + 2]
        if two in ("==", "!=", "<=", ">="):
            tokens.append(Token(TokenKind.CMP, two, i, two))
            i += 2
            continue
        if ch in "<>":
            tokens.append(Token(TokenKind.CMP, ch, i, ch))
            i += 1
            continue
        if ch == "(":
            tokens.append(Token(TokenKind.LPAREN, ch, i))
            i += 1
            continue
        if ch == ")":
            tokens.append(Token(TokenKind.RPAREN, ch, i))
            i += 1
            continue
        raise IllegalCharacter(ch, i)
    return tokens


# --- AST ---------------------------------------------------------------


@dataclass(frozen=True)
class FeatureRef:
    name: str
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Literal:
    value: object  # int, float, or str
    offset: int = field(default=0, compare=False)

    @property
    def is_number(self) -> bool:
        return isinstance(self.value, (int, float))


@dataclass(frozen=True)
class Comparison:
    lhs: FeatureRef | Literal
    op: str
    rhs: FeatureRef | Literal
    offset: int = field(default=0, compare=False)
    # Constant value when both operands are literals, computed at parse time.
    folded: bool | None = field(default=None, compare=False)


@dataclass(frozen=True)
class And:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("And requires at least 2 children")


@dataclass(frozen=True)
class Or:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("Or requires at least 2 children")


@dataclass(frozen=True)
class Not:
    child: object


Operand = FeatureRef | Literal
FilterExpr = Comparison | And | Or | Not


class _Parser:
    def __init__(self, tokens: list[Token], schema: Schema):
        self.tokens = tokens
        self.schema = schema
        self.pos = 0

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _fail(self, expectation: str) -> SyntaxError_:
        tok = self.peek()
        offset = tok.offset if tok else (self.tokens[-1].offset + len(self.tokens[-1].text) if self.tokens else 0)
        return SyntaxError_(offset, expectation)

    def parse(self):
        if not self.tokens:
            raise SyntaxError_(0, "a query expression")
        expr = self.or_expr()
        if self.peek() is not None:
            raise self._fail("end of query")
        return expr

    def or_expr(self):
        children = [self.and_expr()]
        while (tok := self.peek()) is not None and tok.kind is TokenKind.OR:
            self.advance()
            children.append(self.and_expr())
        return children[0] if len(children) == 1 else Or(tuple(children))

    def and_expr(self):
        children = [self.not_expr()]
        while (tok := self.peek()) is not None and tok.kind is TokenKind.AND:
            self.advance()
            children.append(self.not_expr())
        return children[0] if len(children) == 1 else And(tuple(children))

    def not_expr(self):
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.NOT:
            self.advance()
            return Not(self.not_expr())
        return self.primary()

    def primary(self):
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.LPAREN:
            self.advance()
            inner = self.or_expr()
            closing = self.peek()
            if closing is None or closing.kind is not TokenKind.RPAREN:
                raise self._fail("')'")
            self.advance()
            return inner
        return self.comparison()

    def comparison(self):
        lhs = self.operand()
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.CMP:
            raise self._fail("a comparison operator")
        op_tok = self.advance()
        rhs = self.operand()
        folded = None
        if isinstance(lhs, Literal) and isinstance(rhs, Literal):
            folded = _fold_literals(lhs, op_tok.value, rhs, op_tok.offset)
        return Comparison(lhs, op_tok.value, rhs, offset=op_tok.offset, folded=folded)

    def operand(self):
        tok = self.peek()
        if tok is None:
            raise self._fail("a comparison operand")
        if tok.kind is TokenKind.IDENT:
            self.advance()
            if tok.value not in self.schema:
                raise UnknownFeature(tok.value, offset=tok.offset)
            return FeatureRef(tok.value, offset=tok.offset)
        if tok.kind in (TokenKind.INT, TokenKind.FLOAT, TokenKind.STR):
            self.advance()
            return Literal(tok.value, offset=tok.offset)
        raise self._fail("a comparison operand (feature or literal)")


def _fold_literals(lhs: Literal, op: str, rhs: Literal, offset: int) -> bool:
    if lhs.is_number != rhs.is_number:
        raise TypeMismatch("mixed literal types", op, offset=offset)
    return _OP_FUNCS[op](lhs.value, rhs.value)


def parse(tokens: list[Token], schema: Schema):
    """Build a FilterExpr AST; feature references are checked against schema."""
    return _Parser(tokens, schema).parse()


def compile_query(text: str, schema: Schema):
    return parse(tokenize(text), schema)


# --- Evaluation --------------------------------------------------------


def evaluate(expr, record: DatasetRecord, schema: Schema) -> bool:
    if isinstance(expr, Comparison):
        if expr.folded is not None:
            return expr.folded
        return _eval_comparison(expr, record, schema)
    if isinstance(expr, And):
        return all(evaluate(c, record, schema) for c in expr.children)
    if isinstance(expr, Or):
        return any(evaluate(c, record, schema) for c in expr.children)
    if isinstance(expr, Not):
        return not evaluate(expr.child, record, schema)
    raise TypeError(f"not a FilterExpr node: {expr!r}")


def _resolve(operand, record: DatasetRecord, schema: Schema):
    """Returns (kind, value, label); kind is FeatureKind or 'number'/'string'."""
    if isinstance(operand, FeatureRef):
        return schema.kind_of(operand.name), record.get(operand.name), operand.name
    if isinstance(operand.value, str):
        return "string", operand.value, "string literal"
    return "number", operand.value, "numeric literal"


def _eval_comparison(cmp: Comparison, record: DatasetRecord, schema: Schema) -> bool:
    lkind, lval, llabel = _resolve(cmp.lhs, record, schema)
    rkind, rval, rlabel = _resolve(cmp.rhs, record, schema)
    op = cmp.op
    fn = _OP_FUNCS[op]

    def numeric(k):
        return k is FeatureKind.INTEGER or k == "number"

    def textual(k):
        return k is FeatureKind.TEXT or k == "string"

    if numeric(lkind) and numeric(rkind):
        if lval is MISSING or rval is MISSING:
            return False
        return fn(lval, rval)
    if textual(lkind) and textual(rkind):
        if lval is MISSING or rval is MISSING:
            return False
        return fn(lval, rval)
    if lkind is FeatureKind.TEXT_LIST and rkind is FeatureKind.TEXT_LIST:
        if op not in ("==", "!="):
            raise TypeMismatch(f"text-list feature {llabel!r}", op, offset=cmp.offset)
        if lval is MISSING or rval is MISSING:
            return False
        return fn(lval, rval)
    for listy, other, other_val, label in (
        (lkind, rkind, rval, llabel),
        (rkind, lkind, lval, rlabel),
    ):
        if listy is FeatureKind.TEXT_LIST and other == "string":
            list_val = lval if listy is lkind else rval
            if op not in ("==", "!="):
                raise TypeMismatch(f"text-list feature {label!r}", op, offset=cmp.offset)
            if list_val is MISSING or other_val is MISSING:
                return False
            found = other_val in list_val
            return found if op == "==" else not found
    raise TypeMismatch(f"{llabel} vs {rlabel}", op, offset=cmp.offset)


def filter_records(snapshot: CatalogSnapshot, query: str | None) -> list[DatasetRecord]:
    """Records matching the query, in source order with original indices.

    An empty or absent query returns all records. Tokenize/parse/evaluate
    errors propagate with an offset suitable for a 400-class response.
    """
    if query is None or not query.strip():
        return list(snapshot.records)
    expr = compile_query(query, snapshot.schema)
    return [r for r in snapshot.records if evaluate(expr, r, snapshot.schema)]


# --- Pretty-printing ---------------------------------------------------


def render(expr) -> str:
    """Canonical query text; reparsing yields a structurally identical AST."""
    if isinstance(expr, Comparison):
        return f"{_render_operand(expr.lhs)} {expr.op} {_render_operand(expr.rhs)}"
    if isinstance(expr, And):
        return " and ".join(_render_child(c, parent=And) for c in expr.children)
    if isinstance(expr, Or):
        return " or ".join(_render_child(c, parent=Or) for c in expr.children)
    if isinstance(expr, Not):
        inner = render(expr.child)
        if isinstance(expr.child, (And, Or)):
            inner = f"({inner})"
        return f"not {inner}"
    raise TypeError(f"not a FilterExpr node: {expr!r}")


def _render_child(child, parent) -> str:
    # Parenthesize lower-precedence children, and same-type children so the
    # reparse does not flatten deliberate nesting.
    text = render(child)
    if parent is And:
        needs_parens = isinstance(child, (And, Or))
    else:
        needs_parens = isinstance(child, Or)
    return f"({text})" if needs_parens else text


def _render_operand(operand) -> str:
    if isinstance(operand, FeatureRef):
        name = operand.name
        if _BARE_IDENT.match(name) and name not in _KEYWORDS:
            return name
        if "`" in name:
            raise ValueError(f"feature name {name!r} cannot be rendered")
        return f"`{name}`"
    value = operand.value
    if isinstance(value, str):
        if "'" not in value:
            return f"'{value}'"
        if '"' not in value:
            return f'"{value}"'
        raise ValueError("string literal mixing both quote characters cannot be rendered")
    return repr(value)
