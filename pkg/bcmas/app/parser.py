"""
Recursive descent parser for `.bc` action description files.

    file       := (sortdecl | fluentdecl | actiondecl | law)*
    sortdecl   := "sort" NAME "=" (INT ".." INT | "{" VALUE ("," VALUE)* "}") "."
    fluentdecl := "fluent" SCHEMA ":" ("regular" | "defined") "."
    actiondecl := "action" SCHEMA ("agent" (NAME | VAR))? "."
    SCHEMA     := NAME ("(" PARAM ("," PARAM)* ")")?      PARAM := NAME | VAR ":" NAME
    law        := ("[" TERM "]")? (corelaw | abbreviation) ("where" COND ("," COND)*)? "."
    COND       := EXPR ("=="|"!="|"<"|"<="|">"|">=") EXPR | "not"? EXPR "in" NAME
    corelaw    := LIT ("if" LITS)? ("after" LITS)? ("ifcons" LITS)?
    abbreviation := "impossible" LITS | "nonexecutable" LITS ("if" LITS)?
                  | "inertial" LITS | "default" LIT ("if" LITS)?
    LITS       := (ITEM ("," ITEM)*)?      ITEM := LIT | "all" VAR "in" NAME ":" LIT
    LIT        := "-"? NAME ("(" TERM ("," TERM)* ")")?

Comments run from `%` to the end of the line.
"""
import logging
import re
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict

from .errors import ParseError
from .schemas import AB, AB_PRIME, FluentKind

logger = logging.getLogger(__name__)

KEYWORDS = frozenset({
    "sort", "fluent", "action", "agent", "regular", "defined", "if", "after", "ifcons",
    "impossible", "nonexecutable", "inertial", "default", "where", "all", "in", "not",
})
ABBREVIATIONS = ("impossible", "nonexecutable", "inertial", "default")
STOP_WORDS = frozenset({"if", "after", "ifcons", "where"})
COMPARISONS = ("==", "!=", "<=", ">=", "<", ">")
MEMBERSHIP = ("in", "notin")

BUILTIN_FLUENTS = {AB: FluentKind.DEFINED, AB_PRIME: FluentKind.REGULAR}


class SourceLocation(BaseModel):
    model_config = ConfigDict(frozen=True)

    line: int
    col: int


class Var(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str


class Num(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: int


class Compound(BaseModel):
    """A constant (no args), an atom, or a nested term such as `imp(l)`."""

    model_config = ConfigDict(frozen=True)

    name: str
    args: Tuple["Term", ...] = ()
    negated: bool = False


Term = Union[Var, Num, Compound]


class Arith(BaseModel):
    model_config = ConfigDict(frozen=True)

    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Var, Num, Compound, Arith]


class Comparison(BaseModel):
    model_config = ConfigDict(frozen=True)

    op: str
    left: Expr
    right: Expr


class LiteralPattern(BaseModel):
    model_config = ConfigDict(frozen=True)

    atom: Compound
    positive: bool = True


class AllMacro(BaseModel):
    model_config = ConfigDict(frozen=True)

    var: str
    sort: str
    literal: LiteralPattern


BodyItem = Union[LiteralPattern, AllMacro]

Compound.model_rebuild()
Arith.model_rebuild()
Comparison.model_rebuild()


class SortDecl(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    values: Tuple[Union[int, str], ...]
    interval: Optional[Tuple[int, int]] = None
    loc: Optional[SourceLocation] = None


class Param(BaseModel):
    model_config = ConfigDict(frozen=True)

    sort: str
    var: Optional[str] = None


class FluentDeclaration(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    params: Tuple[Param, ...] = ()
    kind: FluentKind
    loc: Optional[SourceLocation] = None


class ActionDeclaration(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    params: Tuple[Param, ...] = ()
    agent: Optional[Union[Var, Compound]] = None
    loc: Optional[SourceLocation] = None


class LawKind(str, Enum):
    STATIC = "static"
    DYNAMIC = "dynamic"
    IMPOSSIBLE = "impossible"
    NONEXECUTABLE = "nonexecutable"
    INERTIAL = "inertial"
    DEFAULT = "default"


class LawSchema(BaseModel):
    """
    Field use per kind: STATIC head/if/ifcons, DYNAMIC head/after/ifcons,
    IMPOSSIBLE if, NONEXECUTABLE after (actions) + if (condition),
    INERTIAL after (the fluents), DEFAULT head + if.
    """

    model_config = ConfigDict(frozen=True)

    kind: LawKind
    head: Optional[LiteralPattern] = None
    if_part: Tuple[BodyItem, ...] = ()
    after_part: Tuple[BodyItem, ...] = ()
    ifcons_part: Tuple[BodyItem, ...] = ()
    where: Tuple[Comparison, ...] = ()
    label: Optional[Compound] = None
    loc: Optional[SourceLocation] = None

    def items(self) -> Tuple[BodyItem, ...]:
        head = (self.head,) if self.head is not None else ()
        return head + self.if_part + self.after_part + self.ifcons_part


class SpecFile(BaseModel):
    model_config = ConfigDict(frozen=True)

    sorts: Tuple[SortDecl, ...] = ()
    fluents: Tuple[FluentDeclaration, ...] = ()
    actions: Tuple[ActionDeclaration, ...] = ()
    laws: Tuple[LawSchema, ...] = ()

    def sort_map(self) -> Dict[str, Tuple[Union[int, str], ...]]:
        return {s.name: s.values for s in self.sorts}

    def atom_params(self) -> Dict[str, Tuple[Param, ...]]:
        params = {f.name: f.params for f in self.fluents}
        params.update({a.name: a.params for a in self.actions})
        return params

    def structure(self) -> dict:
        """Dump without source locations, for structural comparison."""
        return _strip_locations(self.model_dump())


def _strip_locations(value):
    if isinstance(value, dict):
        return {k: _strip_locations(v) for k, v in value.items() if k != "loc"}
    if isinstance(value, (list, tuple)):
        return [_strip_locations(v) for v in value]
    return value


class Token(NamedTuple):
    kind: str
    value: str
    line: int
    col: int


TOKEN_SPEC = [
    ("COMMENT", r"%[^\n]*"),
    ("NEWLINE", r"\n"),
    ("SKIP", r"[ \t\r]+"),
    ("NAME", r"[a-z][A-Za-z0-9_]*'*"),
    ("VAR", r"[A-Z_][A-Za-z0-9_]*'*"),
    ("INT", r"[0-9]+"),
    ("RANGE", r"\.\."),
    ("DOT", r"\."),
    ("OP", r"==|!=|<=|>=|<|>|="),
    ("PLUS", r"\+"),
    ("MINUS", r"-"),
    ("COMMA", r","),
    ("COLON", r":"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("LBRACKET", r"\["),
    ("RBRACKET", r"\]"),
    ("LBRACE", r"\{"),
    ("RBRACE", r"\}"),
    ("MISMATCH", r"."),
]
TOKEN_RE = re.compile("|".join(f"(?P<{kind}>{pattern})" for kind, pattern in TOKEN_SPEC))


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start = 1, 0
    for match in TOKEN_RE.finditer(text):
        kind = match.lastgroup
        value = match.group()
        col = match.start() - line_start + 1
        if kind == "NEWLINE":
            line += 1
            line_start = match.end()
        elif kind in ("SKIP", "COMMENT"):
            continue
        elif kind == "MISMATCH":
            raise ParseError(f"unexpected character {value!r}", line, col)
        else:
            tokens.append(Token(kind, value, line, col))
    tokens.append(Token("EOF", "", line, len(text) - line_start + 1))
    return tokens


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.ct: Optional[Token] = None
        self.nt: Token = self.tokens[0]

    # token plumbing

    def advance(self) -> Token:
        self.ct = self.nt
        if self.pos < len(self.tokens) - 1:
            self.pos += 1
        self.nt = self.tokens[self.pos]
        return self.ct

    def peek(self, kind: str, offset: int = 0) -> bool:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index].kind == kind

    def peek_kw(self, value: str) -> bool:
        return self.nt.kind == "NAME" and self.nt.value == value

    def error(self, message: str, token: Optional[Token] = None):
        token = token or self.nt
        raise ParseError(message, token.line, token.col)

    def describe(self, token: Token) -> str:
        return "end of file" if token.kind == "EOF" else repr(token.value)

    def match(self, kind: str) -> Token:
        if self.nt.kind != kind:
            self.error(f"expected {kind}, encountered {self.describe(self.nt)} instead")
        return self.advance()

    def match_kw(self, value: str) -> Token:
        if not self.peek_kw(value):
            self.error(f"expected {value}, encountered {self.describe(self.nt)} instead")
        return self.advance()

    def location(self) -> SourceLocation:
        return SourceLocation(line=self.nt.line, col=self.nt.col)

    # file level

    def parse_file(self) -> SpecFile:
        sorts, fluents, actions, laws = [], [], [], []
        while not self.peek("EOF"):
            if self.peek_kw("sort"):
                sorts.append(self.parse_sort())
            elif self.peek_kw("fluent"):
                fluents.append(self.parse_fluent())
            elif self.peek_kw("action"):
                actions.append(self.parse_action())
            else:
                laws.append(self.parse_law())
        return SpecFile(sorts=tuple(sorts), fluents=tuple(fluents),
                        actions=tuple(actions), laws=tuple(laws))

    def parse_sort(self) -> SortDecl:
        loc = self.location()
        self.match_kw("sort")
        name = self.match("NAME").value
        t_eq = self.match("OP")
        if t_eq.value != "=":
            self.error("expected '=' in sort declaration", t_eq)
        if self.peek("INT") or self.peek("MINUS"):
            low = self.parse_int()
            self.match("RANGE")
            high = self.parse_int()
            self.match("DOT")
            return SortDecl(name=name, values=tuple(range(low, high + 1)),
                            interval=(low, high), loc=loc)
        self.match("LBRACE")
        values = [self.parse_value()]
        while self.peek("COMMA"):
            self.advance()
            values.append(self.parse_value())
        self.match("RBRACE")
        self.match("DOT")
        if len(set(values)) != len(values):
            raise ParseError(f"duplicate value in sort {name}", loc.line, loc.col)
        return SortDecl(name=name, values=tuple(values), loc=loc)

    def parse_int(self) -> int:
        sign = 1
        if self.peek("MINUS"):
            self.advance()
            sign = -1
        return sign * int(self.match("INT").value)

    def parse_value(self) -> Union[int, str]:
        if self.peek("INT") or self.peek("MINUS"):
            return self.parse_int()
        return self.match("NAME").value

    def parse_schema(self) -> Tuple[str, Tuple[Param, ...]]:
        name = self.match("NAME").value
        params: List[Param] = []
        if self.peek("LPAREN"):
            self.advance()
            params.append(self.parse_param())
            while self.peek("COMMA"):
                self.advance()
                params.append(self.parse_param())
            self.match("RPAREN")
        return name, tuple(params)

    def parse_param(self) -> Param:
        if self.peek("VAR"):
            var = self.advance().value
            self.match("COLON")
            return Param(sort=self.match("NAME").value, var=var)
        return Param(sort=self.match("NAME").value)

    def parse_fluent(self) -> FluentDeclaration:
        loc = self.location()
        self.match_kw("fluent")
        name, params = self.parse_schema()
        self.match("COLON")
        if self.peek_kw("regular"):
            kind = FluentKind.REGULAR
        elif self.peek_kw("defined"):
            kind = FluentKind.DEFINED
        else:
            self.error("expected regular or defined")
        self.advance()
        self.match("DOT")
        return FluentDeclaration(name=name, params=params, kind=kind, loc=loc)

    def parse_action(self) -> ActionDeclaration:
        loc = self.location()
        self.match_kw("action")
        name, params = self.parse_schema()
        agent = None
        if self.peek_kw("agent"):
            self.advance()
            if self.peek("VAR"):
                agent = Var(name=self.advance().value)
            else:
                agent = Compound(name=self.match("NAME").value)
        self.match("DOT")
        return ActionDeclaration(name=name, params=params, agent=agent, loc=loc)

    # laws

    def parse_law(self) -> LawSchema:
        loc = self.location()
        label = None
        if self.peek("LBRACKET"):
            self.advance()
            term = self.parse_term()
            if not isinstance(term, Compound) or term.negated:
                self.error("a law label is a constant or compound term", self.ct)
            label = term
            self.match("RBRACKET")

        fields: dict = {"label": label, "loc": loc}
        if self.peek_kw("impossible"):
            self.advance()
            fields.update(kind=LawKind.IMPOSSIBLE, if_part=self.parse_items())
        elif self.peek_kw("nonexecutable"):
            self.advance()
            fields.update(kind=LawKind.NONEXECUTABLE, after_part=self.parse_items())
            if not fields["after_part"]:
                self.error("nonexecutable law without actions")
            if self.peek_kw("if"):
                self.advance()
                fields["if_part"] = self.parse_items()
        elif self.peek_kw("inertial"):
            self.advance()
            fields.update(kind=LawKind.INERTIAL, after_part=self.parse_items())
        elif self.peek_kw("default"):
            self.advance()
            fields.update(kind=LawKind.DEFAULT, head=self.parse_literal())
            if self.peek_kw("if"):
                self.advance()
                fields["if_part"] = self.parse_items()
        else:
            fields.update(kind=LawKind.STATIC, head=self.parse_literal())
            if self.peek_kw("if"):
                self.advance()
                fields["if_part"] = self.parse_items()
            if self.peek_kw("after"):
                if "if_part" in fields:
                    self.error("a law has either an if part or an after part")
                self.advance()
                fields.update(kind=LawKind.DYNAMIC, after_part=self.parse_items())
            if self.peek_kw("ifcons"):
                self.advance()
                fields["ifcons_part"] = self.parse_items()

        if self.peek_kw("where"):
            self.advance()
            comparisons = [self.parse_comparison()]
            while self.peek("COMMA"):
                self.advance()
                comparisons.append(self.parse_comparison())
            fields["where"] = tuple(comparisons)
        self.match("DOT")
        return LawSchema(**fields)

    def parse_items(self) -> Tuple[BodyItem, ...]:
        if self.peek("DOT") or (self.nt.kind == "NAME" and self.nt.value in STOP_WORDS):
            return ()
        items = [self.parse_item()]
        while self.peek("COMMA"):
            self.advance()
            items.append(self.parse_item())
        return tuple(items)

    def parse_item(self) -> BodyItem:
        if self.peek_kw("all") and self.peek("VAR", 1):
            self.advance()
            var = self.match("VAR").value
            self.match_kw("in")
            sort = self.match("NAME").value
            self.match("COLON")
            return AllMacro(var=var, sort=sort, literal=self.parse_literal())
        return self.parse_literal()

    def parse_literal(self) -> LiteralPattern:
        positive = True
        if self.peek("MINUS"):
            self.advance()
            positive = False
        if not self.peek("NAME"):
            self.error(f"expected a literal, encountered {self.describe(self.nt)} instead")
        atom = self.parse_compound()
        return LiteralPattern(atom=atom, positive=positive)

    def parse_compound(self, negated: bool = False) -> Compound:
        name = self.match("NAME").value
        args: List[Term] = []
        if self.peek("LPAREN"):
            self.advance()
            args.append(self.parse_term())
            while self.peek("COMMA"):
                self.advance()
                args.append(self.parse_term())
            self.match("RPAREN")
        return Compound(name=name, args=tuple(args), negated=negated)

    def parse_term(self) -> Term:
        if self.peek("VAR"):
            return Var(name=self.advance().value)
        if self.peek("INT"):
            return Num(value=int(self.advance().value))
        if self.peek("MINUS"):
            self.advance()
            if self.peek("INT"):
                return Num(value=-int(self.advance().value))
            return self.parse_compound(negated=True)
        if self.peek("NAME"):
            return self.parse_compound()
        self.error(f"expected a term, encountered {self.describe(self.nt)} instead")

    def parse_comparison(self) -> Comparison:
        negated = False
        if self.peek_kw("not"):
            self.advance()
            negated = True
        left = self.parse_expr()
        if self.peek_kw("in"):
            self.advance()
            sort = Compound(name=self.match("NAME").value)
            return Comparison(op="notin" if negated else "in", left=left, right=sort)
        if negated:
            self.error(f"expected in, encountered {self.describe(self.nt)} instead")
        t_op = self.match("OP")
        op = "==" if t_op.value == "=" else t_op.value
        return Comparison(op=op, left=left, right=self.parse_expr())

    def parse_expr(self) -> Expr:
        expr = self.parse_operand()
        while self.peek("PLUS") or self.peek("MINUS"):
            op = self.advance().value
            expr = Arith(op=op, left=expr, right=self.parse_operand())
        return expr

    def parse_operand(self) -> Expr:
        if self.peek("LPAREN"):
            self.advance()
            expr = self.parse_expr()
            self.match("RPAREN")
            return expr
        if self.peek("VAR"):
            return Var(name=self.advance().value)
        if self.peek("INT") or self.peek("MINUS"):
            return Num(value=self.parse_int())
        if self.peek("NAME"):
            return Compound(name=self.advance().value)
        self.error(f"expected an operand, encountered {self.describe(self.nt)} instead")


class _Checker:
    """Static checks that need the whole file: sorts, arities and variable binding."""

    def __init__(self, spec: SpecFile):
        self.spec = spec
        self.sorts = spec.sort_map()
        self.params = spec.atom_params()

    def fail(self, message: str, loc: Optional[SourceLocation]):
        raise ParseError(message, loc.line if loc else None, loc.col if loc else None)

    def run(self) -> None:
        for decl in list(self.spec.fluents) + list(self.spec.actions):
            if decl.name in BUILTIN_FLUENTS:
                self.fail(f"{decl.name} is a built-in fluent", decl.loc)
            if decl.name in KEYWORDS:
                self.fail(f"{decl.name} is a keyword", decl.loc)
            for param in decl.params:
                if param.sort not in self.sorts:
                    self.fail(f"unknown sort {param.sort}", decl.loc)
        for decl in self.spec.actions:
            if isinstance(decl.agent, Var) and decl.agent.name not in {p.var for p in decl.params}:
                self.fail(f"agent variable {decl.agent.name} is not a parameter of {decl.name}", decl.loc)
        for law in self.spec.laws:
            self.check_law(law)

    def check_atom(self, atom: Compound, loc, nested: bool = False) -> None:
        if atom.name in BUILTIN_FLUENTS:
            if len(atom.args) != 1:
                self.fail(f"{atom.name} takes one argument", loc)
            if isinstance(atom.args[0], Compound):
                self.check_atom(atom.args[0], loc, nested=True)
            return
        params = self.params.get(atom.name)
        if params is None:
            if nested:
                return
            self.fail(f"undeclared fluent or action {atom.name}", loc)
        if len(params) != len(atom.args):
            self.fail(f"{atom.name} expects {len(params)} arguments, got {len(atom.args)}", loc)

    def bindings(self, atom: Compound, out: Dict[str, List[str]]) -> None:
        if atom.name in BUILTIN_FLUENTS:
            for arg in atom.args:
                if isinstance(arg, Compound):
                    self.bindings(arg, out)
            return
        params = self.params.get(atom.name)
        if params is None:
            return
        for param, arg in zip(params, atom.args):
            if isinstance(arg, Var):
                out.setdefault(arg.name, []).append(param.sort)

    def where_bindings(self, law: LawSchema, out: Dict[str, List[str]]) -> None:
        """`X in sort` ranges X over the sort; `not X in sort` binds nothing."""
        for comparison in law.where:
            if comparison.op == "in" and isinstance(comparison.left, Var):
                out.setdefault(comparison.left.name, []).append(comparison.right.name)

    def check_law(self, law: LawSchema) -> None:
        bound: Dict[str, List[str]] = {}
        used: set = set()
        for item in law.items():
            if isinstance(item, AllMacro):
                if item.sort not in self.sorts:
                    self.fail(f"unknown sort {item.sort}", law.loc)
                self.check_atom(item.literal.atom, law.loc)
                inner: Dict[str, List[str]] = {}
                self.bindings(item.literal.atom, inner)
                inner.pop(item.var, None)
                for var, sorts in inner.items():
                    bound.setdefault(var, []).extend(sorts)
                used |= _term_vars(item.literal.atom) - {item.var}
            else:
                self.check_atom(item.atom, law.loc)
                self.bindings(item.atom, bound)
                used |= _term_vars(item.atom)
        for comparison in law.where:
            if comparison.op in MEMBERSHIP and comparison.right.name not in self.sorts:
                self.fail(f"unknown sort {comparison.right.name}", law.loc)
            used |= _term_vars(comparison.left) | _term_vars(comparison.right)
        self.where_bindings(law, bound)
        if law.label is not None:
            used |= _term_vars(law.label)
        for var in sorted(used - set(bound)):
            self.fail(f"unbound variable {var}", law.loc)


def _term_vars(term) -> set:
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, Compound):
        return set().union(*(_term_vars(a) for a in term.args)) if term.args else set()
    if isinstance(term, Arith):
        return _term_vars(term.left) | _term_vars(term.right)
    return set()


def variable_sorts(spec: SpecFile, law: LawSchema) -> Dict[str, List[str]]:
    """Sorts constraining each variable of `law`, from the argument positions it occupies and its where-clause domains."""
    checker = _Checker(spec)
    bound: Dict[str, List[str]] = {}
    for item in law.items():
        if isinstance(item, AllMacro):
            inner: Dict[str, List[str]] = {}
            checker.bindings(item.literal.atom, inner)
            inner.pop(item.var, None)
            for var, sorts in inner.items():
                bound.setdefault(var, []).extend(sorts)
        else:
            checker.bindings(item.atom, bound)
    checker.where_bindings(law, bound)
    return bound


def parse(text: str) -> SpecFile:
    spec = Parser(text).parse_file()
    _Checker(spec).run()
    logger.debug(f"Parsed {len(spec.sorts)} sorts, {len(spec.fluents)} fluents, "
                 f"{len(spec.actions)} actions and {len(spec.laws)} laws")
    return spec


# pretty printing

def format_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Num):
        return str(term.value)
    text = term.name
    if term.args:
        text += "(" + ",".join(format_term(a) for a in term.args) + ")"
    return ("-" + text) if term.negated else text


def format_expr(expr: Expr) -> str:
    if isinstance(expr, Arith):
        right = format_expr(expr.right)
        if isinstance(expr.right, Arith):
            right = f"({right})"
        return f"{format_expr(expr.left)} {expr.op} {right}"
    return format_term(expr)


def _format_condition(c: Comparison) -> str:
    if c.op == "in":
        return f"{format_expr(c.left)} in {c.right.name}"
    if c.op == "notin":
        return f"not {format_expr(c.left)} in {c.right.name}"
    return f"{format_expr(c.left)} {c.op} {format_expr(c.right)}"


def _format_item(item: BodyItem) -> str:
    if isinstance(item, AllMacro):
        return f"all {item.var} in {item.sort} : {_format_literal(item.literal)}"
    return _format_literal(item)


def _format_literal(lit: LiteralPattern) -> str:
    return ("" if lit.positive else "-") + format_term(lit.atom)


def _format_items(items) -> str:
    return ", ".join(_format_item(i) for i in items)


def _format_schema(name: str, params: Tuple[Param, ...]) -> str:
    if not params:
        return name
    rendered = [f"{p.var}:{p.sort}" if p.var else p.sort for p in params]
    return f"{name}({', '.join(rendered)})"


def format_law_schema(law: LawSchema) -> str:
    text = f"[{format_term(law.label)}] " if law.label is not None else ""
    if law.kind == LawKind.IMPOSSIBLE:
        text += f"impossible {_format_items(law.if_part)}".rstrip()
    elif law.kind == LawKind.NONEXECUTABLE:
        text += f"nonexecutable {_format_items(law.after_part)}"
        if law.if_part:
            text += f" if {_format_items(law.if_part)}"
    elif law.kind == LawKind.INERTIAL:
        text += f"inertial {_format_items(law.after_part)}".rstrip()
    elif law.kind == LawKind.DEFAULT:
        text += f"default {_format_literal(law.head)}"
        if law.if_part:
            text += f" if {_format_items(law.if_part)}"
    else:
        text += _format_literal(law.head)
        if law.kind == LawKind.DYNAMIC:
            text += f" after {_format_items(law.after_part)}".rstrip()
        elif law.if_part:
            text += f" if {_format_items(law.if_part)}"
        if law.ifcons_part:
            text += f" ifcons {_format_items(law.ifcons_part)}"
    if law.where:
        text += " where " + ", ".join(_format_condition(c) for c in law.where)
    return text + "."


def pretty_print(spec: SpecFile) -> str:
    lines = ["% bcmas action description"]
    for sort in spec.sorts:
        if sort.interval is not None:
            lines.append(f"sort {sort.name} = {sort.interval[0]}..{sort.interval[1]}.")
        else:
            lines.append(f"sort {sort.name} = {{{', '.join(str(v) for v in sort.values)}}}.")
    for fluent in spec.fluents:
        lines.append(f"fluent {_format_schema(fluent.name, fluent.params)} : {fluent.kind.value}.")
    for action in spec.actions:
        line = f"action {_format_schema(action.name, action.params)}"
        if action.agent is not None:
            line += f" agent {format_term(action.agent)}"
        lines.append(line + ".")
    lines.extend(format_law_schema(law) for law in spec.laws)
    return "\n".join(lines) + "\n"
