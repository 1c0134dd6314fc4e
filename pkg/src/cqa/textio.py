"""Concrete syntax: schemas, fact files, queries, mappings, and logic
programs.

Schema statements::

    rel e/2.                  % relation declaration
    key e = {1}.              % at most one key per relation
    m(X1) -> e(X1,_).         % inclusion dependency, `_` marks existentials
    :- r(X,Y), s(Y,Z), X > Z. % denial constraint

Facts are ``rel(v1,...,vn).`` with bare or single-quoted values.  Queries
and mappings are datalog rules.  Program text uses ``v`` for disjunction,
``not`` for negation, and DLV-style count-equality aggregates.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

from .encode import AspProgram, BodyLiteral, CountEq, NotAtom, Rule
from .mapping import GavMapping
from .model import (
    Atom,
    Comparison,
    Database,
    DenialConstraint,
    Fact,
    InclusionDependency,
    RelationSig,
    Schema,
    SchemaError,
    Term,
    UnionQuery,
    Disjunct,
    Var,
    constant_sort_key,
    fact_sort_key,
    is_int_lexeme,
)

RESERVED_PREDICATES = frozenset({"v", "not"})


@dataclass(frozen=True)
class SourceText:
    content: str
    origin: str = "<string>"


class ParseError(Exception):
    def __init__(self, message: str, origin: str, line: int, col: int):
        super().__init__(f"{origin}:{line}:{col}: {message}")
        self.origin = origin
        self.line = line
        self.col = col
        self.message = message


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+|%[^\n]*)
    | (?P<quoted>'[^'\n]*')
    | (?P<op>:-|->|<=|>=|!=|<>|\#count)
    | (?P<int>-?[0-9]+)
    | (?P<var>[A-Z_][A-Za-z0-9_]*)
    | (?P<name>[a-z][A-Za-z0-9_]*)
    | (?P<punct>[(){},.=/<>])
    """,
    re.VERBOSE,
)


def _tokenize(src: SourceText) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    pos = 0
    text = src.content
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", src.origin, line, col)
        kind = m.lastgroup or ""
        tok = m.group()
        if kind != "ws":
            tokens.append(Token(kind, tok, line, col))
        newlines = tok.count("\n")
        if newlines:
            line += newlines
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


def _as_source(text: str | SourceText, origin: str) -> SourceText:
    if isinstance(text, SourceText):
        return text
    return SourceText(text, origin)


class _Parser:
    def __init__(self, src: SourceText):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0
        self._anon = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at_eof(self) -> bool:
        return self.peek().kind == "eof"

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, self.src.origin, tok.line, tok.col)

    def expect(self, text: str, what: str | None = None) -> Token:
        t = self.next()
        if t.text != text:
            raise self.error(f"expected {what or text!r}, found {t.text!r}", t)
        return t

    def expect_kind(self, kind: str, what: str) -> Token:
        t = self.next()
        if t.kind != kind:
            raise self.error(f"expected {what}, found {t.text!r}", t)
        return t

    # -- shared term/atom parsing ------------------------------------------

    def fresh_anon(self) -> Var:
        self._anon += 1
        return Var(f"_A{self._anon}")

    def reset_statement(self) -> None:
        self._anon = 0

    def parse_constant(self) -> str:
        t = self.next()
        if t.kind == "quoted":
            value = t.text[1:-1]
        elif t.kind in ("name", "int"):
            value = t.text
        else:
            raise self.error("expected a constant", t)
        if value.startswith("#"):
            raise self.error("constants may not start with '#' (reserved)", t)
        if not value:
            raise self.error("empty constant", t)
        return value

    def parse_term(self, allow_anonymous: bool = True) -> Term:
        t = self.peek()
        if t.kind == "var":
            self.next()
            if t.text == "_":
                if not allow_anonymous:
                    raise self.error("anonymous variable not allowed here", t)
                return self.fresh_anon()
            if t.text.startswith("_"):
                raise self.error("variable names starting with '_' are reserved", t)
            return Var(t.text)
        return self.parse_constant()

    def parse_predicate_name(self) -> str:
        t = self.expect_kind("name", "a predicate name")
        if t.text in RESERVED_PREDICATES:
            raise self.error(f"{t.text!r} is reserved and cannot name a predicate", t)
        return t.text

    def parse_atom(self, term_parser: Callable[[], Term] | None = None) -> Atom:
        name = self.parse_predicate_name()
        if self.peek().text != "(":
            return Atom(name, ())
        self.next()
        terms = [term_parser() if term_parser else self.parse_term()]
        while self.peek().text == ",":
            self.next()
            terms.append(term_parser() if term_parser else self.parse_term())
        self.expect(")")
        return Atom(name, tuple(terms))

    def parse_comparison(self, left: Term) -> Comparison:
        t = self.next()
        op = {"<>": "!="}.get(t.text, t.text)
        if op not in ("<", "<=", ">", ">=", "!="):
            raise self.error(f"expected a comparison operator, found {t.text!r}", t)
        right = self.parse_term(allow_anonymous=False)
        return Comparison(op, left, right)

    def at_comparison_op(self) -> bool:
        return self.peek().text in ("<", "<=", ">", ">=", "!=", "<>")


# ---------------------------------------------------------------------------
# schema


def parse_schema(text: str | SourceText, origin: str = "<schema>") -> Schema:
    src = _as_source(text, origin)
    p = _Parser(src)
    rels: list[RelationSig] = []
    keys: dict[str, tuple[frozenset[int], Token]] = {}
    dcs: list[DenialConstraint] = []
    inds: list[InclusionDependency] = []

    while not p.at_eof():
        p.reset_statement()
        t = p.peek()
        try:
            if t.text == "rel":
                p.next()
                name_tok = p.expect_kind("name", "a relation name")
                if name_tok.text in RESERVED_PREDICATES:
                    raise p.error(f"{name_tok.text!r} is reserved", name_tok)
                p.expect("/")
                arity_tok = p.expect_kind("int", "an arity")
                rels.append(
                    RelationSig(name_tok.text, int(arity_tok.text), key=frozenset({1}))
                )
            elif t.text == "key":
                p.next()
                name_tok = p.expect_kind("name", "a relation name")
                if name_tok.text in keys:
                    raise p.error(
                        f"duplicate key declaration for {name_tok.text}", name_tok
                    )
                p.expect("=")
                p.expect("{")
                idxs = [int(p.expect_kind("int", "a key index").text)]
                while p.peek().text == ",":
                    p.next()
                    idxs.append(int(p.expect_kind("int", "a key index").text))
                p.expect("}")
                keys[name_tok.text] = (frozenset(idxs), name_tok)
            elif t.text == ":-":
                p.next()
                atoms: list[Atom] = []
                comparisons: list[Comparison] = []
                while True:
                    if p.peek().kind in ("var",):
                        left = p.parse_term(allow_anonymous=False)
                        comparisons.append(p.parse_comparison(left))
                    else:
                        atoms.append(p.parse_atom(term_parser=lambda: _dc_term(p)))
                    if p.peek().text == ",":
                        p.next()
                        continue
                    break
                dcs.append(DenialConstraint(tuple(atoms), tuple(comparisons)))
            elif t.kind == "name":
                lhs = p.parse_atom(term_parser=lambda: _ind_term(p))
                p.expect("->")
                rhs = p.parse_atom(term_parser=lambda: _ind_term(p))
                inds.append(InclusionDependency(lhs, rhs))
            else:
                raise p.error(f"unexpected {t.text!r} at start of statement", t)
            p.expect(".", "'.' at end of statement")
        except SchemaError as e:
            raise p.error(str(e), t) from e

    sigs = []
    declared = {r.name for r in rels}
    for name, (idxs, tok) in keys.items():
        if name not in declared:
            raise ParseError(
                f"key declared for undeclared relation {name}",
                src.origin,
                tok.line,
                tok.col,
            )
    for r in rels:
        if r.name in keys:
            idxs, tok = keys[r.name]
            if not idxs <= frozenset(range(1, r.arity + 1)):
                raise ParseError(
                    "key index out of range", src.origin, tok.line, tok.col
                )
            sigs.append(RelationSig(r.name, r.arity, idxs, key_declared=True))
        else:
            sigs.append(
                RelationSig(r.name, r.arity, frozenset(range(1, r.arity + 1)))
            )
    try:
        return Schema(tuple(sigs), tuple(dcs), tuple(inds))
    except SchemaError as e:
        raise ParseError(str(e), src.origin, 1, 1) from e


def _dc_term(p: _Parser) -> Term:
    t = p.peek()
    if t.kind != "var":
        raise p.error("denial-constraint atoms take variables only", t)
    return p.parse_term()


def _ind_term(p: _Parser) -> Term:
    t = p.peek()
    if t.kind != "var":
        raise p.error("inclusion-dependency atoms take variables only", t)
    return p.parse_term()


# ---------------------------------------------------------------------------
# facts


def parse_facts(
    text: str | SourceText, schema: Schema | None = None, origin: str = "<facts>"
) -> Database:
    src = _as_source(text, origin)
    p = _Parser(src)
    facts: set[Fact] = []  # type: ignore[assignment]
    facts = set()
    while not p.at_eof():
        start = p.peek()
        atom = p.parse_atom(term_parser=lambda: p.parse_constant())
        p.expect(".", "'.' after fact")
        if not atom.terms:
            raise p.error("facts need at least one value", start)
        if schema is not None:
            sig = schema.relation_map.get(atom.rel)
            if sig is None:
                raise p.error(f"fact over undeclared relation {atom.rel}", start)
            if sig.arity != atom.arity:
                raise p.error(
                    f"{atom.rel} expects {sig.arity} values, found {atom.arity}", start
                )
        facts.add(Fact(atom.rel, atom.terms))  # type: ignore[arg-type]
    return Database(frozenset(facts))


# ---------------------------------------------------------------------------
# queries and mappings


def _parse_rule(p: _Parser) -> tuple[str, tuple[Term, ...], Disjunct]:
    p.reset_statement()
    head_tok = p.peek()
    head_name = p.parse_predicate_name()
    head_terms: list[Term] = []
    if p.peek().text == "(":
        p.next()
        while True:
            t = p.peek()
            if t.kind == "var" and t.text == "_":
                raise p.error("anonymous variable not allowed in a rule head", t)
            head_terms.append(p.parse_term())
            if p.peek().text == ",":
                p.next()
                continue
            break
        p.expect(")")
    p.expect(":-", "':-' after the rule head")
    atoms: list[Atom] = []
    comparisons: list[Comparison] = []
    while True:
        t = p.peek()
        if t.kind in ("var", "int", "quoted"):
            left = p.parse_term()
            comparisons.append(p.parse_comparison(left))
        else:
            atoms.append(p.parse_atom())
        if p.peek().text == ",":
            p.next()
            continue
        break
    p.expect(".", "'.' at end of rule")
    try:
        d = Disjunct(tuple(head_terms), tuple(atoms), tuple(comparisons))
    except SchemaError as e:
        raise p.error(str(e), head_tok) from e
    return head_name, tuple(head_terms), d


def parse_query(text: str | SourceText, origin: str = "<query>") -> UnionQuery:
    src = _as_source(text, origin)
    p = _Parser(src)
    name: str | None = None
    disjuncts: list[Disjunct] = []
    while not p.at_eof():
        tok = p.peek()
        rule_name, head, d = _parse_rule(p)
        if name is None:
            name = rule_name
        elif rule_name != name:
            raise p.error(
                f"query rules must share one head predicate ({name} vs {rule_name})",
                tok,
            )
        if disjuncts and len(head) != len(disjuncts[0].head):
            raise p.error("query rules must share one head arity", tok)
        disjuncts.append(d)
    if name is None:
        raise ParseError("empty query", src.origin, 1, 1)
    return UnionQuery(name, len(disjuncts[0].head), tuple(disjuncts))


def parse_mapping(text: str | SourceText, origin: str = "<mapping>") -> GavMapping:
    src = _as_source(text, origin)
    p = _Parser(src)
    rules: dict[str, list[Disjunct]] = {}
    order: list[str] = []
    while not p.at_eof():
        tok = p.peek()
        name, head, d = _parse_rule(p)
        if name in rules and len(head) != len(rules[name][0].head):
            raise p.error(f"mapping rules for {name} have mixed arities", tok)
        rules.setdefault(name, []).append(d)
        if name not in order:
            order.append(name)
    queries = tuple(
        (g, UnionQuery(g, len(rules[g][0].head), tuple(rules[g]))) for g in order
    )
    return GavMapping(queries)


# ---------------------------------------------------------------------------
# logic programs


def parse_asp(text: str | SourceText, origin: str = "<program>") -> AspProgram:
    src = _as_source(text, origin)
    p = _Parser(src)
    rules: list[Rule] = []
    query_pred: tuple[str, int] | None = None
    while not p.at_eof():
        p.reset_statement()
        heads = [p.parse_atom()]
        while p.peek().text == "v":
            p.next()
            heads.append(p.parse_atom())
        body: list[BodyLiteral] = []
        if p.peek().text == ":-":
            p.next()
            while True:
                t = p.peek()
                if t.text == "not":
                    p.next()
                    body.append(NotAtom(p.parse_atom()))
                elif t.text == "#count":
                    body.append(_parse_count_eq(p))
                elif t.kind in ("var", "int", "quoted"):
                    left = p.parse_term()
                    body.append(p.parse_comparison(left))
                else:
                    atom = p.parse_atom()
                    if p.at_comparison_op() and not atom.terms:
                        # bare constant followed by an operator
                        body.append(p.parse_comparison(atom.rel))
                    else:
                        body.append(atom)
                if p.peek().text == ",":
                    p.next()
                    continue
                break
        p.expect(".", "'.' at end of rule")
        try:
            rules.append(Rule(tuple(heads), tuple(body)))
        except Exception as e:
            raise p.error(str(e)) from e
        if query_pred is None and heads[0].rel.endswith("_cqa"):
            query_pred = (heads[0].rel, heads[0].arity)
    return AspProgram(tuple(rules), query_pred)


def _parse_count_eq(p: _Parser) -> CountEq:
    def one_side() -> tuple[tuple[Var, ...], Atom]:
        p.expect("#count")
        p.expect("{")
        group = [p.parse_term(allow_anonymous=False)]
        while p.peek().text == ",":
            p.next()
            group.append(p.parse_term(allow_anonymous=False))
        for g in group:
            if not isinstance(g, Var):
                raise p.error("aggregate group elements must be variables")
        colon = p.next()
        if colon.text != ":":
            raise p.error(f"expected ':' in aggregate, found {colon.text!r}", colon)
        atom = p.parse_atom()
        p.expect("}")
        return tuple(group), atom  # type: ignore[return-value]

    left_group, left = one_side()
    p.expect("=")
    right_group, right = one_side()
    if left_group != right_group:
        raise p.error("aggregate sides must share one group signature")
    return CountEq(left_group, left, right)


# ---------------------------------------------------------------------------
# emission


_BARE_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def format_constant(c: str) -> str:
    if _BARE_RE.match(c) and c not in RESERVED_PREDICATES:
        return c
    if is_int_lexeme(c):
        return c
    if "'" in c or "\n" in c:
        raise ValueError(f"constant {c!r} cannot be serialized")
    return f"'{c}'"


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    return format_constant(t)


def format_atom(a: Atom) -> str:
    if not a.terms:
        return a.rel
    return f"{a.rel}({','.join(format_term(t) for t in a.terms)})"


def _format_literal(lit: BodyLiteral) -> str:
    if isinstance(lit, Atom):
        return format_atom(lit)
    if isinstance(lit, NotAtom):
        return f"not {format_atom(lit.atom)}"
    if isinstance(lit, Comparison):
        return f"{format_term(lit.left)} {lit.op} {format_term(lit.right)}"
    if isinstance(lit, CountEq):
        group = ",".join(v.name for v in lit.group)
        return (
            f"#count{{{group} : {format_atom(lit.left)}}} = "
            f"#count{{{group} : {format_atom(lit.right)}}}"
        )
    raise TypeError(f"unknown body literal {lit!r}")


def format_rule(r: Rule) -> str:
    head = " v ".join(format_atom(h) for h in r.heads)
    if not r.body:
        return f"{head}."
    body = ", ".join(_format_literal(lit) for lit in r.body)
    return f"{head} :- {body}."


def emit_asp(program: AspProgram) -> str:
    """Deterministic, round-trippable program text, one rule per line, in
    program order (encoders emit rules under a stable key already)."""
    return "".join(format_rule(r) + "\n" for r in program.rules)


def emit_facts(db: Database) -> str:
    lines = []
    for f in db.sorted_facts():
        lines.append(f"{f.rel}({','.join(format_constant(a) for a in f.args)}).")
    return "".join(line + "\n" for line in lines)


def emit_schema(schema: Schema) -> str:
    lines = []
    for r in schema.relations:
        lines.append(f"rel {r.name}/{r.arity}.")
        if r.key_declared:
            lines.append(f"key {r.name} = {{{','.join(map(str, r.key_tuple))}}}.")
    for ind in schema.inds:
        lines.append(f"{format_atom(ind.lhs)} -> {format_atom(ind.rhs)}.")
    for dc in schema.dcs:
        body = [format_atom(a) for a in dc.atoms]
        body += [
            f"{format_term(c.left)} {c.op} {format_term(c.right)}"
            for c in dc.comparisons
        ]
        lines.append(f":- {', '.join(body)}.")
    return "".join(line + "\n" for line in lines)


def emit_query(q: UnionQuery) -> str:
    lines = []
    for d in q.disjuncts:
        head = f"{q.name}({','.join(format_term(t) for t in d.head)})" if d.head else q.name
        body = [format_atom(a) for a in d.atoms]
        body += [
            f"{format_term(c.left)} {c.op} {format_term(c.right)}"
            for c in d.comparisons
        ]
        lines.append(f"{head} :- {', '.join(body)}.")
    return "".join(line + "\n" for line in lines)


def emit_mapping(mapping: GavMapping) -> str:
    return "".join(emit_query(q) for _, q in mapping.queries)


def split_facts(program: AspProgram) -> tuple[AspProgram, Database]:
    """Separate ground bodiless single-head rules (facts) from proper rules;
    used to replay exported programs."""
    facts: set[Fact] = set()
    rules: list[Rule] = []
    for r in program.rules:
        if (
            not r.body
            and len(r.heads) == 1
            and all(not isinstance(t, Var) for t in r.heads[0].terms)
        ):
            facts.add(Fact(r.heads[0].rel, r.heads[0].terms))  # type: ignore[arg-type]
        else:
            rules.append(r)
    return AspProgram(tuple(rules), program.query_pred), Database(frozenset(facts))
