"""Logic-program generation: rule/program types and the general encoding.

For a schema and a query, the generated program's answer sets stand in
one-to-one correspondence with the repairs of the database it is evaluated
against, and the consistent answers are the cautious consequences of the
rewritten query predicate.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Union

from .model import (
    Atom,
    Comparison,
    COMPARISON_OPS,
    Database,
    DenialConstraint,
    InclusionDependency,
    Schema,
    SchemaError,
    Semantics,
    UnionQuery,
    Var,
    classify_ind,
)
from .rewrite import perfect_rewrite


class EncodingError(Exception):
    pass


class NotAtom(NamedTuple):
    atom: Atom


class CountEq(NamedTuple):
    """Cardinality equality of two groups sharing a signature:
    ``#count{group : left} = #count{group : right}``."""

    group: tuple[Var, ...]
    left: Atom
    right: Atom


BodyLiteral = Union[Atom, NotAtom, Comparison, CountEq]


@dataclass(frozen=True)
class Rule:
    heads: tuple[Atom, ...]
    body: tuple[BodyLiteral, ...] = ()

    def __post_init__(self) -> None:
        if not self.heads:
            raise EncodingError("rule needs at least one head atom")
        bound = {
            v for lit in self.body if isinstance(lit, Atom) for v in lit.variables()
        }
        def check(vs: Iterator[Var], what: str) -> None:
            for v in vs:
                if v not in bound:
                    raise EncodingError(f"unsafe rule: {what} variable {v.name}")

        for h in self.heads:
            check(h.variables(), "head")
        for lit in self.body:
            if isinstance(lit, NotAtom):
                check(lit.atom.variables(), "negated")
            elif isinstance(lit, Comparison):
                check(lit.variables(), "comparison")
            elif isinstance(lit, CountEq):
                group = set(lit.group)
                if group & bound:
                    raise EncodingError("aggregate group variable shadows a body variable")
                for side in (lit.left, lit.right):
                    check((v for v in side.variables() if v not in group), "aggregate")

    @property
    def is_disjunctive(self) -> bool:
        return len(self.heads) > 1

    def positive_atoms(self) -> Iterator[Atom]:
        for lit in self.body:
            if isinstance(lit, Atom):
                yield lit


@dataclass(frozen=True)
class AspProgram:
    rules: tuple[Rule, ...]
    query_pred: tuple[str, int] | None = None

    def predicates(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.rules:
            for a in r.heads:
                out[a.rel] = a.arity
            for lit in r.body:
                for a in _literal_atoms(lit):
                    out[a.rel] = a.arity
        return out


def _literal_atoms(lit: BodyLiteral) -> Iterator[Atom]:
    if isinstance(lit, Atom):
        yield lit
    elif isinstance(lit, NotAtom):
        yield lit.atom
    elif isinstance(lit, CountEq):
        yield lit.left
        yield lit.right


def has_disjunction(program: AspProgram) -> bool:
    return any(r.is_disjunctive for r in program.rules)


def is_stratified(program: AspProgram) -> bool:
    """No cyclic predicate dependency through negation or an aggregate."""
    plain: dict[str, set[str]] = {}
    nonmono: set[tuple[str, str]] = set()
    for r in program.rules:
        for h in r.heads:
            deps = plain.setdefault(h.rel, set())
            for lit in r.body:
                if isinstance(lit, Atom):
                    deps.add(lit.rel)
                elif isinstance(lit, NotAtom):
                    deps.add(lit.atom.rel)
                    nonmono.add((h.rel, lit.atom.rel))
                elif isinstance(lit, CountEq):
                    for a in (lit.left, lit.right):
                        deps.add(a.rel)
                        nonmono.add((h.rel, a.rel))
    from .model import strongly_connected_components

    nodes = set(plain)
    for deps in plain.values():
        nodes |= deps
    comps = strongly_connected_components(
        sorted(nodes), {n: frozenset(plain.get(n, ())) for n in nodes}
    )
    comp_of = {n: i for i, c in enumerate(comps) for n in c}
    return not any(comp_of[a] == comp_of[b] for a, b in nonmono)


# ---------------------------------------------------------------------------
# predicate name mangling


def conflict_pred(rel: str) -> str:
    return f"{rel}_c"


def repaired_pred(rel: str) -> str:
    return f"{rel}_r"


def projected_pred(rel: str, label: str, pi: frozenset[int]) -> str:
    suffix = "_".join(str(i) for i in sorted(pi))
    return f"{rel}_{label}_p{suffix}" if suffix else f"{rel}_{label}_p"


def query_pred_name(qname: str) -> str:
    return f"{qname}_cqa"


def check_name_collisions(schema: Schema, names: Iterator[str] | list[str]) -> None:
    declared = set(schema.relation_map)
    for n in names:
        if n in declared:
            raise EncodingError(
                f"generated predicate {n} collides with a declared relation; rename the relation"
            )


# ---------------------------------------------------------------------------
# rule builders shared with the optimized encodings


def canonical_vars(arity: int) -> tuple[Var, ...]:
    return tuple(Var(f"X{i}") for i in range(1, arity + 1))


def dc_rule(dc: DenialConstraint, head_pred=conflict_pred) -> Rule:
    heads = tuple(Atom(head_pred(a.rel), a.terms) for a in dc.atoms)
    body: tuple[BodyLiteral, ...] = tuple(dc.atoms) + tuple(dc.comparisons)
    return Rule(heads, body)


def ind_conflict_rules(ind: InclusionDependency) -> list[Rule]:
    """Delete a source tuple exactly when every matching target tuple is
    deleted (or none exists): a count equality over the existential
    positions, or its aggregate-free special case."""
    lhs, rhs = ind.lhs, ind.rhs
    head = Atom(conflict_pred(lhs.rel), lhs.terms)
    if ind.existential_vars:
        cnt = CountEq(
            group=ind.existential_vars,
            left=Atom(conflict_pred(rhs.rel), rhs.terms),
            right=rhs,
        )
        return [Rule((head,), (lhs, cnt))]
    return [
        Rule((head,), (lhs, Atom(conflict_pred(rhs.rel), rhs.terms))),
        Rule((head,), (lhs, NotAtom(rhs))),
    ]


def repaired_rule(rel: str, arity: int) -> Rule:
    xs = canonical_vars(arity)
    return Rule(
        (Atom(repaired_pred(rel), xs),),
        (Atom(rel, xs), NotAtom(Atom(conflict_pred(rel), xs))),
    )


def query_rules(q: UnionQuery, rename) -> list[Rule]:
    out = []
    qp = query_pred_name(q.name)
    for d in q.disjuncts:
        body: list[BodyLiteral] = [rename(a) for a in d.atoms]
        body.extend(d.comparisons)
        out.append(Rule((Atom(qp, d.head),), tuple(body)))
    return out


# ---------------------------------------------------------------------------
# the general encoding


def _require_ls_gate(schema: Schema, q: UnionQuery) -> None:
    if schema.dcs:
        raise EncodingError(
            "loosely-sound encoding supports key dependencies only; "
            "general denial constraints are present"
        )
    for ind in schema.inds:
        if not classify_ind(schema, ind).is_nkc:
            raise EncodingError(
                f"loosely-sound encoding requires non-key-conflicting inclusion "
                f"dependencies; {ind} strictly covers the target key"
            )
    if q.has_comparisons:
        raise EncodingError(
            "loosely-sound encoding requires a comparison-free query"
        )


def _require_le_gate(schema: Schema, db: Database | None) -> None:
    from .optimize import le_equivalence_holds  # deferred: optimize imports this module

    verdict = le_equivalence_holds(schema, db)
    if not verdict.holds:
        raise EncodingError(
            "no loosely-exact encoding for this schema: the semantics only "
            "reduces to the CM-complete encoding when the constraints are "
            "denial constraints only, inclusion dependencies only, keys with "
            "foreign keys over key-consistent data, or keys with safe foreign keys"
        )


def encode_general(
    schema: Schema,
    q: UnionQuery,
    semantics: Semantics,
    db: Database | None = None,
) -> AspProgram:
    """Build the repair program and rewritten query for one semantics.

    CM-complete accepts arbitrary denial constraints and (possibly cyclic)
    inclusion dependencies.  Loosely-sound accepts key dependencies plus
    non-key-conflicting inclusion dependencies and a comparison-free query;
    the dependencies are handled by query rewriting instead of rules.
    Loosely-exact requires one of the equivalence cases and then reuses the
    CM-complete encoding (pass ``db`` to enable the data-dependent case).
    """
    if semantics is Semantics.LOOSELY_SOUND:
        _require_ls_gate(schema, q)
    elif semantics is Semantics.LOOSELY_EXACT:
        _require_le_gate(schema, db)

    rules: list[Rule] = []
    for dc in schema.key_constraints_as_dcs():
        rules.append(dc_rule(dc))
    for dc in schema.dcs:
        rules.append(dc_rule(dc))
    if semantics in (Semantics.CM_COMPLETE, Semantics.LOOSELY_EXACT):
        for ind in schema.inds:
            rules.extend(ind_conflict_rules(ind))
    for sig in sorted(schema.relations, key=lambda s: s.name):
        rules.append(repaired_rule(sig.name, sig.arity))

    query = q
    if semantics is Semantics.LOOSELY_SOUND:
        query = perfect_rewrite(q, schema.inds)
    rules.extend(
        query_rules(query, lambda a: Atom(repaired_pred(a.rel), a.terms))
    )

    program = AspProgram(tuple(_dedupe(rules)), (query_pred_name(q.name), q.arity))
    check_name_collisions(schema, list(program.predicates()))
    return program


def _dedupe(rules: list[Rule]) -> list[Rule]:
    seen: set[Rule] = set()
    out = []
    for r in rules:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out
