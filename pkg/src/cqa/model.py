"""Core value types: schemas, constraints, databases, queries.

Constants are plain strings drawn from a totally ordered domain.  Two
constants are equal iff their lexemes are equal (unique names).  Comparison
atoms order two constants numerically when both are integer literals and
lexicographically otherwise.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Union


class Var(NamedTuple):
    name: str

    def __repr__(self) -> str:
        return f"Var({self.name})"


# A term is a variable or a constant lexeme.
Term = Union[Var, str]

_INT_RE = re.compile(r"-?[0-9]+\Z")

#: Sentinel returned by answer computations when the repair family is empty,
#: so the intersection over repairs is vacuously everything.
class _VacuouslyAll:
    def __repr__(self) -> str:
        return "VACUOUSLY_ALL"


VACUOUSLY_ALL = _VacuouslyAll()


def is_int_lexeme(c: str) -> bool:
    return _INT_RE.match(c) is not None


def compare_constants(a: str, b: str) -> int:
    """Three-way comparison: numeric when both operands are integer literals,
    lexicographic otherwise."""
    if is_int_lexeme(a) and is_int_lexeme(b):
        x, y = int(a), int(b)
        return (x > y) - (x < y)
    return (a > b) - (a < b)


def constant_sort_key(c: str) -> tuple:
    # Well-founded key for deterministic output ordering.
    if is_int_lexeme(c):
        return (0, int(c), c)
    return (1, 0, c)


COMPARISON_OPS = ("<", "<=", ">", ">=", "!=")


def eval_comparison(op: str, a: str, b: str) -> bool:
    c = compare_constants(a, b)
    if op == "<":
        return c < 0
    if op == "<=":
        return c <= 0
    if op == ">":
        return c > 0
    if op == ">=":
        return c >= 0
    if op == "!=":
        return c != 0
    raise ValueError(f"unknown comparison operator {op!r}")


class Atom(NamedTuple):
    rel: str
    terms: tuple[Term, ...]

    @property
    def arity(self) -> int:
        return len(self.terms)

    def variables(self) -> Iterator[Var]:
        for t in self.terms:
            if isinstance(t, Var):
                yield t


class Comparison(NamedTuple):
    op: str
    left: Term
    right: Term

    def variables(self) -> Iterator[Var]:
        for t in (self.left, self.right):
            if isinstance(t, Var):
                yield t


class Fact(NamedTuple):
    rel: str
    args: tuple[str, ...]


def fact_sort_key(f: Fact) -> tuple:
    return (f.rel, len(f.args), tuple(constant_sort_key(a) for a in f.args))


class SchemaError(Exception):
    """Ill-formed schema, constraint, query, or mapping."""


class GateError(Exception):
    """Constraint/semantics combination outside the supported classes."""


class Semantics(Enum):
    CM_COMPLETE = "cm"
    LOOSELY_SOUND = "ls"
    LOOSELY_EXACT = "le"

    @property
    def label(self) -> str:
        return {
            Semantics.CM_COMPLETE: "CM-complete",
            Semantics.LOOSELY_SOUND: "loosely-sound",
            Semantics.LOOSELY_EXACT: "loosely-exact",
        }[self]

    @classmethod
    def parse(cls, text: str) -> "Semantics":
        try:
            return cls(text)
        except ValueError:
            for s in cls:
                if s.label == text:
                    return s
            raise ValueError(f"unknown semantics {text!r}; expected cm, ls or le")


@dataclass(frozen=True)
class RelationSig:
    """Relation name, arity, and primary key.

    ``key_declared`` distinguishes an explicit key dependency from the
    default key covering all attributes (a relation with the default key
    carries no key constraint at all).
    """

    name: str
    arity: int
    key: frozenset[int]
    key_declared: bool = False

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise SchemaError(f"relation {self.name}: arity must be positive")
        if not self.key:
            raise SchemaError(f"relation {self.name}: key may not be empty")
        if not self.key <= frozenset(range(1, self.arity + 1)):
            raise SchemaError(f"relation {self.name}: key index out of range")

    @property
    def key_tuple(self) -> tuple[int, ...]:
        return tuple(sorted(self.key))

    @property
    def nonkey_tuple(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.arity + 1) if i not in self.key)


@dataclass(frozen=True)
class DenialConstraint:
    """Forbidden conjunction of relational atoms and comparison atoms."""

    atoms: tuple[Atom, ...]
    comparisons: tuple[Comparison, ...] = ()

    def __post_init__(self) -> None:
        if not self.atoms:
            raise SchemaError("denial constraint needs at least one atom")
        bound = {v for a in self.atoms for v in a.variables()}
        for c in self.comparisons:
            for v in c.variables():
                if v not in bound:
                    raise SchemaError(
                        f"comparison variable {v.name} not bound by any atom"
                    )

    def relations(self) -> tuple[str, ...]:
        seen: list[str] = []
        for a in self.atoms:
            if a.rel not in seen:
                seen.append(a.rel)
        return tuple(seen)


@dataclass(frozen=True)
class InclusionDependency:
    """Containment ``lhs[pi_l] <= rhs[pi_r]``.

    Both atoms hold distinct variables; a right-hand variable that also
    occurs on the left is shared (universally quantified), every other
    right-hand variable is existential.
    """

    lhs: Atom
    rhs: Atom

    def __post_init__(self) -> None:
        for side, atom in (("left", self.lhs), ("right", self.rhs)):
            vs = list(atom.terms)
            if not all(isinstance(t, Var) for t in vs):
                raise SchemaError(
                    f"inclusion dependency {self}: {side} side must hold variables only"
                )
            if len(set(vs)) != len(vs):
                raise SchemaError(
                    f"inclusion dependency {self}: repeated variable on {side} side"
                )

    def __str__(self) -> str:
        return f"{self.lhs.rel}->{self.rhs.rel}"

    @cached_property
    def correspondence(self) -> tuple[tuple[int, int], ...]:
        """(lhs position, rhs position) pairs of the shared variables,
        ordered by rhs position (1-based)."""
        lhs_pos = {t: i for i, t in enumerate(self.lhs.terms, start=1)}
        pairs = []
        for j, t in enumerate(self.rhs.terms, start=1):
            if t in lhs_pos:
                pairs.append((lhs_pos[t], j))
        return tuple(pairs)

    @cached_property
    def pi_l(self) -> frozenset[int]:
        return frozenset(l for l, _ in self.correspondence)

    @cached_property
    def pi_r(self) -> frozenset[int]:
        return frozenset(r for _, r in self.correspondence)

    @cached_property
    def shared_vars(self) -> tuple[Var, ...]:
        return tuple(self.rhs.terms[r - 1] for _, r in self.correspondence)  # type: ignore[misc]

    @cached_property
    def existential_vars(self) -> tuple[Var, ...]:
        shared = set(self.shared_vars)
        return tuple(t for t in self.rhs.terms if t not in shared)  # type: ignore[misc]


class IndTag(Enum):
    FK = "FK"
    FSK = "FSK"  # foreign superkey that is not a plain foreign key
    NKC = "NKC"
    GENERAL = "general"  # unreachable for well-formed INDs; kept for totality


@dataclass(frozen=True)
class IndClass:
    tag: IndTag
    safe: bool | None  # None when safety is not defined for the tag

    @property
    def is_fk(self) -> bool:
        return self.tag is IndTag.FK

    @property
    def is_fsk(self) -> bool:
        return self.tag in (IndTag.FK, IndTag.FSK)

    @property
    def is_nkc(self) -> bool:
        # An IND is non-key-conflicting unless its right-hand positions
        # strictly contain the target key.
        return self.tag in (IndTag.FK, IndTag.NKC)

    @property
    def is_sfsk(self) -> bool:
        return self.is_fsk and bool(self.safe)

    @property
    def is_sfk(self) -> bool:
        return self.is_fk and bool(self.safe)

    def describe(self) -> str:
        if self.tag is IndTag.FK:
            return "FK, safe (SFK)" if self.safe else "FK, unsafe"
        if self.tag is IndTag.FSK:
            return "FSK, safe (SFSK)" if self.safe else "FSK, unsafe"
        return self.tag.value


@dataclass(frozen=True)
class Schema:
    relations: tuple[RelationSig, ...] = ()
    dcs: tuple[DenialConstraint, ...] = ()
    inds: tuple[InclusionDependency, ...] = ()

    def __post_init__(self) -> None:
        names = [r.name for r in self.relations]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise SchemaError(f"duplicate relation declaration: {', '.join(dup)}")
        for dc in self.dcs:
            for a in dc.atoms:
                self._check_atom(a, "denial constraint")
        for ind in self.inds:
            self._check_atom(ind.lhs, "inclusion dependency")
            self._check_atom(ind.rhs, "inclusion dependency")

    def _check_atom(self, atom: Atom, where: str) -> None:
        sig = self.relation_map.get(atom.rel)
        if sig is None:
            raise SchemaError(f"{where} uses undeclared relation {atom.rel}")
        if sig.arity != atom.arity:
            raise SchemaError(
                f"{where} uses {atom.rel}/{atom.arity}, declared arity is {sig.arity}"
            )

    @cached_property
    def relation_map(self) -> dict[str, RelationSig]:
        return {r.name: r for r in self.relations}

    def relation(self, name: str) -> RelationSig:
        try:
            return self.relation_map[name]
        except KeyError:
            raise SchemaError(f"undeclared relation {name}") from None

    @property
    def declared_keys(self) -> tuple[RelationSig, ...]:
        return tuple(r for r in self.relations if r.key_declared)

    def key_constraints_as_dcs(self) -> tuple[DenialConstraint, ...]:
        """Expand every declared key into its denial-constraint form: one
        constraint per non-key index, over two atoms agreeing on the key."""
        out = []
        for sig in self.relations:
            if not sig.key_declared:
                continue
            xs = [Var(f"X{i}") for i in range(1, sig.arity + 1)]
            ys = [
                xs[i - 1] if i in sig.key else Var(f"Y{i}")
                for i in range(1, sig.arity + 1)
            ]
            for i in sig.nonkey_tuple:
                out.append(
                    DenialConstraint(
                        atoms=(Atom(sig.name, tuple(xs)), Atom(sig.name, tuple(ys))),
                        comparisons=(Comparison("!=", xs[i - 1], ys[i - 1]),),
                    )
                )
        return tuple(out)

    def validate_db(self, db: "Database") -> None:
        for f in db.facts:
            sig = self.relation_map.get(f.rel)
            if sig is None:
                raise SchemaError(f"fact over undeclared relation {f.rel}")
            if sig.arity != len(f.args):
                raise SchemaError(
                    f"fact {f.rel}/{len(f.args)} does not match declared arity {sig.arity}"
                )

    def without_inds(self) -> "Schema":
        return replace(self, inds=())

    def keys_only(self) -> "Schema":
        """Schema retaining only the declared key dependencies."""
        return replace(self, dcs=(), inds=())


@dataclass(frozen=True)
class Database:
    facts: frozenset[Fact] = frozenset()

    @classmethod
    def of(cls, facts: Iterable[Fact]) -> "Database":
        return cls(frozenset(facts))

    def __iter__(self) -> Iterator[Fact]:
        return iter(self.facts)

    def __len__(self) -> int:
        return len(self.facts)

    def __contains__(self, f: Fact) -> bool:
        return f in self.facts

    @cached_property
    def vals(self) -> frozenset[str]:
        return frozenset(a for f in self.facts for a in f.args)

    @cached_property
    def by_rel(self) -> dict[str, tuple[tuple[str, ...], ...]]:
        out: dict[str, list[tuple[str, ...]]] = {}
        for f in self.facts:
            out.setdefault(f.rel, []).append(f.args)
        return {
            rel: tuple(sorted(rows, key=lambda r: tuple(constant_sort_key(a) for a in r)))
            for rel, rows in out.items()
        }

    def rows(self, rel: str) -> tuple[tuple[str, ...], ...]:
        return self.by_rel.get(rel, ())

    def sorted_facts(self) -> list[Fact]:
        return sorted(self.facts, key=fact_sort_key)

    def union(self, other: "Database | Iterable[Fact]") -> "Database":
        other_facts = other.facts if isinstance(other, Database) else frozenset(other)
        return Database(self.facts | other_facts)

    def difference(self, other: "Database | Iterable[Fact]") -> "Database":
        other_facts = other.facts if isinstance(other, Database) else frozenset(other)
        return Database(self.facts - other_facts)


def db_sort_key(db: Database) -> tuple:
    return tuple(fact_sort_key(f) for f in db.sorted_facts())


@dataclass(frozen=True)
class Disjunct:
    """One conjunctive branch of a union query: head terms, relational atoms,
    comparison atoms."""

    head: tuple[Term, ...]
    atoms: tuple[Atom, ...]
    comparisons: tuple[Comparison, ...] = ()

    def __post_init__(self) -> None:
        bound = {v for a in self.atoms for v in a.variables()}
        for t in self.head:
            if isinstance(t, Var) and t not in bound:
                raise SchemaError(f"unsafe head variable {t.name}")
        for c in self.comparisons:
            for v in c.variables():
                if v not in bound:
                    raise SchemaError(f"unsafe comparison variable {v.name}")

    def all_variables(self) -> set[Var]:
        vs = {v for a in self.atoms for v in a.variables()}
        vs.update(t for t in self.head if isinstance(t, Var))
        for c in self.comparisons:
            vs.update(c.variables())
        return vs

    @property
    def head_vars(self) -> frozenset[Var]:
        return frozenset(t for t in self.head if isinstance(t, Var))


@dataclass(frozen=True)
class UnionQuery:
    name: str
    arity: int
    disjuncts: tuple[Disjunct, ...]

    def __post_init__(self) -> None:
        if not self.disjuncts:
            raise SchemaError("query needs at least one rule")
        for d in self.disjuncts:
            if len(d.head) != self.arity:
                raise SchemaError(
                    f"query {self.name}: mixed head arities "
                    f"({len(d.head)} vs {self.arity})"
                )

    @property
    def has_comparisons(self) -> bool:
        return any(d.comparisons for d in self.disjuncts)

    def relation_names(self) -> frozenset[str]:
        return frozenset(a.rel for d in self.disjuncts for a in d.atoms)


@dataclass(frozen=True)
class Violation:
    constraint: str
    facts: tuple[Fact, ...]


@dataclass(frozen=True)
class GateResult:
    supported: bool
    semantics: Semantics
    row: str
    label: str

    def require(self) -> "GateResult":
        if not self.supported:
            raise GateError(
                f"{self.semantics.label} over {self.row} is undecidable ({self.label})"
            )
        return self


# ---------------------------------------------------------------------------
# conjunction matching (shared by consistency checking and query evaluation)


def iter_matches(
    db: Database,
    atoms: tuple[Atom, ...],
    comparisons: tuple[Comparison, ...] = (),
    subst: dict[Var, str] | None = None,
) -> Iterator[dict[Var, str]]:
    """All substitutions matching the conjunction against the database and
    satisfying the comparisons."""

    def resolve(t: Term, env: dict[Var, str]) -> str | None:
        if isinstance(t, Var):
            return env.get(t)
        return t

    def go(i: int, env: dict[Var, str]) -> Iterator[dict[Var, str]]:
        if i == len(atoms):
            for c in comparisons:
                left = resolve(c.left, env)
                right = resolve(c.right, env)
                if left is None or right is None:
                    raise SchemaError(
                        f"comparison variable unbound in {c}"
                    )
                if not eval_comparison(c.op, left, right):
                    return
            yield dict(env)
            return
        atom = atoms[i]
        for row in db.rows(atom.rel):
            new_env = env
            ok = True
            for t, v in zip(atom.terms, row):
                bound = resolve(t, new_env)
                if bound is None:
                    if new_env is env:
                        new_env = dict(env)
                    new_env[t] = v  # type: ignore[index]
                elif bound != v:
                    ok = False
                    break
            if ok:
                yield from go(i + 1, new_env if new_env is not env else dict(env))

    yield from go(0, dict(subst) if subst else {})


# ---------------------------------------------------------------------------
# classification and the decidability gate


def classify_ind(schema: Schema, d: InclusionDependency) -> IndClass:
    """Classify an inclusion dependency against the target key (FK / FSK /
    NKC) and mark safety (source positions inside the source key)."""
    r1 = schema.relation(d.lhs.rel)
    r2 = schema.relation(d.rhs.rel)
    safe = d.pi_l <= r1.key
    if d.pi_r == r2.key:
        return IndClass(IndTag.FK, safe)
    if d.pi_r > r2.key:
        return IndClass(IndTag.FSK, safe)
    return IndClass(IndTag.NKC, None)


def constraint_profile(schema: Schema) -> tuple[str, str]:
    """(dc class, ind class) used to pick the decidability-table row."""
    if schema.dcs:
        dc = "any"
    elif schema.declared_keys:
        dc = "KD"
    else:
        dc = "no"
    if not schema.inds:
        ind = "no"
    else:
        classes = [classify_ind(schema, d) for d in schema.inds]
        if all(c.is_nkc for c in classes):
            ind = "NKC"
        elif all(c.is_sfsk for c in classes):
            ind = "SFSK"
        else:
            ind = "any"
    return dc, ind


# Verdicts per (row, semantics); CM-complete entries with two labels are
# (cyclic, acyclic).
_PT = "in PTIME"
_CONP_C = "coNP-c"
_PI2_C = "Pi^p_2-c"
_IN_PI2 = "in Pi^p_2"
_IN_CONP = "in coNP"
_UNDEC = "undec."

_GATE_TABLE: dict[str, dict[Semantics, tuple[str, str] | str]] = {
    "no DCs + any INDs": {
        Semantics.LOOSELY_SOUND: _PT,
        Semantics.LOOSELY_EXACT: _PT,
        Semantics.CM_COMPLETE: _PT,
    },
    "KDs + no INDs": {
        Semantics.LOOSELY_SOUND: _CONP_C,
        Semantics.LOOSELY_EXACT: _CONP_C,
        Semantics.CM_COMPLETE: _CONP_C,
    },
    "KDs + NKC INDs": {
        Semantics.LOOSELY_SOUND: _CONP_C,
        Semantics.LOOSELY_EXACT: _PI2_C,
        Semantics.CM_COMPLETE: (_IN_PI2, _IN_CONP),
    },
    "KDs + SFSK INDs": {
        Semantics.LOOSELY_SOUND: _IN_PI2,
        Semantics.LOOSELY_EXACT: _IN_PI2,
        Semantics.CM_COMPLETE: (_IN_PI2, _IN_CONP),
    },
    "KDs + arbitrary INDs": {
        Semantics.LOOSELY_SOUND: _UNDEC,
        Semantics.LOOSELY_EXACT: _UNDEC,
        Semantics.CM_COMPLETE: (_IN_PI2, _IN_CONP),
    },
    "arbitrary DCs + arbitrary INDs": {
        Semantics.LOOSELY_SOUND: _UNDEC,
        Semantics.LOOSELY_EXACT: _UNDEC,
        Semantics.CM_COMPLETE: (_PI2_C, _CONP_C),
    },
}


def gate_row(schema: Schema) -> str:
    dc, ind = constraint_profile(schema)
    if dc == "no":
        return "no DCs + any INDs"
    if dc == "any":
        return "arbitrary DCs + arbitrary INDs"
    return {
        "no": "KDs + no INDs",
        "NKC": "KDs + NKC INDs",
        "SFSK": "KDs + SFSK INDs",
        "any": "KDs + arbitrary INDs",
    }[ind]


def decidability_gate(schema: Schema, semantics: Semantics) -> GateResult:
    """Decidability/complexity verdict for the schema's constraint profile.

    Unsupported exactly in the undecidable cells (loosely-sound and
    loosely-exact combined with key dependencies plus key-conflicting
    inclusion dependencies, or with arbitrary denial constraints).
    """
    row = gate_row(schema)
    entry = _GATE_TABLE[row][semantics]
    if isinstance(entry, tuple):
        cyclic, acyclic = entry
        label = cyclic if has_cyclic_inds(schema) else acyclic
    else:
        label = entry
    return GateResult(label != _UNDEC, semantics, row, label)


# ---------------------------------------------------------------------------
# consistency checking


def check_consistency(db: Database, schema: Schema) -> list[Violation]:
    """All constraint violations, deterministically ordered.

    Key violations are reported per conflicting key group, general denial
    constraints per matched fact combination, and inclusion dependencies per
    unsupported left-hand fact.
    """
    schema.validate_db(db)
    out: list[Violation] = []

    for sig in schema.declared_keys:
        groups: dict[tuple[str, ...], set[Fact]] = {}
        for row in db.rows(sig.name):
            key_proj = tuple(row[i - 1] for i in sig.key_tuple)
            groups.setdefault(key_proj, set()).add(Fact(sig.name, row))
        for key_proj in sorted(groups, key=lambda k: tuple(constant_sort_key(a) for a in k)):
            facts = groups[key_proj]
            if len(facts) > 1:
                out.append(
                    Violation(
                        f"key({sig.name})",
                        tuple(sorted(facts, key=fact_sort_key)),
                    )
                )

    for i, dc in enumerate(schema.dcs):
        seen: set[tuple[Fact, ...]] = set()
        for env in iter_matches(db, dc.atoms, dc.comparisons):
            matched = tuple(
                sorted(
                    {
                        Fact(a.rel, tuple(env[t] if isinstance(t, Var) else t for t in a.terms))
                        for a in dc.atoms
                    },
                    key=fact_sort_key,
                )
            )
            if matched not in seen:
                seen.add(matched)
                out.append(Violation(f"dc[{i}]", matched))

    for i, ind in enumerate(schema.inds):
        rhs_proj = {
            tuple(row[r - 1] for _, r in ind.correspondence)
            for row in db.rows(ind.rhs.rel)
        }
        for row in db.rows(ind.lhs.rel):
            lhs_proj = tuple(row[l - 1] for l, _ in ind.correspondence)
            if lhs_proj not in rhs_proj:
                out.append(
                    Violation(f"ind[{i}] {ind}", (Fact(ind.lhs.rel, row),))
                )

    out.sort(key=lambda v: (v.constraint, tuple(fact_sort_key(f) for f in v.facts)))
    return out


def ind_supported(db_facts: frozenset[Fact], fact: Fact, ind: InclusionDependency) -> bool:
    want = tuple(fact.args[l - 1] for l, _ in ind.correspondence)
    for g in db_facts:
        if g.rel == ind.rhs.rel and tuple(
            g.args[r - 1] for _, r in ind.correspondence
        ) == want:
            return True
    return False


# ---------------------------------------------------------------------------
# dependency graph over inclusion dependencies


def ind_dependency_graph(schema: Schema) -> dict[str, frozenset[str]]:
    """Directed graph over relation names, one edge per inclusion dependency."""
    edges: dict[str, set[str]] = {r.name: set() for r in schema.relations}
    for ind in schema.inds:
        edges[ind.lhs.rel].add(ind.rhs.rel)
    return {n: frozenset(vs) for n, vs in edges.items()}


def strongly_connected_components(
    nodes: Iterable[str], edges: dict[str, frozenset[str]] | dict[str, set[str]]
) -> list[frozenset[str]]:
    """Tarjan's algorithm, iterative; components in reverse topological order."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[frozenset[str]] = []
    counter = 0

    for root in nodes:
        if root in index:
            continue
        work: list[tuple[str, Iterator[str]]] = [(root, iter(sorted(edges.get(root, ()))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = low[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(sorted(edges.get(succ, ())))))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == node:
                        break
                comps.append(frozenset(comp))
    return comps


def graph_cycles(graph: dict[str, frozenset[str]]) -> frozenset[frozenset[str]]:
    """Strongly connected components that contain a cycle (size > 1 or a
    self-loop)."""
    comps = strongly_connected_components(graph.keys(), graph)
    cyclic = [
        c
        for c in comps
        if len(c) > 1 or any(n in graph.get(n, frozenset()) for n in c)
    ]
    return frozenset(cyclic)


def has_cyclic_inds(schema: Schema) -> bool:
    return bool(graph_cycles(ind_dependency_graph(schema)))
