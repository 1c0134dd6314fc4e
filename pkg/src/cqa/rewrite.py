"""Fixpoint expansion of a union of conjunctive queries under inclusion
dependencies.

Two operations are interleaved until no new conjunction (up to variable
renaming) appears: merging unifiable atom pairs inside a conjunction, and
replacing an atom by the source atom of an applicable inclusion dependency,
read right to left.  The original disjuncts are always kept, so the result
is equivalent to the input on every database satisfying the dependencies.
"""
from __future__ import annotations

from collections import deque
from itertools import permutations
from typing import Iterator

from .model import (
    Atom,
    Disjunct,
    InclusionDependency,
    SchemaError,
    Term,
    UnionQuery,
    Var,
)

_MAX_CONJUNCTIONS = 20_000


class RewriteError(Exception):
    pass


def _resolve(t: Term, sub: dict[Var, Term]) -> Term:
    while isinstance(t, Var) and t in sub:
        t = sub[t]
    return t


def _mgu(a: Atom, b: Atom) -> dict[Var, Term] | None:
    if a.rel != b.rel or a.arity != b.arity:
        return None
    sub: dict[Var, Term] = {}
    for s, t in zip(a.terms, b.terms):
        s = _resolve(s, sub)
        t = _resolve(t, sub)
        if s == t:
            continue
        if isinstance(s, Var):
            sub[s] = t
        elif isinstance(t, Var):
            sub[t] = s
        else:
            return None
    return sub


def _apply(t: Term, sub: dict[Var, Term]) -> Term:
    return _resolve(t, sub)


def _subst_disjunct(d: Disjunct, sub: dict[Var, Term]) -> Disjunct:
    head = tuple(_apply(t, sub) for t in d.head)
    atoms: list[Atom] = []
    for a in d.atoms:
        na = Atom(a.rel, tuple(_apply(t, sub) for t in a.terms))
        if na not in atoms:
            atoms.append(na)
    return Disjunct(head, tuple(atoms))


def _occurrences(d: Disjunct, v: Var) -> int:
    n = sum(1 for a in d.atoms for t in a.terms if t == v)
    n += sum(1 for t in d.head if t == v)
    return n


def _fresh_vars(d: Disjunct, n: int) -> list[Var]:
    used = {v.name for v in d.all_variables()}
    out: list[Var] = []
    i = 1
    while len(out) < n:
        name = f"_F{i}"
        if name not in used:
            used.add(name)
            out.append(Var(name))
        i += 1
    return out


def _unify_steps(d: Disjunct) -> Iterator[Disjunct]:
    for i in range(len(d.atoms)):
        for j in range(i + 1, len(d.atoms)):
            sub = _mgu(d.atoms[i], d.atoms[j])
            if sub is not None and sub:
                yield _subst_disjunct(d, sub)


def _ind_steps(d: Disjunct, inds: tuple[InclusionDependency, ...]) -> Iterator[Disjunct]:
    head_vars = d.head_vars
    for idx, atom in enumerate(d.atoms):
        for ind in inds:
            if ind.rhs.rel != atom.rel:
                continue
            # Every position outside the shared ones must hold a variable
            # that occurs nowhere else and is not an output variable.
            ok = True
            for pos in range(1, atom.arity + 1):
                if pos in ind.pi_r:
                    continue
                t = atom.terms[pos - 1]
                if not isinstance(t, Var) or t in head_vars or _occurrences(d, t) != 1:
                    ok = False
                    break
            if not ok:
                continue
            fresh = iter(_fresh_vars(d, ind.lhs.arity))
            new_terms: list[Term] = []
            rhs_pos_for = {l: r for l, r in ind.correspondence}
            for lpos in range(1, ind.lhs.arity + 1):
                if lpos in ind.pi_l:
                    new_terms.append(atom.terms[rhs_pos_for[lpos] - 1])
                else:
                    new_terms.append(next(fresh))
            new_atom = Atom(ind.lhs.rel, tuple(new_terms))
            atoms = list(d.atoms)
            atoms[idx] = new_atom
            deduped: list[Atom] = []
            for a in atoms:
                if a not in deduped:
                    deduped.append(a)
            yield Disjunct(d.head, tuple(deduped))


def canonical_key(d: Disjunct) -> str:
    """Rendering that is invariant under variable renaming; used to detect
    duplicate conjunctions.  Atoms with identical constant shapes are tried
    in every order (bounded) and the smallest rendering wins."""

    def shape(a: Atom) -> tuple:
        return (a.rel, tuple(t if isinstance(t, str) else None for t in a.terms))

    indexed = sorted(range(len(d.atoms)), key=lambda i: shape(d.atoms[i]))
    groups: list[list[int]] = []
    for i in indexed:
        if groups and shape(d.atoms[groups[-1][-1]]) == shape(d.atoms[i]):
            groups[-1].append(i)
        else:
            groups.append([i])

    def render(order: list[int]) -> str:
        names: dict[Var, str] = {}

        def nm(t: Term) -> str:
            if isinstance(t, Var):
                if t not in names:
                    names[t] = f"v{len(names)}"
                return names[t]
            return f"'{t}'"

        head = ",".join(nm(t) for t in d.head)
        body = ";".join(
            f"{d.atoms[i].rel}({','.join(nm(t) for t in d.atoms[i].terms)})"
            for i in order
        )
        return f"({head}):-{body}"

    total_perms = 1
    for g in groups:
        for k in range(2, len(g) + 1):
            total_perms *= k
        if total_perms > 720:
            break
    if total_perms > 720:
        return render([i for g in groups for i in g])

    best: str | None = None
    def expand(prefix: list[int], gi: int) -> None:
        nonlocal best
        if gi == len(groups):
            r = render(prefix)
            if best is None or r < best:
                best = r
            return
        for perm in permutations(groups[gi]):
            expand(prefix + list(perm), gi + 1)

    expand([], 0)
    assert best is not None
    return best


def perfect_rewrite(q: UnionQuery, inds: tuple[InclusionDependency, ...]) -> UnionQuery:
    """Expand ``q`` under the inclusion dependencies; the result evaluates to
    the same answers as ``q`` on any database satisfying them, and computes
    the certain answers when the dependencies are interpreted as sound views.

    Requires a comparison-free query.
    """
    if q.has_comparisons:
        raise SchemaError("perfect rewriting requires a comparison-free query")
    inds = tuple(inds)
    seen: set[str] = set()
    order: list[Disjunct] = []
    work: deque[Disjunct] = deque()

    def add(d: Disjunct) -> None:
        key = canonical_key(d)
        if key in seen:
            return
        if len(order) >= _MAX_CONJUNCTIONS:
            raise RewriteError("rewriting exceeded the conjunction cap")
        seen.add(key)
        order.append(d)
        work.append(d)

    for d in q.disjuncts:
        add(d)
    while work:
        d = work.popleft()
        for nd in _unify_steps(d):
            add(nd)
        for nd in _ind_steps(d, inds):
            add(nd)
    return UnionQuery(q.name, q.arity, tuple(order))
