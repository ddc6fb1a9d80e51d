"""Typed model for the STRIPS + :typing fragment of PDDL.

Symbols are plain lowercase strings. Variable terms keep their leading ``?``
so a term is self-describing: ``is_variable(t)`` just looks at the sigil.
Collections preserve declaration / file order; parsing never reorders, and
the printer emits stored order, so parse(print(x)) reproduces x exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import SemanticError

OBJECT_TYPE = "object"

_SYMBOL_RE = re.compile(r"[a-z][a-z0-9_-]*\Z")


def is_valid_symbol(text: str) -> bool:
    return bool(_SYMBOL_RE.match(text))


def is_variable(term: str) -> bool:
    return term.startswith("?")


@dataclass(frozen=True)
class TypedVar:
    """A parameter like ``?ob - block``; name is stored without the sigil."""

    name: str
    type: str = OBJECT_TYPE


@dataclass(frozen=True)
class Predicate:
    name: str
    params: tuple[TypedVar, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class Literal:
    """A possibly-negated atom; args mix constants and ``?``-prefixed variables."""

    predicate: str
    args: tuple[str, ...] = ()
    positive: bool = True

    def negated(self) -> "Literal":
        return Literal(self.predicate, self.args, not self.positive)

    def is_ground(self) -> bool:
        return not any(is_variable(a) for a in self.args)

    def __str__(self) -> str:
        inner = self.predicate + "".join(" " + a for a in self.args)
        return f"({inner})" if self.positive else f"(not ({inner}))"


class GroundAtom(NamedTuple):
    """A variable-free atom; the unit of state."""

    predicate: str
    args: tuple[str, ...]

    def __str__(self) -> str:
        return "(" + self.predicate + "".join(" " + a for a in self.args) + ")"


# A state is just the set of atoms true under the closed-world assumption.
State = frozenset[GroundAtom]


def atom_of(literal: Literal) -> GroundAtom:
    if not literal.is_ground():
        raise SemanticError(f"literal {literal} is not ground")
    return GroundAtom(literal.predicate, literal.args)


@dataclass(frozen=True)
class ActionSchema:
    """A lifted action. Delete effects are stored as positive literals.

    Invariants enforced here: parameter names unique, every variable in the
    body bound by a parameter, add and delete lists disjoint (the parser
    normalizes add/delete overlaps away before construction).
    """

    name: str
    params: tuple[TypedVar, ...]
    precondition: tuple[Literal, ...]
    add_effects: tuple[Literal, ...]
    del_effects: tuple[Literal, ...]

    def __post_init__(self):
        seen = set()
        for p in self.params:
            if p.name in seen:
                raise SemanticError(
                    f"action {self.name}: duplicate parameter ?{p.name}"
                )
            seen.add(p.name)
        bound = {"?" + p.name for p in self.params}
        for lit in self.precondition + self.add_effects + self.del_effects:
            for term in lit.args:
                if is_variable(term) and term not in bound:
                    raise SemanticError(
                        f"action {self.name}: unbound variable {term} in {lit}"
                    )
        adds = {(l.predicate, l.args) for l in self.add_effects}
        dels = {(l.predicate, l.args) for l in self.del_effects}
        if adds & dels:
            clash = sorted(str(Literal(p, a)) for p, a in adds & dels)
            raise SemanticError(
                f"action {self.name}: add and delete lists overlap on {clash}"
            )


@dataclass(frozen=True)
class Domain:
    """A parsed domain. ``types`` maps child type -> parent type."""

    name: str
    requirements: frozenset[str] = frozenset()
    types: tuple[tuple[str, str], ...] = ()
    predicates: tuple[Predicate, ...] = ()
    actions: tuple[ActionSchema, ...] = ()

    def predicate_map(self) -> dict[str, Predicate]:
        return {p.name: p for p in self.predicates}

    def action_map(self) -> dict[str, ActionSchema]:
        return {a.name: a for a in self.actions}

    def type_parents(self) -> dict[str, str]:
        return dict(self.types)

    def declared_types(self) -> set[str]:
        out = {OBJECT_TYPE}
        for child, parent in self.types:
            out.add(child)
            out.add(parent)
        return out

    def is_subtype(self, child: str, ancestor: str) -> bool:
        """True when ``child`` equals ``ancestor`` or descends from it."""
        if ancestor == OBJECT_TYPE or child == ancestor:
            return True
        parents = self.type_parents()
        cur = child
        seen = set()
        while cur in parents and cur not in seen:
            seen.add(cur)
            cur = parents[cur]
            if cur == ancestor:
                return True
        return False


@dataclass(frozen=True)
class Problem:
    """A parsed problem. ``objects`` preserves declaration order."""

    name: str
    domain_name: str
    objects: tuple[tuple[str, str], ...] = ()
    init: tuple[Literal, ...] = ()
    goal: tuple[Literal, ...] = ()

    def object_map(self) -> dict[str, str]:
        return dict(self.objects)

    def init_atoms(self) -> State:
        return frozenset(atom_of(l) for l in self.init)


@dataclass(frozen=True)
class PlanStep:
    name: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return "(" + self.name + "".join(" " + a for a in self.args) + ")"


@dataclass(frozen=True)
class Plan:
    steps: tuple[PlanStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


def make_plan(steps: Iterable[tuple[str, tuple[str, ...]]]) -> Plan:
    return Plan(tuple(PlanStep(n, a) for n, a in steps))
