"""Grounding: instantiate action schemas over a problem's objects.

Bindings are type-consistent (an object's type must equal the parameter's
type or descend from it); distinct parameters may bind the same object, so
(stack a a) exists as a ground action even though it is never applicable.
Effects apply delete-then-add.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import SemanticError
from .model import (
    ActionSchema,
    Domain,
    GroundAtom,
    Literal,
    PlanStep,
    Problem,
    State,
    is_variable,
)


@dataclass(frozen=True)
class GroundAction:
    name: str
    args: tuple[str, ...]
    pre_pos: frozenset[GroundAtom]
    pre_neg: frozenset[GroundAtom]
    add: frozenset[GroundAtom]
    delete: frozenset[GroundAtom]

    @property
    def step(self) -> PlanStep:
        return PlanStep(self.name, self.args)

    def __str__(self) -> str:
        return str(self.step)


@dataclass(frozen=True)
class GroundTask:
    domain: Domain
    problem: Problem
    actions: tuple[GroundAction, ...]
    init: State
    goal_pos: frozenset[GroundAtom]
    goal_neg: frozenset[GroundAtom]


def bind_literal(lit: Literal, binding: dict[str, str]) -> GroundAtom:
    args = tuple(binding[a] if is_variable(a) else a for a in lit.args)
    return GroundAtom(lit.predicate, args)


def ground_action(schema: ActionSchema, binding: dict[str, str]) -> GroundAction:
    args = tuple(binding["?" + p.name] for p in schema.params)
    return GroundAction(
        name=schema.name,
        args=args,
        pre_pos=frozenset(bind_literal(l, binding) for l in schema.precondition if l.positive),
        pre_neg=frozenset(bind_literal(l, binding) for l in schema.precondition if not l.positive),
        add=frozenset(bind_literal(l, binding) for l in schema.add_effects),
        delete=frozenset(bind_literal(l, binding) for l in schema.del_effects),
    )


def _candidates_by_type(domain: Domain, problem: Problem) -> dict[str, list[str]]:
    """Objects compatible with each type mentioned by any schema parameter."""
    needed = {p.type for a in domain.actions for p in a.params}
    out: dict[str, list[str]] = {}
    for typ in needed:
        out[typ] = [o for o, otype in problem.objects if domain.is_subtype(otype, typ)]
    return out


def _static_predicates(domain: Domain) -> set[str]:
    changed = set()
    for action in domain.actions:
        for lit in action.add_effects + action.del_effects:
            changed.add(lit.predicate)
    return {p.name for p in domain.predicates} - changed


def ground(domain: Domain, problem: Problem, prune_static: bool = False) -> GroundTask:
    """Build the full ground task for a domain/problem pair.

    With ``prune_static`` the grounder drops actions whose static-predicate
    preconditions contradict the initial state (static atoms never change,
    so this cannot alter reachability) and strips those atoms from the
    remaining preconditions.
    """
    from .parser import check_problem_against_domain

    check_problem_against_domain(problem, domain)

    init = problem.init_atoms()
    goal_pos = frozenset(
        GroundAtom(l.predicate, l.args) for l in problem.goal if l.positive
    )
    goal_neg = frozenset(
        GroundAtom(l.predicate, l.args) for l in problem.goal if not l.positive
    )

    statics = _static_predicates(domain) if prune_static else set()
    by_type = _candidates_by_type(domain, problem)

    actions: list[GroundAction] = []
    for schema in domain.actions:
        pools = [by_type[p.type] for p in schema.params]
        for combo in itertools.product(*pools):
            binding = {"?" + p.name: obj for p, obj in zip(schema.params, combo)}
            ga = ground_action(schema, binding)
            if statics:
                static_pos = {a for a in ga.pre_pos if a.predicate in statics}
                static_neg = {a for a in ga.pre_neg if a.predicate in statics}
                if not static_pos <= init or static_neg & init:
                    continue
                ga = GroundAction(
                    name=ga.name,
                    args=ga.args,
                    pre_pos=ga.pre_pos - static_pos,
                    pre_neg=ga.pre_neg - static_neg,
                    add=ga.add,
                    delete=ga.delete,
                )
            actions.append(ga)

    return GroundTask(
        domain=domain,
        problem=problem,
        actions=tuple(actions),
        init=init,
        goal_pos=goal_pos,
        goal_neg=goal_neg,
    )


def applicable(state: State, action: GroundAction) -> bool:
    return action.pre_pos <= state and not (action.pre_neg & state)


def apply_action(state: State, action: GroundAction, check: bool = False) -> State:
    """Successor state under delete-then-add semantics."""
    if check and not applicable(state, action):
        raise SemanticError(f"action {action} is not applicable")
    return (state - action.delete) | action.add


def satisfies(
    state: State,
    goal_pos: frozenset[GroundAtom],
    goal_neg: frozenset[GroundAtom] = frozenset(),
) -> bool:
    return goal_pos <= state and not (goal_neg & state)
