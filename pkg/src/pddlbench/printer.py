"""Canonical pretty-printers for domains, problems, and plans.

The canonical form is lowercase, two-space indented, and emits collections
in stored (declaration) order, so printing is deterministic, parsing the
output reproduces the value, and re-printing that is byte-identical.
"""

from __future__ import annotations

from .model import (
    OBJECT_TYPE,
    ActionSchema,
    Domain,
    Literal,
    Plan,
    Problem,
    TypedVar,
)


def _typed_names(entries: list[tuple[str, str]], sigil: str = "") -> str:
    """Render ``a b - t c`` style lists, grouping consecutive same-type runs.

    A trailing run of plain ``object`` entries is left bare; that parses back
    to the same types and keeps untyped domains looking untyped.
    """
    groups: list[tuple[list[str], str]] = []
    for name, typ in entries:
        if groups and groups[-1][1] == typ:
            groups[-1][0].append(name)
        else:
            groups.append(([name], typ))
    parts = []
    for idx, (names, typ) in enumerate(groups):
        chunk = " ".join(sigil + n for n in names)
        if typ == OBJECT_TYPE and idx == len(groups) - 1:
            parts.append(chunk)
        else:
            parts.append(f"{chunk} - {typ}")
    return " ".join(parts)


def _params(params: tuple[TypedVar, ...]) -> str:
    return "(" + _typed_names([(p.name, p.type) for p in params], sigil="?") + ")"


def _literal(lit: Literal) -> str:
    inner = "(" + " ".join((lit.predicate,) + lit.args) + ")"
    return inner if lit.positive else f"(not {inner})"


def _conjunction(literals: tuple[Literal, ...]) -> str:
    if not literals:
        return "(and)"
    return "(and " + " ".join(_literal(l) for l in literals) + ")"


def _action(action: ActionSchema) -> str:
    effects = action.add_effects + tuple(l.negated() for l in action.del_effects)
    lines = [
        f"  (:action {action.name}",
        f"    :parameters {_params(action.params)}",
        f"    :precondition {_conjunction(action.precondition)}",
        f"    :effect {_conjunction(effects)})",
    ]
    return "\n".join(lines)


def print_domain(domain: Domain) -> str:
    lines = [f"(define (domain {domain.name})"]
    if domain.requirements:
        flags = " ".join(":" + r for r in sorted(domain.requirements))
        lines.append(f"  (:requirements {flags})")
    if domain.types:
        lines.append(f"  (:types {_typed_names(list(domain.types))})")
    if domain.predicates:
        lines.append("  (:predicates")
        for pred in domain.predicates:
            body = _typed_names([(p.name, p.type) for p in pred.params], sigil="?")
            decl = f"({pred.name} {body})" if body else f"({pred.name})"
            lines.append(f"    {decl}")
        lines[-1] += ")"
    for action in domain.actions:
        lines.append(_action(action))
    return "\n".join(lines) + ")\n"


def print_problem(problem: Problem) -> str:
    lines = [f"(define (problem {problem.name})"]
    if problem.domain_name:
        lines.append(f"  (:domain {problem.domain_name})")
    if problem.objects:
        lines.append(f"  (:objects {_typed_names(list(problem.objects))})")
    lines.append("  (:init")
    for lit in problem.init:
        lines.append(f"    {_literal(lit)}")
    lines[-1] += ")"
    lines.append("  (:goal (and")
    for lit in problem.goal:
        lines.append(f"    {_literal(lit)}")
    lines[-1] += ")))"
    return "\n".join(lines) + "\n"


def print_plan(plan: Plan) -> str:
    if not plan.steps:
        return ""
    return "\n".join(str(s) for s in plan.steps) + "\n"
