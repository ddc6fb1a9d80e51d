"""Plan validation by replay against gold PDDL, in the style of VAL.

A plan is Valid iff every step is applicable in sequence from the initial
state and the final state satisfies the goal. Ill-formed steps (unknown
action, wrong arity, unknown object, argument of the wrong type) are
reported as IllFormed; a well-formed but inapplicable step or an unmet
goal is Invalid. Either way the report pins the first failing step and the
exact literals that failed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PddlError, PddlSyntaxError
from .ground import applicable, apply_action, ground_action, satisfies
from .model import Domain, GroundAtom, Literal, Plan, Problem, State
from .parser import parse_domain, parse_plan, parse_problem

VALID = "valid"
INVALID = "invalid"
ILL_FORMED = "ill_formed"

UNKNOWN_ACTION = "unknown_action"
ARITY_MISMATCH = "arity_mismatch"
UNKNOWN_OBJECT = "unknown_object"
TYPE_MISMATCH = "type_mismatch"
PRECONDITION_UNSATISFIED = "precondition_unsatisfied"
GOAL_UNSATISFIED = "goal_unsatisfied"


@dataclass(frozen=True)
class FailureReason:
    kind: str
    detail: str = ""
    literals: tuple[Literal, ...] = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "detail": self.detail,
            "literals": [str(l) for l in self.literals],
        }


@dataclass
class ValidationReport:
    verdict: str
    failure_step: int | None = None
    failure_reason: FailureReason | None = None
    final_state: State | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "failure_step": self.failure_step,
            "failure_reason": self.failure_reason.to_dict() if self.failure_reason else None,
            "final_state": sorted(str(a) for a in self.final_state)
            if self.final_state is not None
            else None,
        }


def _ill_formed(step_index: int, kind: str, detail: str) -> ValidationReport:
    return ValidationReport(
        verdict=ILL_FORMED,
        failure_step=step_index,
        failure_reason=FailureReason(kind, detail),
    )


def validate(domain: Domain, problem: Problem, plan: Plan) -> ValidationReport:
    """Replay ``plan`` from the problem's initial state."""
    schemas = domain.action_map()
    objects = problem.object_map()
    state: State = problem.init_atoms()

    for i, step in enumerate(plan.steps):
        schema = schemas.get(step.name)
        if schema is None:
            return _ill_formed(i, UNKNOWN_ACTION, f"no action named '{step.name}'")
        if len(step.args) != len(schema.params):
            return _ill_formed(
                i,
                ARITY_MISMATCH,
                f"'{step.name}' takes {len(schema.params)} arguments, got {len(step.args)}",
            )
        for arg, param in zip(step.args, schema.params):
            otype = objects.get(arg)
            if otype is None:
                return _ill_formed(i, UNKNOWN_OBJECT, f"unknown object '{arg}'")
            if not domain.is_subtype(otype, param.type):
                return _ill_formed(
                    i,
                    TYPE_MISMATCH,
                    f"'{arg}' has type '{otype}', parameter ?{param.name} needs '{param.type}'",
                )
        binding = {"?" + p.name: a for p, a in zip(schema.params, step.args)}
        action = ground_action(schema, binding)
        if not applicable(state, action):
            failed: list[Literal] = []
            for atom in sorted(action.pre_pos - state):
                failed.append(Literal(atom.predicate, atom.args, True))
            for atom in sorted(action.pre_neg & state):
                failed.append(Literal(atom.predicate, atom.args, False))
            return ValidationReport(
                verdict=INVALID,
                failure_step=i,
                failure_reason=FailureReason(
                    PRECONDITION_UNSATISFIED,
                    f"step {i} {step} is not applicable",
                    tuple(failed),
                ),
            )
        state = apply_action(state, action)

    goal_pos = frozenset(GroundAtom(l.predicate, l.args) for l in problem.goal if l.positive)
    goal_neg = frozenset(GroundAtom(l.predicate, l.args) for l in problem.goal if not l.positive)
    if satisfies(state, goal_pos, goal_neg):
        return ValidationReport(verdict=VALID, final_state=state)
    failed = []
    for atom in sorted(goal_pos - state):
        failed.append(Literal(atom.predicate, atom.args, True))
    for atom in sorted(goal_neg & state):
        failed.append(Literal(atom.predicate, atom.args, False))
    return ValidationReport(
        verdict=INVALID,
        failure_step=None,
        failure_reason=FailureReason(
            GOAL_UNSATISFIED, "plan ran to completion but the goal does not hold", tuple(failed)
        ),
        final_state=state,
    )


@dataclass
class CorrectnessOutcome:
    """Result of replaying extracted plan text against the gold pair."""

    status: str  # correct | incorrect | plan_parse_failure
    report: ValidationReport | None = None
    error: str | None = None

    CORRECT = "correct"
    INCORRECT = "incorrect"
    PLAN_PARSE_FAILURE = "plan_parse_failure"


def correctness_check(
    gold_df_text: str, gold_pf_text: str, plan_text: str
) -> CorrectnessOutcome:
    """Parse plan text and validate it against the gold domain/problem pair.

    The gold texts are trusted inputs here; errors in them propagate.
    """
    domain = parse_domain(gold_df_text)
    problem = parse_problem(gold_pf_text, domain)
    try:
        plan = parse_plan(plan_text)
    except PddlSyntaxError as exc:
        return CorrectnessOutcome(
            CorrectnessOutcome.PLAN_PARSE_FAILURE, error=str(exc)
        )
    report = validate(domain, problem, plan)
    if report.verdict == VALID:
        return CorrectnessOutcome(CorrectnessOutcome.CORRECT, report=report)
    return CorrectnessOutcome(CorrectnessOutcome.INCORRECT, report=report)
