"""Structural diff of a predicted DF/PF pair against gold, as triage hints.

The diff emits fine-grained suggestions (Wrong Precondition, Wrong Effect,
Missing Predicate, Missing Action, Missing Parameters) plus init/goal set
differences. Suggestions are machine hints only; the final semantic label
is a human decision recorded in the report's human_label slot.

Alignment is conservative: predicates align by exact name first, then by
arity only when the pairing is unambiguous; actions align by name only.
Anything unalignable surfaces as Missing rather than a guessed match.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import PddlError
from ..model import ActionSchema, Domain, Literal, Problem
from ..parser import parse_domain, parse_problem
from .pipelines import RunRecord

WRONG_PRECONDITION = "Wrong Precondition"
WRONG_EFFECT = "Wrong Effect"
MISSING_PREDICATE = "Missing Predicate"
MISSING_ACTION = "Missing Action"
MISSING_PARAMETERS = "Missing Parameters"

CATEGORIES = (
    WRONG_PRECONDITION,
    WRONG_EFFECT,
    MISSING_PREDICATE,
    MISSING_ACTION,
    MISSING_PARAMETERS,
)


@dataclass(frozen=True)
class Suggestion:
    category: str
    subject: str
    detail: str

    def to_dict(self) -> dict:
        return {"category": self.category, "subject": self.subject, "detail": self.detail}


@dataclass
class TriageReport:
    suggestions: tuple[Suggestion, ...] = ()
    init_missing: tuple[str, ...] = ()
    init_extra: tuple[str, ...] = ()
    goal_missing: tuple[str, ...] = ()
    goal_extra: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()
    human_label: str | None = None

    def to_dict(self) -> dict:
        return {
            "suggestions": [s.to_dict() for s in self.suggestions],
            "init_missing": list(self.init_missing),
            "init_extra": list(self.init_extra),
            "goal_missing": list(self.goal_missing),
            "goal_extra": list(self.goal_extra),
            "notes": list(self.notes),
            "human_label": self.human_label,
        }


def _align_predicates(gold: Domain, predicted: Domain) -> dict[str, str]:
    """Map predicted predicate names to gold names; exact, then unique arity."""
    gold_by_name = {p.name: p for p in gold.predicates}
    mapping = {
        p.name: p.name for p in predicted.predicates if p.name in gold_by_name
    }
    gold_left = [p for p in gold.predicates if p.name not in mapping.values()]
    pred_left = [p for p in predicted.predicates if p.name not in mapping]
    for arity in sorted({len(p.params) for p in gold_left}):
        gold_slot = [p for p in gold_left if len(p.params) == arity]
        pred_slot = [p for p in pred_left if len(p.params) == arity]
        if len(gold_slot) == 1 and len(pred_slot) == 1:
            mapping[pred_slot[0].name] = gold_slot[0].name
    return mapping


def _canon(literal: Literal, positions: dict[str, int], rename: dict[str, str]):
    args = tuple(
        ("param", positions[a]) if a in positions else ("const", a)
        for a in literal.args
    )
    return (literal.positive, rename.get(literal.predicate, literal.predicate), args)


def _show(canon, param_names: tuple[str, ...]) -> str:
    positive, name, args = canon
    shown = [
        f"?{param_names[value]}" if kind == "param" else value
        for kind, value in args
    ]
    body = " ".join([name, *shown])
    return f"({body})" if positive else f"(not ({body}))"


def _literal_set(literals, positions, rename):
    return {_canon(l, positions, rename) for l in literals}


def _diff_detail(missing, extra, param_names) -> str:
    parts = []
    if missing:
        parts.append("missing " + ", ".join(sorted(_show(c, param_names) for c in missing)))
    if extra:
        parts.append("extra " + ", ".join(sorted(_show(c, param_names) for c in extra)))
    return "; ".join(parts)


def _diff_action(
    gold: ActionSchema, predicted: ActionSchema, rename: dict[str, str]
) -> list[Suggestion]:
    if len(gold.params) != len(predicted.params):
        return [
            Suggestion(
                MISSING_PARAMETERS,
                gold.name,
                f"gold has {len(gold.params)} parameters, "
                f"prediction has {len(predicted.params)}",
            )
        ]
    gold_pos = {p.name: i for i, p in enumerate(gold.params)}
    pred_pos = {p.name: i for i, p in enumerate(predicted.params)}
    names = tuple(p.name for p in gold.params)
    out = []

    gold_pre = _literal_set(gold.precondition, gold_pos, {})
    pred_pre = _literal_set(predicted.precondition, pred_pos, rename)
    if gold_pre != pred_pre:
        detail = _diff_detail(gold_pre - pred_pre, pred_pre - gold_pre, names)
        out.append(Suggestion(WRONG_PRECONDITION, gold.name, detail))

    gold_eff = _literal_set(gold.add_effects, gold_pos, {}) | {
        (False,) + c[1:] for c in _literal_set(gold.del_effects, gold_pos, {})
    }
    pred_eff = _literal_set(predicted.add_effects, pred_pos, rename) | {
        (False,) + c[1:] for c in _literal_set(predicted.del_effects, pred_pos, rename)
    }
    if gold_eff != pred_eff:
        detail = _diff_detail(gold_eff - pred_eff, pred_eff - gold_eff, names)
        out.append(Suggestion(WRONG_EFFECT, gold.name, detail))
    return out


def _atom_strings(literals, rename: dict[str, str]) -> set[str]:
    out = set()
    for literal in literals:
        name = rename.get(literal.predicate, literal.predicate)
        out.add(str(Literal(name, literal.args, literal.positive)))
    return out


def triage_errors(
    record: RunRecord, gold_domain: Domain, gold_problem: Problem
) -> TriageReport:
    """Diff the record's predicted pair against gold; attaches report to record."""
    if record.pipeline != "formalizer":
        raise ValueError("triage applies to formalizer records")
    df_text = record.extracted.get("df_text")
    pf_text = record.extracted.get("pf_text")
    if not df_text or not pf_text:
        raise ValueError("triage needs extracted df_text and pf_text")

    notes: list[str] = []
    suggestions: list[Suggestion] = []
    report = TriageReport()

    try:
        predicted_domain = parse_domain(df_text)
    except PddlError as exc:
        report.notes = (f"predicted domain failed to parse: {exc}",)
        record.triage = report.to_dict()
        return report

    rename = _align_predicates(gold_domain, predicted_domain)
    aligned_gold = set(rename.values())
    for predicate in gold_domain.predicates:
        if predicate.name not in aligned_gold:
            suggestions.append(
                Suggestion(
                    MISSING_PREDICATE,
                    predicate.name,
                    f"no predicted predicate aligns with {predicate.name}"
                    f"/{len(predicate.params)}",
                )
            )
    for predicate in predicted_domain.predicates:
        if predicate.name not in rename:
            notes.append(f"unaligned predicted predicate: {predicate.name}")

    predicted_actions = predicted_domain.action_map()
    for action in gold_domain.actions:
        predicted = predicted_actions.get(action.name)
        if predicted is None:
            suggestions.append(
                Suggestion(MISSING_ACTION, action.name, "no predicted action with this name")
            )
            continue
        suggestions.extend(_diff_action(action, predicted, rename))
    for name in predicted_actions:
        if name not in gold_domain.action_map():
            notes.append(f"unaligned predicted action: {name}")

    try:
        predicted_problem = parse_problem(pf_text, predicted_domain)
    except PddlError as exc:
        notes.append(f"predicted problem failed to parse: {exc}")
        predicted_problem = None

    if predicted_problem is not None:
        gold_init = _atom_strings(gold_problem.init, {})
        pred_init = _atom_strings(predicted_problem.init, rename)
        gold_goal = _atom_strings(gold_problem.goal, {})
        pred_goal = _atom_strings(predicted_problem.goal, rename)
        report.init_missing = tuple(sorted(gold_init - pred_init))
        report.init_extra = tuple(sorted(pred_init - gold_init))
        report.goal_missing = tuple(sorted(gold_goal - pred_goal))
        report.goal_extra = tuple(sorted(pred_goal - gold_goal))

    report.suggestions = tuple(suggestions)
    report.notes = tuple(notes)
    record.triage = report.to_dict()
    return report
