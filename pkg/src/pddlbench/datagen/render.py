"""Render natural-language domain/problem descriptions from phrase tables.

Heavy and moderate rendering is deterministic template interpretation;
natural rendering drafts text through the LLM gateway and always returns a
human review checklist because drafts are never trusted automatically.
"""

from __future__ import annotations

import random
import re
from typing import Iterable, Mapping, Sequence

from ..assets import asset_text
from ..errors import MissingLexEntry, UnsupportedDomain
from ..llm import LlmClient, LlmRequest
from ..model import ActionSchema, Domain, Literal, Problem
from .lexicon import ActionFrame, Lexicalization

# Domains whose heavy DD ships as a fixed text instead of being rendered.
HEAVY_DD_CONSTANTS = {
    "logistics": "dd/logistics_heavy.txt",
    "barman": "dd/barman_heavy.txt",
}

MODERATE_DD_CONSTANTS = {
    "blocksworld": "dd/blocksworld_moderate.txt",
    "logistics": "dd/logistics_moderate.txt",
}

NATURAL_SEEDS = {
    "blocksworld": ("natural/blocksworld_dd.txt", "natural/blocksworld_pd.txt"),
    "logistics": ("natural/logistics_dd.txt", "natural/logistics_pd.txt"),
}

REVIEW_CHECKLIST = (
    "Every predicate of the domain is implied by the description.",
    "Every action's preconditions are implied, with no extra conditions.",
    "Every action's effects are implied, with no extra effects.",
    "The problem text matches the initial state and goal exactly.",
    "No information beyond the formal problem is introduced.",
    "The language differs from other instances rather than repeating a template.",
    "No sentence is ambiguous about which object or action it refers to.",
)


def _cap(name: str) -> str:
    return name[:1].upper() + name[1:]


def _phrase(template: str, args: Sequence[str]) -> str:
    if "{cap0}" in template:
        template = template.replace("{cap0}", _cap(args[0]))
    return template.format(*args)


def _join(items: Sequence[str], oxford: bool) -> str:
    if not items:
        return ""
    if len(items) == 1:
        return items[0]
    if len(items) == 2:
        return f"{items[0]} and {items[1]}"
    link = ", and " if oxford else " and "
    return ", ".join(items[:-1]) + link + items[-1]


def _dd_items(
    lex: Lexicalization,
    frame: ActionFrame,
    action: ActionSchema,
    literals: Iterable[Literal],
) -> list[str]:
    if len(frame.arg_names) < len(action.params):
        raise MissingLexEntry(
            f"frame for action '{action.name}' names {len(frame.arg_names)} "
            f"arguments but the action has {len(action.params)} parameters"
        )
    display = {
        "?" + p.name: frame.arg_names[i] for i, p in enumerate(action.params)
    }
    items = []
    for lit in literals:
        if lit.predicate not in lex.dd_predicates:
            raise MissingLexEntry(
                f"no domain phrase for predicate '{lit.predicate}'"
            )
        args = [display.get(a, a) for a in lit.args]
        items.append(_phrase(lex.dd_predicates[lit.predicate], args))
    return items


def _ordered_adds(action: ActionSchema, frame: ActionFrame) -> tuple[Literal, ...]:
    if frame.add_order is None:
        return action.add_effects
    rank = {name: i for i, name in enumerate(frame.add_order)}
    fallback = len(rank)
    return tuple(
        sorted(
            action.add_effects,
            key=lambda l: (rank.get(l.predicate, fallback),),
        )
    )


def _action_sentences(
    lex: Lexicalization, action: ActionSchema, frame: ActionFrame
) -> list[str]:
    cap = _cap(action.name)
    if frame.style == "facts":
        pre_frame = f"To perform {cap} action, the following facts need to be true:"
        post_frame = f"Once {cap} action is performed the following facts will be"
    else:
        pre_frame = f"To perform {cap} action, the following needs to be true:"
        post_frame = f"Once {cap} action is performed the following will be"

    sentences = []
    pre = _dd_items(lex, frame, action, action.precondition)
    if pre:
        sentences.append(f"{pre_frame} {', '.join(pre)}.")
    add = _dd_items(lex, frame, action, _ordered_adds(action, frame))
    if add:
        sentences.append(f"{post_frame} true: {', '.join(add)}.")
    dele = _dd_items(lex, frame, action, action.del_effects)
    if dele:
        comma = "," if frame.del_comma else ""
        sentences.append(f"{post_frame} false:{comma} {', '.join(dele)}.")
    return sentences


def render_heavy(domain: Domain, lex: Lexicalization) -> str:
    """Heavily templated domain description: menu plus one sentence triple per action."""
    if lex.dd_intro is None or not lex.frames:
        raise MissingLexEntry(
            f"domain '{domain.name}' has no heavy description templates"
        )
    frames = dict(lex.frames)
    missing = [a.name for a in domain.actions if a.name not in frames]
    if missing:
        raise MissingLexEntry(
            "no action frame for: " + ", ".join(sorted(missing))
        )

    by_name = domain.action_map()
    menu_names = [n for n in lex.menu_order if n in by_name]
    menu_names += [a.name for a in domain.actions if a.name not in lex.menu_order]

    lines = [lex.dd_intro, ""]
    lines += [frames[name].menu for name in menu_names]
    lines += ["", lex.dd_restrictions_intro]
    for action in domain.actions:
        lines += _action_sentences(lex, action, frames[action.name])
    return "\n".join(lines) + "\n"


def heavy_dd_text(domain_tag: str, domain: Domain, lex: Lexicalization) -> str:
    """Heavy DD for a dataset instance: rendered, or the shipped constant."""
    if domain_tag in HEAVY_DD_CONSTANTS:
        return asset_text(HEAVY_DD_CONSTANTS[domain_tag])
    return render_heavy(domain, lex)


def _pd_item(
    lex: Lexicalization, lit: Literal, overrides: Mapping[str, str] | None
) -> str:
    template = None
    if overrides:
        template = overrides.get(lit.predicate)
    if template is None:
        template = lex.pd_predicates.get(lit.predicate)
    if template is None:
        raise MissingLexEntry(f"no problem phrase for predicate '{lit.predicate}'")
    return _phrase(template, lit.args)


def _ordered(
    literals: tuple[Literal, ...], lex: Lexicalization, mode: str
) -> list[Literal]:
    if mode == "file":
        return list(literals)
    if mode == "alpha":
        return sorted(literals, key=lambda l: (l.predicate, l.args))
    if mode in ("grouped", "grouped_sorted"):
        rank = {name: i for i, name in enumerate(lex.group_order)}
        fallback = len(rank)
        groups: dict[str, list[Literal]] = {}
        for lit in literals:
            groups.setdefault(lit.predicate, []).append(lit)
        ordered_preds = sorted(
            groups, key=lambda p: (rank.get(p, fallback), p)
        )
        out: list[Literal] = []
        for pred in ordered_preds:
            members = groups[pred]
            if mode == "grouped_sorted":
                members = sorted(members, key=lambda l: l.args)
            out.extend(members)
        return out
    raise ValueError(f"unknown ordering mode {mode!r}")


def _preamble(problem: Problem, lex: Lexicalization) -> list[str]:
    rendered = [
        lex.preamble_types[typ].format(name)
        for name, typ in problem.objects
        if typ in lex.preamble_types
    ]
    sentences = [lex.preamble_intro + _join(rendered, lex.oxford) + "."]
    levels = [name for name, typ in problem.objects if typ == "level"]
    if levels:
        sentences.append(lex.levels_intro + _join(levels, lex.oxford) + ".")
    cocktails = [name for name, typ in problem.objects if typ == "cocktail"]
    if cocktails:
        sentences.append(lex.cocktails_intro + _join(cocktails, lex.oxford) + ".")
    return sentences


def render_heavy_pd(
    problem: Problem,
    lex: Lexicalization,
    overrides: Mapping[str, str] | None = None,
) -> str:
    """Heavily templated problem description: init sentence then goal sentence."""
    lines = []
    if lex.preamble_intro:
        lines += _preamble(problem, lex)
    init_items = [
        _pd_item(lex, lit, overrides)
        for lit in _ordered(problem.init, lex, lex.init_order)
    ]
    goal_items = [
        _pd_item(lex, lit, overrides)
        for lit in _ordered(problem.goal, lex, lex.goal_order)
    ]
    lines.append(lex.init_prefix + (_join(init_items, lex.oxford) or "nothing") + ".")
    lines.append(lex.goal_prefix + (_join(goal_items, lex.oxford) or "nothing") + ".")
    return "\n".join(lines) + "\n"


def render_moderate(domain_tag: str) -> str:
    """Moderately templated domain description (fixed hand-written text)."""
    if domain_tag not in MODERATE_DD_CONSTANTS:
        raise UnsupportedDomain(
            f"no moderately templated description for domain '{domain_tag}'"
        )
    return asset_text(MODERATE_DD_CONSTANTS[domain_tag])


def render_moderate_pd(problem: Problem, lex: Lexicalization) -> str:
    """Moderate problem description: the heavy PD with per-domain phrase swaps."""
    if lex.moderate_pd_overrides is None:
        raise UnsupportedDomain(
            f"no moderately templated description for domain '{lex.domain_tag}'"
        )
    return render_heavy_pd(problem, lex, overrides=lex.moderate_pd_overrides)


def dd_phrases(domain: Domain, lex: Lexicalization) -> list[str]:
    """Every lexicalized literal phrase the heavy DD must contain, with multiplicity."""
    phrases = []
    for action in domain.actions:
        frame = lex.frames[action.name]
        phrases += _dd_items(lex, frame, action, action.precondition)
        phrases += _dd_items(lex, frame, action, action.add_effects)
        phrases += _dd_items(lex, frame, action, action.del_effects)
    return phrases


def pd_phrases(
    problem: Problem,
    lex: Lexicalization,
    overrides: Mapping[str, str] | None = None,
) -> list[str]:
    """Every lexicalized init/goal phrase the PD must contain, with multiplicity."""
    return [_pd_item(lex, lit, overrides) for lit in problem.init + problem.goal]


def substring_accounting(phrases: Sequence[str], text: str) -> dict[str, tuple[int, int]]:
    """Count boundary-delimited occurrences of each phrase in the text.

    Returns phrase -> (expected, actual) where expected is the phrase's
    multiplicity in ``phrases``. Boundary matching keeps "clear block" from
    also counting inside "clear block2".
    """
    expected: dict[str, int] = {}
    for phrase in phrases:
        expected[phrase] = expected.get(phrase, 0) + 1
    out = {}
    for phrase, count in expected.items():
        pattern = r"(?<![a-z0-9])" + re.escape(phrase) + r"(?![a-z0-9])"
        actual = len(re.findall(pattern, text, flags=re.IGNORECASE))
        out[phrase] = (count, actual)
    return out


def _config_text(problem_config: Mapping) -> str:
    if "heavy_pd" in problem_config:
        return problem_config["heavy_pd"].strip()
    stacks = lambda ss: "; ".join(", ".join(stack) for stack in ss)
    return (
        f"Blocks ({problem_config['num_blocks']}): "
        + ", ".join(problem_config["blocks"])
        + "\nInitial stacks, each listed bottom to top: "
        + stacks(problem_config["init_stacks"])
        + "\nGoal stacks, each listed bottom to top: "
        + stacks(problem_config["goal_stacks"])
    )


def render_natural(
    seed_dd: str,
    problem_config: Mapping,
    llm: LlmClient,
    rng: random.Random,
    model_id: str = "gpt-4o",
    pd_exemplars: Sequence[str] = (),
    temperature: float = 1.0,
    max_output_tokens: int = 1024,
) -> tuple[str, str, tuple[str, ...]]:
    """Draft a natural DD/PD pair with the LLM.

    The DD is a paraphrase of the seed text; the PD humanizes the symbolic
    configuration, guided by exemplar descriptions. Drafts are returned with
    the review checklist and must be human-verified before use; they are
    never auto-accepted.
    """
    replicate = rng.randrange(2**31)

    dd_prompt = asset_text("prompts/natural_dd.txt").replace("{seed_dd}", seed_dd)
    dd_req = LlmRequest(
        model_id=model_id,
        messages=(("user", dd_prompt),),
        temperature=temperature,
        max_output_tokens=max_output_tokens,
    )
    dd_text = llm.complete(dd_req, replicate_index=replicate).text.strip() + "\n"

    exemplar_block = "\n\n".join(e.strip() for e in pd_exemplars) or "(none)"
    pd_prompt = (
        asset_text("prompts/natural_pd.txt")
        .replace("{exemplars}", exemplar_block)
        .replace("{configuration}", _config_text(problem_config))
    )
    pd_req = LlmRequest(
        model_id=model_id,
        messages=(("user", pd_prompt),),
        temperature=temperature,
        max_output_tokens=max_output_tokens,
    )
    pd_text = llm.complete(pd_req, replicate_index=replicate).text.strip() + "\n"

    return dd_text, pd_text, REVIEW_CHECKLIST
