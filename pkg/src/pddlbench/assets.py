"""Access to packaged data assets: gold PDDL pairs, description texts, prompts."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .errors import UnsupportedDomain
from .model import Domain, Problem
from .parser import parse_domain, parse_problem

DOMAIN_TAGS = ("blocksworld", "mystery_blocksworld", "logistics", "barman")

# Gold problem file shipped alongside each gold domain.
_GOLD_PROBLEMS = {
    "blocksworld": "p99.pddl",
    "mystery_blocksworld": "p01.pddl",
    "logistics": "logistics-4-0.pddl",
    "barman": "prob.pddl",
}


def asset_root() -> Path:
    return Path(resources.files("pddlbench") / "assets")


def asset_text(relative: str) -> str:
    path = asset_root() / relative
    return path.read_text(encoding="utf-8")


def _check_tag(domain_tag: str) -> None:
    if domain_tag not in DOMAIN_TAGS:
        raise UnsupportedDomain(
            f"unknown domain '{domain_tag}', expected one of {', '.join(DOMAIN_TAGS)}"
        )


def gold_domain_text(domain_tag: str) -> str:
    _check_tag(domain_tag)
    return asset_text(f"gold/{domain_tag}/domain.pddl")


def gold_problem_text(domain_tag: str) -> str:
    _check_tag(domain_tag)
    return asset_text(f"gold/{domain_tag}/{_GOLD_PROBLEMS[domain_tag]}")


def gold_domain(domain_tag: str) -> Domain:
    return parse_domain(gold_domain_text(domain_tag))


def gold_problem(domain_tag: str) -> Problem:
    return parse_problem(gold_problem_text(domain_tag), gold_domain(domain_tag))
