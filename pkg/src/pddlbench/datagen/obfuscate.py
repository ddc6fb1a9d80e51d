"""Structure-preserving symbol renaming: blocksworld becomes a mystery domain.

A RenameMap rewrites the domain name, type names, predicate names, action
names, and object names. Variables, PDDL keywords, and the built-in root
type ``object`` are never touched, so the renamed pair is isomorphic to the
original: plans transfer one-to-one and optimal lengths are preserved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from ..errors import IncompleteMap
from ..model import (
    OBJECT_TYPE,
    ActionSchema,
    Domain,
    Literal,
    Plan,
    PlanStep,
    Predicate,
    Problem,
    TypedVar,
    is_valid_symbol,
)
from .instances import COLORS

# Domain-symbol renames used by the shipped mystery domain.
CANONICAL_SYMBOL_MAP: Mapping[str, str] = {
    "blocksworld": "mystery_blocksworld",
    "pickup": "attack",
    "putdown": "succumb",
    "stack": "overcome",
    "unstack": "feast",
    "clear": "province",
    "on-table": "planet",
    "arm-empty": "harmony",
    "holding": "pain",
    "on": "craves",
}

_LETTERS = tuple("abcdefghijklmno")


@dataclass(frozen=True)
class RenameMap:
    """A bijective old-symbol to new-symbol map."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        olds = [old for old, _ in self.pairs]
        news = [new for _, new in self.pairs]
        if len(set(olds)) != len(olds):
            dupes = sorted({o for o in olds if olds.count(o) > 1})
            raise ValueError(f"duplicate source symbols: {', '.join(dupes)}")
        if len(set(news)) != len(news):
            dupes = sorted({n for n in news if news.count(n) > 1})
            raise ValueError(f"distinct symbols mapped to one target: {', '.join(dupes)}")
        for sym in olds + news:
            if not is_valid_symbol(sym):
                raise ValueError(f"invalid symbol in rename map: {sym!r}")

    @classmethod
    def from_dict(cls, mapping: Mapping[str, str]) -> "RenameMap":
        return cls(tuple(mapping.items()))

    def as_dict(self) -> dict[str, str]:
        return dict(self.pairs)

    def inverse(self) -> "RenameMap":
        return RenameMap(tuple((new, old) for old, new in self.pairs))

    def __contains__(self, symbol: str) -> bool:
        return any(old == symbol for old, _ in self.pairs)

    def get(self, symbol: str, default: str | None = None) -> str | None:
        return self.as_dict().get(symbol, default)


class _Renamer:
    """Applies a map, collecting every symbol the map fails to cover."""

    def __init__(self, rmap: RenameMap):
        self.mapping = rmap.as_dict()
        self.missing: set[str] = set()

    def symbol(self, symbol: str) -> str:
        if symbol in self.mapping:
            return self.mapping[symbol]
        self.missing.add(symbol)
        return symbol

    def type_name(self, name: str) -> str:
        # The built-in root type stays fixed; everything else must be mapped.
        if name == OBJECT_TYPE:
            return name
        return self.symbol(name)

    def term(self, term: str) -> str:
        if term.startswith("?"):
            return term
        return self.symbol(term)

    def literal(self, lit: Literal) -> Literal:
        return Literal(
            self.symbol(lit.predicate),
            tuple(self.term(a) for a in lit.args),
            lit.positive,
        )

    def params(self, params: tuple[TypedVar, ...]) -> tuple[TypedVar, ...]:
        return tuple(TypedVar(p.name, self.type_name(p.type)) for p in params)

    def raise_if_missing(self) -> None:
        if self.missing:
            raise IncompleteMap(sorted(self.missing))


def obfuscate(
    domain: Domain, problem: Problem, rmap: RenameMap
) -> tuple[Domain, Problem]:
    """Rename every symbol in a domain/problem pair.

    Raises IncompleteMap listing every unmapped symbol; the pair is only
    returned when the map covers it completely.
    """
    renamer = _Renamer(rmap)

    new_domain = Domain(
        name=renamer.symbol(domain.name),
        requirements=domain.requirements,
        types=tuple(
            (renamer.type_name(child), renamer.type_name(parent))
            for child, parent in domain.types
        ),
        predicates=tuple(
            Predicate(renamer.symbol(p.name), renamer.params(p.params))
            for p in domain.predicates
        ),
        actions=tuple(
            ActionSchema(
                name=renamer.symbol(a.name),
                params=renamer.params(a.params),
                precondition=tuple(renamer.literal(l) for l in a.precondition),
                add_effects=tuple(renamer.literal(l) for l in a.add_effects),
                del_effects=tuple(renamer.literal(l) for l in a.del_effects),
            )
            for a in domain.actions
        ),
    )

    # Problem names carry no semantics; keep them readable by swapping in the
    # renamed domain name rather than demanding a map entry.
    if problem.name in renamer.mapping:
        new_problem_name = renamer.mapping[problem.name]
    else:
        new_problem_name = problem.name.replace(
            domain.name, renamer.mapping.get(domain.name, domain.name)
        )

    new_problem = Problem(
        name=new_problem_name,
        domain_name=renamer.symbol(problem.domain_name),
        objects=tuple(
            (renamer.symbol(name), renamer.type_name(typ))
            for name, typ in problem.objects
        ),
        init=tuple(renamer.literal(l) for l in problem.init),
        goal=tuple(renamer.literal(l) for l in problem.goal),
    )
    renamer.raise_if_missing()
    return new_domain, new_problem


def map_plan(plan: Plan, rmap: RenameMap) -> Plan:
    """Rewrite a plan's action names and arguments through the map."""
    renamer = _Renamer(rmap)
    steps = tuple(
        PlanStep(renamer.symbol(s.name), tuple(renamer.term(a) for a in s.args))
        for s in plan
    )
    renamer.raise_if_missing()
    return Plan(steps)


def canonical_mystery_map(objects: Sequence[str] = COLORS) -> RenameMap:
    """The standard mystery blocksworld renaming, extended with letter object names.

    Objects are renamed a, b, c, ... in the order given (block declaration
    order by default), matching the shipped mystery problem's style.
    """
    if len(objects) > len(_LETTERS):
        raise ValueError(
            f"canonical map covers at most {len(_LETTERS)} objects, got {len(objects)}"
        )
    pairs = list(CANONICAL_SYMBOL_MAP.items())
    pairs += list(zip(objects, _LETTERS))
    return RenameMap(tuple(pairs))


def symbols_of(domain: Domain, problem: Problem) -> set[str]:
    """All renameable symbols occurring in a pair (the map must cover these)."""
    symbols = {domain.name, problem.domain_name}
    for child, parent in domain.types:
        symbols.add(child)
        if parent != OBJECT_TYPE:
            symbols.add(parent)
    for pred in domain.predicates:
        symbols.add(pred.name)
        symbols.update(p.type for p in pred.params if p.type != OBJECT_TYPE)
    for action in domain.actions:
        symbols.add(action.name)
        symbols.update(p.type for p in action.params if p.type != OBJECT_TYPE)
        for lit in action.precondition + action.add_effects + action.del_effects:
            symbols.update(a for a in lit.args if not a.startswith("?"))
    for name, typ in problem.objects:
        symbols.add(name)
        if typ != OBJECT_TYPE:
            symbols.add(typ)
    for lit in problem.init + problem.goal:
        symbols.add(lit.predicate)
        symbols.update(a for a in lit.args if not a.startswith("?"))
    return symbols


_CONSONANTS = "bdfgklmnprstvz"
_VOWELS = "aeiou"

# Words a generated name must never collide with.
_RESERVED = {OBJECT_TYPE, "and", "not", "define", "domain", "problem", "either"}


def _nonsense_word(rng: random.Random) -> str:
    syllables = rng.randrange(2, 4)
    return "".join(
        rng.choice(_CONSONANTS) + rng.choice(_VOWELS) for _ in range(syllables)
    )


def fresh_nonsense_map(
    domain: Domain, problem: Problem, rng: random.Random
) -> RenameMap:
    """A random bijection from every symbol in the pair onto fresh nonsense words."""
    old_symbols = sorted(symbols_of(domain, problem))
    used = set(old_symbols) | _RESERVED
    pairs = []
    for old in old_symbols:
        word = _nonsense_word(rng)
        while word in used:
            word = _nonsense_word(rng)
        used.add(word)
        pairs.append((old, word))
    return RenameMap(tuple(pairs))
