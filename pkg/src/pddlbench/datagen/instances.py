"""Random problem generators for the blocksworld and barman domains.

Blocksworld initial and goal configurations are drawn independently and
uniformly over set partitions of the blocks (each partition block becomes a
stack) with a uniformly random vertical order inside every stack.  Any
configuration can reach any other, so every draw is solvable by construction.
"""

from __future__ import annotations

import random
from functools import lru_cache
from math import comb

from ..model import OBJECT_TYPE, Literal, Problem

# Block names, in declaration order; instances with n blocks use the first n.
COLORS = (
    "red",
    "blue",
    "green",
    "yellow",
    "orange",
    "purple",
    "white",
    "black",
    "brown",
    "pink",
    "gray",
    "cyan",
    "magenta",
    "teal",
    "violet",
)

MIN_BLOCKS = 2
MAX_BLOCKS = 15

BARMAN_LEVELS = ("l0", "l1", "l2")
BARMAN_HANDS = ("left", "right")
MAX_BARMAN_COUNT = 9


@lru_cache(maxsize=None)
def _bell(n: int) -> int:
    """Number of set partitions of n elements."""
    if n == 0:
        return 1
    return sum(comb(n - 1, k) * _bell(k) for k in range(n))


def _uniform_partition(rng: random.Random, items: list[str]) -> list[list[str]]:
    """Uniform random set partition of ``items``.

    The block containing the first item has size k with probability
    C(n-1, k-1) * B(n-k) / B(n); conditioning on k, its companions are a
    uniform (k-1)-subset and the rest recurses, so every partition of the
    n items is equally likely.
    """
    if not items:
        return []
    n = len(items)
    pick = rng.randrange(_bell(n))
    acc = 0
    size = n
    for k in range(1, n + 1):
        acc += comb(n - 1, k - 1) * _bell(n - k)
        if pick < acc:
            size = k
            break
    rest = items[1:]
    companions = rng.sample(rest, size - 1)
    block = [items[0]] + companions
    taken = set(companions)
    remaining = [x for x in rest if x not in taken]
    return [block] + _uniform_partition(rng, remaining)


def _random_stacks(rng: random.Random, blocks: tuple[str, ...]) -> list[list[str]]:
    """Partition into stacks (bottom-to-top lists), presented in a stable order."""
    stacks = _uniform_partition(rng, list(blocks))
    for stack in stacks:
        rng.shuffle(stack)
    index = {b: i for i, b in enumerate(blocks)}
    stacks.sort(key=lambda s: index[s[0]])
    return stacks


def _stack_literals(stack: list[str], with_clear: bool) -> list[Literal]:
    lits = [Literal("on-table", (stack[0],))]
    for lower, upper in zip(stack, stack[1:]):
        lits.append(Literal("on", (upper, lower)))
    if with_clear:
        lits.append(Literal("clear", (stack[-1],)))
    return lits


def gen_blocksworld_instance(
    rng_seed: int, num_blocks: int
) -> tuple[Problem, dict[str, int]]:
    """Draw one random blocksworld problem; returns (problem, complexity map)."""
    if not MIN_BLOCKS <= num_blocks <= MAX_BLOCKS:
        raise ValueError(
            f"num_blocks must be in {MIN_BLOCKS}..{MAX_BLOCKS}, got {num_blocks}"
        )
    rng = random.Random(rng_seed)
    blocks = COLORS[:num_blocks]
    init_stacks = _random_stacks(rng, blocks)
    goal_stacks = _random_stacks(rng, blocks)

    init = [lit for stack in init_stacks for lit in _stack_literals(stack, True)]
    init.append(Literal("arm-empty"))
    goal = [lit for stack in goal_stacks for lit in _stack_literals(stack, False)]

    problem = Problem(
        name=f"blocksworld-n{num_blocks}-s{abs(rng_seed)}",
        domain_name="blocksworld",
        objects=tuple((b, OBJECT_TYPE) for b in blocks),
        init=tuple(init),
        goal=tuple(goal),
    )
    complexity = {
        "num_blocks": num_blocks,
        "init_stacks": len(init_stacks),
        "goal_stacks": len(goal_stacks),
    }
    return problem, complexity


def _stacks_of(literals: tuple[Literal, ...]) -> list[list[str]]:
    above: dict[str, str] = {}
    bases: list[str] = []
    for lit in literals:
        if lit.predicate == "on-table":
            bases.append(lit.args[0])
        elif lit.predicate == "on":
            upper, lower = lit.args
            above[lower] = upper
    stacks = []
    for base in bases:
        stack = [base]
        while stack[-1] in above:
            stack.append(above[stack[-1]])
        stacks.append(stack)
    return stacks


def blocksworld_config(problem: Problem) -> dict:
    """Symbolic stack summary of a blocksworld problem.

    Used to brief the natural-language problem drafting prompt; stacks are
    bottom-to-top block name lists.
    """
    blocks = [name for name, _ in problem.objects]
    return {
        "blocks": blocks,
        "num_blocks": len(blocks),
        "init_stacks": _stacks_of(problem.init),
        "goal_stacks": _stacks_of(problem.goal),
    }


def _check_barman_count(label: str, value: int, minimum: int) -> None:
    if not minimum <= value <= MAX_BARMAN_COUNT:
        raise ValueError(
            f"{label} must be in {minimum}..{MAX_BARMAN_COUNT}, got {value}"
        )


def gen_barman_instance(
    rng_seed: int, shots: int, ingredients: int, cocktails: int
) -> Problem:
    """Draw one barman problem: one shaker, two hands, three levels.

    Each cocktail's two parts are drawn from the declared ingredients
    (distinct when possible) and its goal is to end up in its own shot
    glass, so cocktails may not outnumber shots.
    """
    _check_barman_count("shots", shots, 1)
    _check_barman_count("ingredients", ingredients, 1)
    _check_barman_count("cocktails", cocktails, 0)
    if cocktails > shots:
        raise ValueError(
            f"each cocktail needs its own shot glass: {cocktails} cocktails > {shots} shots"
        )
    rng = random.Random(rng_seed)

    shot_names = tuple(f"shot{i}" for i in range(1, shots + 1))
    ingredient_names = tuple(f"ingredient{i}" for i in range(1, ingredients + 1))
    cocktail_names = tuple(f"cocktail{i}" for i in range(1, cocktails + 1))
    dispenser_names = tuple(f"dispenser{i}" for i in range(1, ingredients + 1))

    objects: list[tuple[str, str]] = [("shaker1", "shaker")]
    objects += [(h, "hand") for h in BARMAN_HANDS]
    objects += [(s, "shot") for s in shot_names]
    objects += [(i, "ingredient") for i in ingredient_names]
    objects += [(c, "cocktail") for c in cocktail_names]
    objects += [(d, "dispenser") for d in dispenser_names]
    objects += [(l, "level") for l in BARMAN_LEVELS]

    init: list[Literal] = [Literal("ontable", ("shaker1",))]
    init += [Literal("ontable", (s,)) for s in shot_names]
    init += [
        Literal("dispenses", (d, i))
        for d, i in zip(dispenser_names, ingredient_names)
    ]
    init.append(Literal("clean", ("shaker1",)))
    init += [Literal("clean", (s,)) for s in shot_names]
    init.append(Literal("empty", ("shaker1",)))
    init += [Literal("empty", (s,)) for s in shot_names]
    init += [Literal("handempty", (h,)) for h in BARMAN_HANDS]
    init.append(Literal("shaker-empty-level", ("shaker1", "l0")))
    init.append(Literal("shaker-level", ("shaker1", "l0")))
    init += [
        Literal("next", pair) for pair in zip(BARMAN_LEVELS, BARMAN_LEVELS[1:])
    ]
    for cocktail in cocktail_names:
        if ingredients >= 2:
            part1, part2 = rng.sample(ingredient_names, 2)
        else:
            part1 = part2 = ingredient_names[0]
        init.append(Literal("cocktail-part1", (cocktail, part1)))
        init.append(Literal("cocktail-part2", (cocktail, part2)))

    goal = tuple(
        Literal("contains", (shot, cocktail))
        for shot, cocktail in zip(shot_names, cocktail_names)
    )

    return Problem(
        name="prob",
        domain_name="barman",
        objects=tuple(objects),
        init=tuple(init),
        goal=goal,
    )
