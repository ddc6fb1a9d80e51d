"""Per-domain phrase tables driving the templated description renderers.

Every rendering quirk lives here as data, not renderer logic: per-action
sentence styles, menu wording and order, list ordering and comma
conventions, and effect-order overrides. The renderer in render.py is a
plain interpreter of these tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..errors import UnsupportedDomain
from .obfuscate import RenameMap, canonical_mystery_map

RESTRICTIONS_INTRO = "I have the following restrictions on my actions:"


@dataclass(frozen=True)
class ActionFrame:
    """How one action renders in a heavy domain description.

    style "facts" writes "the following facts need to be true"; "terse"
    drops the word "facts" ("the following needs to be true"). add_order
    reorders the add-list sentence by predicate name, and del_comma inserts
    the stray comma after "will be false:" that some templates carry.
    """

    menu: str
    arg_names: tuple[str, ...]
    style: str = "facts"
    add_order: tuple[str, ...] | None = None
    del_comma: bool = False


@dataclass(frozen=True)
class Lexicalization:
    """All phrasing knobs for one domain's templated descriptions."""

    domain_tag: str
    pd_predicates: Mapping[str, str]
    init_prefix: str
    goal_prefix: str
    oxford: bool
    init_order: str  # "file" | "grouped" | "alpha"
    goal_order: str  # "file" | "grouped_sorted" | "alpha"
    group_order: tuple[str, ...] = ()
    dd_intro: str | None = None
    dd_restrictions_intro: str = RESTRICTIONS_INTRO
    dd_predicates: Mapping[str, str] = field(default_factory=dict)
    frames: Mapping[str, ActionFrame] = field(default_factory=dict)
    menu_order: tuple[str, ...] = ()
    # None means the domain has no moderately-templated rendering.
    moderate_pd_overrides: Mapping[str, str] | None = None
    # Object-enumeration preamble (barman); types absent from the map are
    # left out of the enumeration.
    preamble_intro: str = ""
    preamble_types: Mapping[str, str] = field(default_factory=dict)
    levels_intro: str = ""
    cocktails_intro: str = ""


_BLOCKSWORLD = Lexicalization(
    domain_tag="blocksworld",
    dd_intro="I am playing with a set of blocks. Here are the actions I can do",
    dd_predicates={
        "clear": "clear {0}",
        "on-table": "{0} on table",
        "arm-empty": "arm-empty",
        "holding": "holding {0}",
        "on": "{0} on {1}",
    },
    frames={
        "pickup": ActionFrame(menu="Pickup block", arg_names=("block",)),
        "putdown": ActionFrame(
            menu="Putdown block",
            arg_names=("block",),
            add_order=("clear", "on-table", "arm-empty"),
        ),
        "stack": ActionFrame(
            menu="Stack block on another block",
            arg_names=("block1", "block2"),
            style="terse",
        ),
        "unstack": ActionFrame(
            menu="Unstack block from another block",
            arg_names=("block1", "block2"),
            style="terse",
            del_comma=True,
        ),
    },
    menu_order=("pickup", "unstack", "putdown", "stack"),
    pd_predicates={
        "clear": "the {0} block is clear",
        "on-table": "the {0} block is on the table",
        "arm-empty": "arm-empty",
        "holding": "holding the {0} block",
        "on": "the {0} block is on top of the {1} block",
    },
    init_prefix="As initial conditions I have that, ",
    goal_prefix="My goal is to have that ",
    oxford=True,
    init_order="grouped",
    goal_order="grouped_sorted",
    group_order=("clear", "arm-empty", "on", "on-table"),
    moderate_pd_overrides={"arm-empty": "the hand is empty"},
)

_LOGISTICS = Lexicalization(
    domain_tag="logistics",
    pd_predicates={
        "package": "{0} is a package",
        "truck": "{0} is a truck",
        "airplane": "{0} is an airplane",
        "airport": "{0} is an airport",
        "location": "{0} is a location",
        "city": "{0} is a city",
        "at": "{0} is at {1}",
        "in": "{0} is in {1}",
        "in-city": "{0} is in {1}",
    },
    init_prefix="As initial conditions, I have that, ",
    goal_prefix="My goal is to have that ",
    oxford=True,
    init_order="file",
    goal_order="file",
    moderate_pd_overrides={},
)

_BARMAN = Lexicalization(
    domain_tag="barman",
    pd_predicates={
        "ontable": "{0} is on the table",
        "dispenses": "{0} dispenses {1}",
        "clean": "{0} is clean",
        "empty": "{0} is empty",
        "contains": "{0} contains {1}",
        "handempty": "handempty {0}",
        "holding": "holding {0} {1}",
        "used": "used {0} {1}",
        "shaker-empty-level": "shaker-empty-level {0} {1}",
        "shaker-level": "shaker-level {0} {1}",
        "next": "next {0} {1}",
        "unshaked": "unshaked {0}",
        "shaked": "shaked {0}",
        "cocktail-part1": "cocktail-part1 {0} {1}",
        "cocktail-part2": "cocktail-part2 {0} {1}",
    },
    init_prefix="As initial conditions, I have that ",
    goal_prefix="My goal is to have that ",
    oxford=True,
    init_order="file",
    goal_order="file",
    preamble_intro="For this cocktail, I have the following: ",
    preamble_types={
        "shaker": "shaker {0}",
        "hand": "my {0} hand",
        "shot": "shot glass {0}",
        "ingredient": "ingredient {0}",
        "dispenser": "dispenser {0}",
    },
    levels_intro="The shaker has the following levels: ",
    cocktails_intro="I want to make the following cocktails: ",
)


def _cap(name: str) -> str:
    return name[:1].upper() + name[1:]


def mystery_lexicalization(rmap: RenameMap | None = None) -> Lexicalization:
    """Derive the mystery-style phrase table for a blocksworld rename map.

    Renamed predicates read as capitalized nouns in the domain description
    ("Province object", "Object Craves other object") and as lowercase
    object-prefixed phrases in the problem description ("province object a",
    "object a craves object b"). Works for the published map and for fresh
    nonsense maps alike.
    """
    rmap = rmap or canonical_mystery_map()
    name = rmap.as_dict()
    base = _BLOCKSWORLD

    dd_predicates = {}
    pd_predicates = {}
    arity = {"clear": 1, "on-table": 1, "arm-empty": 0, "holding": 1, "on": 2}
    for old, n in arity.items():
        new = name[old]
        if n == 0:
            dd_predicates[new] = _cap(new)
            pd_predicates[new] = new
        elif n == 1:
            dd_predicates[new] = _cap(new) + " {0}"
            pd_predicates[new] = new + " object {0}"
        else:
            dd_predicates[new] = "{cap0} " + _cap(new) + " {1}"
            pd_predicates[new] = "object {0} " + new + " object {1}"

    def menu(old: str) -> str:
        new = name[old]
        unary = old in ("pickup", "putdown")
        return _cap(new) + (" object" if unary else " object from another object")

    frames = {
        name["pickup"]: ActionFrame(menu=menu("pickup"), arg_names=("object",)),
        name["putdown"]: ActionFrame(
            menu=menu("putdown"),
            arg_names=("object",),
            add_order=(name["clear"], name["on-table"], name["arm-empty"]),
        ),
        name["stack"]: ActionFrame(
            menu=menu("stack"),
            arg_names=("object", "other object"),
            style="terse",
        ),
        name["unstack"]: ActionFrame(
            menu=menu("unstack"),
            arg_names=("object", "other object"),
            style="terse",
            del_comma=True,
        ),
    }

    return Lexicalization(
        domain_tag="mystery_blocksworld",
        dd_intro="I am playing with a set of objects. Here are the actions I can do",
        dd_predicates=dd_predicates,
        frames=frames,
        menu_order=tuple(name[a] for a in base.menu_order),
        pd_predicates=pd_predicates,
        init_prefix=base.init_prefix,
        goal_prefix=base.goal_prefix,
        oxford=False,
        init_order="alpha",
        goal_order="alpha",
    )


LEXICONS: Mapping[str, Lexicalization] = {
    "blocksworld": _BLOCKSWORLD,
    "mystery_blocksworld": mystery_lexicalization(),
    "logistics": _LOGISTICS,
    "barman": _BARMAN,
}


def for_domain(domain_tag: str) -> Lexicalization:
    if domain_tag not in LEXICONS:
        raise UnsupportedDomain(
            f"no lexicalization for domain '{domain_tag}', "
            f"expected one of {', '.join(LEXICONS)}"
        )
    return LEXICONS[domain_tag]
