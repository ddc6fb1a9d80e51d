import random

import pytest

from pddlbench.assets import gold_domain, gold_problem
from pddlbench.ground import (
    GroundAtom,
    apply_action,
    applicable,
    ground,
    satisfies,
)
from pddlbench.model import Literal
from pddlbench.parser import parse_domain, parse_problem

from . import oracles
from .generators import random_domain, random_problem


@pytest.fixture(scope="module")
def bw_task():
    return ground(gold_domain("blocksworld"), gold_problem("blocksworld"))


def _count(task, name):
    return sum(1 for a in task.actions if a.name == name)


def test_blocksworld_ground_counts(bw_task):
    assert _count(bw_task, "pickup") == 4
    assert _count(bw_task, "putdown") == 4
    assert _count(bw_task, "stack") == 16
    assert _count(bw_task, "unstack") == 16
    assert len(bw_task.actions) == 40


def test_self_pair_bindings_exist(bw_task):
    names = {(a.name, a.args) for a in bw_task.actions}
    assert ("stack", ("red", "red")) in names


def test_ground_matches_oracle_on_gold(bw_domain, bw_problem, bw_task):
    mine = {(a.name, a.args) for a in bw_task.actions}
    theirs = {
        (name, tuple(args))
        for name, args, _, _, _, _ in oracles.all_ground_actions(bw_domain, bw_problem)
    }
    assert mine == theirs


def test_typed_grounding_respects_hierarchy():
    d = parse_domain(
        "(define (domain d) (:types car truck - vehicle vehicle)"
        " (:predicates (at ?v - vehicle))"
        " (:action park :parameters (?v - vehicle) :precondition (and)"
        " :effect (and (at ?v))))"
    )
    p = parse_problem(
        "(define (problem x) (:domain d)"
        " (:objects c1 - car t1 - truck rock)"
        " (:init) (:goal (and)))",
        d,
    )
    task = ground(d, p)
    args = sorted(a.args[0] for a in task.actions)
    assert args == ["c1", "t1"]


def test_apply_and_applicable(bw_task):
    state = bw_task.init
    unstack = next(
        a for a in bw_task.actions if a.name == "unstack" and a.args == ("blue", "red")
    )
    assert applicable(state, unstack)
    after = apply_action(state, unstack)
    assert GroundAtom("holding", ("blue",)) in after
    assert GroundAtom("arm-empty", ()) not in after
    assert GroundAtom("on", ("blue", "red")) not in after
    # original state untouched
    assert GroundAtom("arm-empty", ()) in state


def test_apply_checked_raises_on_inapplicable(bw_task):
    from pddlbench.errors import SemanticError

    pickup_red = next(
        a for a in bw_task.actions if a.name == "pickup" and a.args == ("red",)
    )
    assert not applicable(bw_task.init, pickup_red)
    with pytest.raises(SemanticError):
        apply_action(bw_task.init, pickup_red, check=True)


def test_satisfies_goal_literals(bw_task):
    assert not satisfies(bw_task.init, bw_task.goal_pos, bw_task.goal_neg)
    # the goal tower: red on table, green on red, yellow on green, blue on top
    goal_state = frozenset(
        {
            GroundAtom("on-table", ("red",)),
            GroundAtom("on", ("green", "red")),
            GroundAtom("on", ("yellow", "green")),
            GroundAtom("on", ("blue", "yellow")),
            GroundAtom("clear", ("blue",)),
            GroundAtom("arm-empty", ()),
        }
    )
    assert satisfies(goal_state, bw_task.goal_pos, bw_task.goal_neg)


def test_negative_goal_handling():
    d = parse_domain(
        "(define (domain d) (:predicates (p ?x))"
        " (:action clear :parameters (?x) :precondition (p ?x)"
        " :effect (and (not (p ?x)))))"
    )
    p = parse_problem(
        "(define (problem x) (:domain d) (:objects a)"
        " (:init (p a)) (:goal (and (not (p a)))))",
        d,
    )
    task = ground(d, p)
    assert task.goal_neg == frozenset({GroundAtom("p", ("a",))})
    assert not satisfies(task.init, task.goal_pos, task.goal_neg)
    (act,) = task.actions
    assert satisfies(apply_action(task.init, act), task.goal_pos, task.goal_neg)


def test_static_pruning_drops_type_guards():
    d = gold_domain("logistics")
    p = gold_problem("logistics")
    full = ground(d, p)
    pruned = ground(d, p, prune_static=True)
    assert len(pruned.actions) < len(full.actions)
    assert len(pruned.actions) == 164
    # pruned actions are a subset of the full set by signature
    full_sigs = {(a.name, a.args) for a in full.actions}
    assert {(a.name, a.args) for a in pruned.actions} <= full_sigs


def test_static_pruning_keeps_dynamic_semantics():
    rng = random.Random(99)
    for _ in range(100):
        d = random_domain(rng)
        p = random_problem(rng, d)
        full = ground(d, p)
        pruned = ground(d, p, prune_static=True)
        sigs = {(a.name, a.args) for a in pruned.actions}
        by_sig = {(a.name, a.args): a for a in full.actions}
        for act in pruned.actions:
            orig = by_sig[(act.name, act.args)]
            assert act.add == orig.add
            assert act.delete == orig.delete
            # a pruned-precondition action must fire at least as often
            assert act.pre_pos <= orig.pre_pos
            assert act.pre_neg <= orig.pre_neg


def test_ground_rejects_mismatched_problem(bw_domain):
    from pddlbench.errors import SemanticError

    p = parse_problem(
        "(define (problem x) (:domain blocksworld) (:objects a)"
        " (:init (holding a)) (:goal (and)))"
    )
    bad = parse_problem(
        "(define (problem y) (:domain blocksworld) (:objects a)"
        " (:init (flying a)) (:goal (and)))"
    )
    ground(bw_domain, p)
    with pytest.raises(SemanticError):
        ground(bw_domain, bad)


def test_ground_action_step(bw_task):
    act = next(a for a in bw_task.actions if a.name == "pickup")
    assert str(act.step) == f"(pickup {act.args[0]})"
