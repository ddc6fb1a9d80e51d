import random

import pytest

from pddlbench.assets import DOMAIN_TAGS, gold_domain_text, gold_problem_text
from pddlbench.parser import parse_domain, parse_plan, parse_problem
from pddlbench.printer import print_domain, print_plan, print_problem

from .generators import random_domain, random_plan, random_problem


def test_domain_round_trip_blocksworld(bw_domain):
    text = print_domain(bw_domain)
    assert parse_domain(text) == bw_domain


def test_problem_round_trip_blocksworld(bw_domain, bw_problem):
    text = print_problem(bw_problem)
    assert parse_problem(text, bw_domain) == bw_problem


@pytest.mark.parametrize("tag", DOMAIN_TAGS)
def test_gold_round_trip(tag):
    d = parse_domain(gold_domain_text(tag))
    p = parse_problem(gold_problem_text(tag), d)
    assert parse_domain(print_domain(d)) == d
    assert parse_problem(print_problem(p), d) == p


@pytest.mark.parametrize("tag", DOMAIN_TAGS)
def test_printing_idempotent(tag):
    d = parse_domain(gold_domain_text(tag))
    p = parse_problem(gold_problem_text(tag), d)
    once = print_domain(d)
    assert print_domain(parse_domain(once)) == once
    ponce = print_problem(p)
    assert print_problem(parse_problem(ponce, d)) == ponce


def test_typed_parameter_grouping():
    text = (
        "(define (domain d) (:types car) (:predicates (p ?x - car ?y - car ?z))"
        " (:action a :parameters (?u - car ?v - car ?w) :precondition (and) :effect (and)))"
    )
    out = print_domain(parse_domain(text))
    assert "(p ?x ?y - car ?z)" in out
    assert ":parameters (?u ?v - car ?w)" in out


def test_object_typed_tail_stays_bare():
    # a trailing run of plain-object names prints without "- object"
    text = "(define (problem x) (:objects a b - car c d) (:init) (:goal (and)))"
    out = print_problem(parse_problem(text))
    assert "(:objects a b - car c d)" in out


def test_object_type_printed_when_followed_by_typed_group():
    text = "(define (problem x) (:objects a - object b c - car) (:init) (:goal (and)))"
    out = print_problem(parse_problem(text))
    assert "(:objects a - object b c - car)" in out


def test_goal_always_wrapped_in_and():
    text = "(define (problem x) (:objects a) (:init) (:goal (p a)))"
    out = print_problem(parse_problem(text))
    assert "(:goal (and" in out


def test_empty_sections():
    text = "(define (problem x) (:objects a) (:init) (:goal (and)))"
    out = print_problem(parse_problem(text))
    assert "(:init)" in out
    assert "(:goal (and))" in out


def test_plan_round_trip():
    plan = parse_plan("(unstack b c)\n(putdown b)\n")
    text = print_plan(plan)
    assert text == "(unstack b c)\n(putdown b)\n"
    assert parse_plan(text) == plan


def test_empty_plan_prints_empty():
    assert print_plan(parse_plan("")) == ""


def test_random_round_trips():
    rng = random.Random(20260814)
    for _ in range(200):
        d = random_domain(rng)
        out = print_domain(d)
        assert parse_domain(out) == d
        assert print_domain(parse_domain(out)) == out
        p = random_problem(rng, d)
        pout = print_problem(p)
        assert parse_problem(pout, d) == p
        assert print_problem(parse_problem(pout, d)) == pout
        plan = random_plan(rng)
        ptext = print_plan(plan)
        assert parse_plan(ptext) == plan


def test_round_trip_survives_case_and_comments():
    rng = random.Random(7)
    for _ in range(50):
        d = random_domain(rng)
        noisy = "; header comment\n" + print_domain(d).upper()
        assert parse_domain(noisy) == d
