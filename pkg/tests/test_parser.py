import pytest

from pddlbench.errors import (
    PddlSyntaxError,
    PddlWarning,
    SemanticError,
    UndeclaredObject,
    UnsupportedFeature,
)
from pddlbench.model import Literal, TypedVar
from pddlbench.parser import parse_domain, parse_plan, parse_problem

MINI = """
(define (domain mini)
  (:predicates (p ?x) (q ?x ?y) (z))
  (:action go
    :parameters (?a ?b)
    :precondition (and (p ?a) (not (q ?a ?b)))
    :effect (and (q ?a ?b) (not (p ?a)))))
"""


def test_minimal_domain():
    d = parse_domain(MINI)
    assert d.name == "mini"
    assert [p.name for p in d.predicates] == ["p", "q", "z"]
    go = d.actions[0]
    assert go.params == (TypedVar("a"), TypedVar("b"))
    assert go.precondition == (
        Literal("p", ("?a",)),
        Literal("q", ("?a", "?b"), False),
    )
    assert go.add_effects == (Literal("q", ("?a", "?b")),)
    assert go.del_effects == (Literal("p", ("?a",)),)


def test_single_literal_precondition():
    d = parse_domain(
        "(define (domain d) (:predicates (p ?x))"
        " (:action a :parameters (?x) :precondition (p ?x) :effect (and)))"
    )
    assert d.actions[0].precondition == (Literal("p", ("?x",)),)


def test_misspelled_preconditions_keyword():
    with pytest.raises(PddlSyntaxError) as err:
        parse_domain("(define (domain d) (:predicates (p)) (:action a :preconditions (p)))")
    assert ":preconditions" in str(err.value)


def test_misspelled_effects_keyword():
    with pytest.raises(PddlSyntaxError) as err:
        parse_domain(
            "(define (domain d) (:predicates (p))"
            " (:action a :parameters () :precondition (p) :effects (and (p))))"
        )
    assert ":effects" in str(err.value)


def test_error_carries_position():
    with pytest.raises(PddlSyntaxError) as err:
        parse_domain("(define (domain d)\n  (:action a :preconditions (p)))")
    assert err.value.line == 2


@pytest.mark.parametrize(
    "body",
    [
        "(forall (?x) (p ?x))",
        "(exists (?x) (p ?x))",
        "(when (p ?x) (q ?x))",
        "(or (p ?x) (q ?x))",
    ],
)
def test_adl_constructs_rejected(body):
    text = (
        "(define (domain d) (:predicates (p ?x) (q ?x))"
        f" (:action a :parameters (?x) :precondition {body} :effect (and)))"
    )
    with pytest.raises(UnsupportedFeature):
        parse_domain(text)


def test_constants_section_rejected():
    with pytest.raises(UnsupportedFeature):
        parse_domain("(define (domain d) (:constants a b) (:predicates (p ?x)))")


def test_functions_section_rejected():
    with pytest.raises(UnsupportedFeature):
        parse_domain("(define (domain d) (:functions (cost)) (:predicates (p ?x)))")


def test_undeclared_predicate_in_action():
    with pytest.raises(SemanticError):
        parse_domain(
            "(define (domain d) (:predicates (p ?x))"
            " (:action a :parameters (?x) :precondition (q ?x) :effect (and)))"
        )


def test_arity_mismatch_in_action():
    with pytest.raises(SemanticError):
        parse_domain(
            "(define (domain d) (:predicates (p ?x))"
            " (:action a :parameters (?x) :precondition (p ?x ?x) :effect (and)))"
        )


def test_unbound_variable_in_body():
    with pytest.raises(SemanticError):
        parse_domain(
            "(define (domain d) (:predicates (p ?x))"
            " (:action a :parameters (?x) :precondition (p ?y) :effect (and)))"
        )


def test_duplicate_action_rejected():
    with pytest.raises(SemanticError):
        parse_domain(
            "(define (domain d) (:predicates (p))"
            " (:action a :parameters () :precondition (p) :effect (and))"
            " (:action a :parameters () :precondition (p) :effect (and)))"
        )


def test_duplicate_predicate_rejected():
    with pytest.raises(SemanticError):
        parse_domain("(define (domain d) (:predicates (p ?x) (p ?x)))")


def test_type_cycle_rejected():
    with pytest.raises(SemanticError):
        parse_domain("(define (domain d) (:types a - b b - a) (:predicates (p)))")


def test_add_delete_overlap_normalized_to_add():
    d = parse_domain(
        "(define (domain d) (:predicates (p ?x))"
        " (:action a :parameters (?x) :precondition (and)"
        " :effect (and (p ?x) (not (p ?x)))))"
    )
    assert d.actions[0].add_effects == (Literal("p", ("?x",)),)
    assert d.actions[0].del_effects == ()


def test_duplicate_predicate_param_names_allowed():
    # IPC logistics declares (in ?obj ?obj); declarations are positional hints
    d = parse_domain("(define (domain d) (:predicates (in ?obj ?obj)))")
    assert d.predicates[0].arity == 2


def test_case_insensitive():
    d1 = parse_domain(MINI)
    d2 = parse_domain(MINI.upper())
    assert d1 == d2


def test_comment_transparency():
    commented = MINI.replace("(:action go", "; a comment\n(:action go")
    assert parse_domain(commented) == parse_domain(MINI)


def test_trailing_content_rejected():
    with pytest.raises(PddlSyntaxError):
        parse_domain(MINI + "\n(define (domain extra))")


PROB = """
(define (problem tiny)
  (:domain mini)
  (:objects a b)
  (:init (p a) (p a) (q a b))
  (:goal (and (p b) (not (q b a)))))
"""


def test_minimal_problem():
    p = parse_problem(PROB)
    assert p.name == "tiny"
    assert p.domain_name == "mini"
    assert p.objects == (("a", "object"), ("b", "object"))
    # duplicate init atom dropped silently, order kept
    assert p.init == (Literal("p", ("a",)), Literal("q", ("a", "b")))
    assert p.goal == (Literal("p", ("b",)), Literal("q", ("b", "a"), False))


def test_problem_checks_against_domain():
    d = parse_domain(MINI)
    p = parse_problem(PROB, d)
    assert p.name == "tiny"


def test_duplicate_goal_literal_warns():
    text = PROB.replace("(:goal (and (p b)", "(:goal (and (p b) (p b)")
    with pytest.warns(PddlWarning):
        p = parse_problem(text)
    assert p.goal.count(Literal("p", ("b",))) == 1


def test_init_variable_rejected():
    with pytest.raises(SemanticError):
        parse_problem("(define (problem x) (:init (p ?v)) (:goal (and)))")


def test_negated_init_rejected():
    with pytest.raises(UnsupportedFeature):
        parse_problem("(define (problem x) (:objects a) (:init (not (p a))) (:goal (and)))")


def test_goal_must_be_ground():
    with pytest.raises(SemanticError):
        parse_problem("(define (problem x) (:objects a) (:init) (:goal (p ?v)))")


def test_undeclared_object_with_domain():
    d = parse_domain(MINI)
    text = "(define (problem x) (:domain mini) (:objects a) (:init (p c)) (:goal (and)))"
    with pytest.raises(UndeclaredObject):
        parse_problem(text, d)


def test_undeclared_init_predicate_with_domain():
    d = parse_domain(MINI)
    text = "(define (problem x) (:domain mini) (:objects a) (:init (nope a)) (:goal (and)))"
    with pytest.raises(SemanticError):
        parse_problem(text, d)


def test_unknown_object_type_with_domain():
    d = parse_domain(MINI)
    text = "(define (problem x) (:domain mini) (:objects a - widget) (:init) (:goal (and)))"
    with pytest.raises(SemanticError):
        parse_problem(text, d)


def test_duplicate_object_rejected():
    with pytest.raises(SemanticError):
        parse_problem("(define (problem x) (:objects a a) (:init) (:goal (and)))")


def test_metric_section_rejected():
    with pytest.raises(UnsupportedFeature):
        parse_problem(
            "(define (problem x) (:objects a) (:init) (:goal (and))"
            " (:metric minimize (total-cost)))"
        )


def test_parse_plan_basic():
    plan = parse_plan("(unstack blue red)\n; comment\n(putdown blue)\n")
    assert [str(s) for s in plan.steps] == ["(unstack blue red)", "(putdown blue)"]


def test_parse_plan_case_folded():
    plan = parse_plan("(PICK-UP A)\n(STACK A B)")
    assert [str(s) for s in plan.steps] == ["(pick-up a)", "(stack a b)"]


def test_parse_plan_empty():
    assert parse_plan("").steps == ()
    assert parse_plan("; nothing but comments\n\n").steps == ()


def test_parse_plan_rejects_nesting():
    with pytest.raises(PddlSyntaxError):
        parse_plan("(stack a (b))")


def test_parse_plan_rejects_variables():
    with pytest.raises(PddlSyntaxError):
        parse_plan("(stack ?a b)")
