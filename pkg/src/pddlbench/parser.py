"""Recursive-descent parsing of PDDL domains, problems, and plans.

Supports the STRIPS + :typing fragment: typed parameter lists, conjunctive
preconditions with negative literals, and conjunctive add/delete effects.
Anything richer (quantifiers, conditional effects, disjunction, equality,
numeric fluents, constants sections) raises UnsupportedFeature so callers
can tell "outside the fragment" apart from plain syntax errors. Misspelled
keywords such as ``:preconditions`` raise PddlSyntaxError naming the token.
"""

from __future__ import annotations

import warnings

from .errors import (
    PddlSyntaxError,
    PddlWarning,
    SemanticError,
    UndeclaredObject,
    UnsupportedFeature,
)
from .lexer import Atom, SExpr, SList, read_sexprs
from .model import (
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

# Constructs we recognize but deliberately reject.
_UNSUPPORTED_HEADS = frozenset(
    {"forall", "exists", "when", "or", "imply", "=", "increase", "decrease", "assign"}
)
_UNSUPPORTED_DOMAIN_SECTIONS = frozenset(
    {":constants", ":functions", ":durative-action", ":derived", ":axiom", ":constraints"}
)
_UNSUPPORTED_PROBLEM_SECTIONS = frozenset({":metric", ":length", ":constraints"})


def _pos(node: SExpr) -> tuple[int, int]:
    return node.line, node.col


def _expect_atom(node: SExpr, what: str) -> Atom:
    if not isinstance(node, Atom):
        raise PddlSyntaxError(f"expected {what}, found a list", *_pos(node))
    return node


def _expect_list(node: SExpr, what: str) -> SList:
    if not isinstance(node, SList):
        raise PddlSyntaxError(f"expected {what}, found '{node.text}'", *_pos(node))
    return node


def _name_atom(node: SExpr, what: str) -> str:
    atom = _expect_atom(node, what)
    if not is_valid_symbol(atom.text):
        raise PddlSyntaxError(f"invalid {what} '{atom.text}'", *_pos(atom))
    return atom.text


def _single_form(text: str, what: str) -> SList:
    forms = read_sexprs(text)
    if not forms:
        raise PddlSyntaxError(f"empty input, expected a {what}")
    if len(forms) > 1:
        raise PddlSyntaxError(
            f"expected a single {what} form, found trailing content", *_pos(forms[1])
        )
    return _expect_list(forms[0], what)


def _parse_typed_list(items: tuple, var: bool, where: str) -> list[TypedVar]:
    """Parse ``a b - t c - s d`` style lists; untyped entries default to object."""
    out: list[TypedVar] = []
    pending: list[str] = []
    i = 0
    while i < len(items):
        node = items[i]
        atom = _expect_atom(node, f"name in {where}")
        if atom.text == "-":
            if not pending:
                raise PddlSyntaxError(f"dangling '-' in {where}", *_pos(atom))
            if i + 1 >= len(items):
                raise PddlSyntaxError(f"missing type after '-' in {where}", *_pos(atom))
            tnode = items[i + 1]
            if isinstance(tnode, SList):
                head = tnode.items[0] if tnode.items else None
                if isinstance(head, Atom) and head.text == "either":
                    raise UnsupportedFeature("(either ...) types", *_pos(tnode))
                raise PddlSyntaxError(f"expected a type name in {where}", *_pos(tnode))
            tname = _name_atom(tnode, f"type name in {where}")
            out.extend(TypedVar(name, tname) for name in pending)
            pending = []
            i += 2
            continue
        if var:
            if not atom.text.startswith("?"):
                raise PddlSyntaxError(
                    f"expected variable in {where}, found '{atom.text}'", *_pos(atom)
                )
            name = atom.text[1:]
        else:
            if atom.text.startswith("?"):
                raise PddlSyntaxError(
                    f"unexpected variable '{atom.text}' in {where}", *_pos(atom)
                )
            name = atom.text
        if not is_valid_symbol(name):
            raise PddlSyntaxError(f"invalid name '{atom.text}' in {where}", *_pos(atom))
        pending.append(name)
        i += 1
    out.extend(TypedVar(name, OBJECT_TYPE) for name in pending)
    return out


def _parse_atom_expr(node: SExpr, where: str, allow_vars: bool) -> Literal:
    lst = _expect_list(node, f"atom in {where}")
    if not lst.items:
        raise PddlSyntaxError(f"empty expression in {where}", *_pos(lst))
    head = _expect_atom(lst.items[0], f"predicate name in {where}")
    if head.text in _UNSUPPORTED_HEADS:
        raise UnsupportedFeature(head.text, *_pos(head))
    if head.text in ("and", "not"):
        raise PddlSyntaxError(f"unexpected '{head.text}' in {where}", *_pos(head))
    if not is_valid_symbol(head.text):
        raise PddlSyntaxError(f"invalid predicate name '{head.text}'", *_pos(head))
    args = []
    for arg in lst.items[1:]:
        atom = _expect_atom(arg, f"argument in {where}")
        if atom.text.startswith("?"):
            if not allow_vars:
                raise SemanticError(f"variable {atom.text} not allowed in {where}")
            if not is_valid_symbol(atom.text[1:]):
                raise PddlSyntaxError(f"invalid variable '{atom.text}'", *_pos(atom))
        elif not is_valid_symbol(atom.text):
            raise PddlSyntaxError(f"invalid constant '{atom.text}'", *_pos(atom))
        args.append(atom.text)
    return Literal(head.text, tuple(args), True)


def _parse_condition(node: SExpr, where: str, allow_vars: bool = True) -> list[Literal]:
    """Parse a literal, a negation, or an (and ...) of those into a flat list.

    Nested (and ...) is flattened; it carries no extra meaning.
    """
    lst = _expect_list(node, where)
    if not lst.items:
        return []
    head = lst.items[0]
    if isinstance(head, Atom) and head.text == "and":
        out: list[Literal] = []
        for item in lst.items[1:]:
            out.extend(_parse_condition(item, where, allow_vars))
        return out
    if isinstance(head, Atom) and head.text == "not":
        if len(lst.items) != 2:
            raise PddlSyntaxError(f"(not ...) takes one argument in {where}", *_pos(lst))
        inner = lst.items[1]
        if isinstance(inner, SList) and inner.items:
            ihead = inner.items[0]
            if isinstance(ihead, Atom) and ihead.text in _UNSUPPORTED_HEADS | {"and", "not"}:
                raise UnsupportedFeature(f"(not ({ihead.text} ...))", *_pos(inner))
        return [_parse_atom_expr(inner, where, allow_vars).negated()]
    if isinstance(head, Atom) and head.text in _UNSUPPORTED_HEADS:
        raise UnsupportedFeature(head.text, *_pos(head))
    return [_parse_atom_expr(node, where, allow_vars)]


def _check_body_literals(
    literals: list[Literal], predicates: dict[str, Predicate], where: str
) -> None:
    for lit in literals:
        decl = predicates.get(lit.predicate)
        if decl is None:
            raise SemanticError(f"undeclared predicate '{lit.predicate}' in {where}")
        if decl.arity != len(lit.args):
            raise SemanticError(
                f"predicate '{lit.predicate}' used with {len(lit.args)} arguments "
                f"in {where}, declared with {decl.arity}"
            )


def _dedup(literals: list[Literal]) -> tuple[Literal, ...]:
    seen = set()
    out = []
    for lit in literals:
        key = (lit.predicate, lit.args, lit.positive)
        if key not in seen:
            seen.add(key)
            out.append(lit)
    return tuple(out)


def _parse_action(lst: SList, predicates: dict[str, Predicate]) -> ActionSchema:
    if len(lst.items) < 2:
        raise PddlSyntaxError("(:action ...) needs a name", *_pos(lst))
    name = _name_atom(lst.items[1], "action name")
    params: tuple[TypedVar, ...] = ()
    pre: list[Literal] = []
    effects: list[Literal] = []
    seen_keys = set()
    i = 2
    while i < len(lst.items):
        key_atom = _expect_atom(lst.items[i], "action keyword")
        key = key_atom.text
        if key not in (":parameters", ":precondition", ":effect"):
            raise PddlSyntaxError(
                f"unknown keyword '{key}' in action '{name}'", *_pos(key_atom)
            )
        if key in seen_keys:
            raise PddlSyntaxError(
                f"duplicate keyword '{key}' in action '{name}'", *_pos(key_atom)
            )
        seen_keys.add(key)
        if i + 1 >= len(lst.items):
            raise PddlSyntaxError(f"missing value for '{key}'", *_pos(key_atom))
        value = lst.items[i + 1]
        if key == ":parameters":
            plist = _expect_list(value, ":parameters list")
            params = tuple(_parse_typed_list(plist.items, True, f"action '{name}' parameters"))
        elif key == ":precondition":
            pre = _parse_condition(value, f"action '{name}' precondition")
        else:
            effects = _parse_condition(value, f"action '{name}' effect")
        i += 2

    adds = [l for l in effects if l.positive]
    dels = [Literal(l.predicate, l.args, True) for l in effects if not l.positive]
    # Delete-then-add semantics: an atom both added and deleted nets to added,
    # so drop it from the delete list instead of rejecting the action.
    add_keys = {(l.predicate, l.args) for l in adds}
    dels = [l for l in dels if (l.predicate, l.args) not in add_keys]
    _check_body_literals(pre + adds + dels, predicates, f"action '{name}'")
    return ActionSchema(
        name=name,
        params=params,
        precondition=_dedup(pre),
        add_effects=_dedup(adds),
        del_effects=_dedup(dels),
    )


def parse_domain(text: str) -> Domain:
    """Parse a ``(define (domain ...) ...)`` form into a Domain."""
    form = _single_form(text, "domain")
    items = form.items
    if not items or not (isinstance(items[0], Atom) and items[0].text == "define"):
        raise PddlSyntaxError("expected (define ...)", *_pos(form))
    if len(items) < 2:
        raise PddlSyntaxError("missing (domain NAME)", *_pos(form))
    head = _expect_list(items[1], "(domain NAME)")
    if (
        len(head.items) != 2
        or not isinstance(head.items[0], Atom)
        or head.items[0].text != "domain"
    ):
        raise PddlSyntaxError("expected (domain NAME)", *_pos(head))
    name = _name_atom(head.items[1], "domain name")

    requirements: frozenset[str] = frozenset()
    types: list[tuple[str, str]] = []
    predicates: list[Predicate] = []
    actions: list[ActionSchema] = []
    pred_map: dict[str, Predicate] = {}
    seen_sections = set()

    for section in items[2:]:
        lst = _expect_list(section, "domain section")
        if not lst.items:
            raise PddlSyntaxError("empty domain section", *_pos(lst))
        key_atom = _expect_atom(lst.items[0], "section keyword")
        key = key_atom.text
        if key in _UNSUPPORTED_DOMAIN_SECTIONS:
            raise UnsupportedFeature(key, *_pos(key_atom))
        if key == ":requirements":
            flags = []
            for it in lst.items[1:]:
                atom = _expect_atom(it, "requirement flag")
                if not atom.text.startswith(":"):
                    raise PddlSyntaxError(
                        f"bad requirement '{atom.text}'", *_pos(atom)
                    )
                flags.append(atom.text[1:])
            requirements = frozenset(flags)
        elif key == ":types":
            entries = _parse_typed_list(lst.items[1:], False, ":types")
            for tv in entries:
                if any(child == tv.name for child, _ in types):
                    raise SemanticError(f"type '{tv.name}' declared twice")
                types.append((tv.name, tv.type))
        elif key == ":predicates":
            for it in lst.items[1:]:
                plist = _expect_list(it, "predicate declaration")
                if not plist.items:
                    raise PddlSyntaxError("empty predicate declaration", *_pos(plist))
                pname = _name_atom(plist.items[0], "predicate name")
                if pname in pred_map:
                    raise SemanticError(f"predicate '{pname}' declared twice")
                # Declaration parameter names are positional hints only, so
                # duplicates like (in ?obj ?obj) are fine here.
                pparams = tuple(
                    _parse_typed_list(plist.items[1:], True, f"predicate '{pname}'")
                )
                decl = Predicate(pname, pparams)
                pred_map[pname] = decl
                predicates.append(decl)
        elif key == ":action":
            action = _parse_action(lst, pred_map)
            if any(a.name == action.name for a in actions):
                raise SemanticError(f"action '{action.name}' declared twice")
            actions.append(action)
        else:
            raise PddlSyntaxError(f"unknown domain section '{key}'", *_pos(key_atom))
        if key in (":requirements", ":types", ":predicates") and key in seen_sections:
            raise PddlSyntaxError(f"duplicate section '{key}'", *_pos(key_atom))
        seen_sections.add(key)

    domain = Domain(
        name=name,
        requirements=requirements,
        types=tuple(types),
        predicates=tuple(predicates),
        actions=tuple(actions),
    )
    _check_type_acyclic(domain)
    _check_param_types(domain)
    return domain


def _check_type_acyclic(domain: Domain) -> None:
    parents = domain.type_parents()
    for start in parents:
        cur = start
        seen = set()
        while cur in parents:
            if cur in seen:
                raise SemanticError(f"type hierarchy contains a cycle at '{cur}'")
            seen.add(cur)
            cur = parents[cur]


def _check_param_types(domain: Domain) -> None:
    declared = domain.declared_types()
    for pred in domain.predicates:
        for tv in pred.params:
            if tv.type not in declared:
                raise SemanticError(
                    f"predicate '{pred.name}' uses undeclared type '{tv.type}'"
                )
    for action in domain.actions:
        for tv in action.params:
            if tv.type not in declared:
                raise SemanticError(
                    f"action '{action.name}' uses undeclared type '{tv.type}'"
                )


def parse_problem(text: str, domain: Domain | None = None) -> Problem:
    """Parse a ``(define (problem ...) ...)`` form.

    With ``domain`` given, also checks that init/goal predicates are declared
    with matching arity, that every constant is a declared object, and that
    object types exist in the domain's type tree.
    """
    form = _single_form(text, "problem")
    items = form.items
    if not items or not (isinstance(items[0], Atom) and items[0].text == "define"):
        raise PddlSyntaxError("expected (define ...)", *_pos(form))
    if len(items) < 2:
        raise PddlSyntaxError("missing (problem NAME)", *_pos(form))
    head = _expect_list(items[1], "(problem NAME)")
    if (
        len(head.items) != 2
        or not isinstance(head.items[0], Atom)
        or head.items[0].text != "problem"
    ):
        raise PddlSyntaxError("expected (problem NAME)", *_pos(head))
    name = _name_atom(head.items[1], "problem name")

    domain_name = ""
    objects: list[tuple[str, str]] = []
    init: list[Literal] = []
    goal: list[Literal] = []
    seen_sections = set()

    for section in items[2:]:
        lst = _expect_list(section, "problem section")
        if not lst.items:
            raise PddlSyntaxError("empty problem section", *_pos(lst))
        key_atom = _expect_atom(lst.items[0], "section keyword")
        key = key_atom.text
        if key in _UNSUPPORTED_PROBLEM_SECTIONS:
            raise UnsupportedFeature(key, *_pos(key_atom))
        if key in seen_sections:
            raise PddlSyntaxError(f"duplicate section '{key}'", *_pos(key_atom))
        seen_sections.add(key)
        if key == ":domain":
            if len(lst.items) != 2:
                raise PddlSyntaxError("(:domain NAME) takes one name", *_pos(lst))
            domain_name = _name_atom(lst.items[1], "domain name")
        elif key == ":objects":
            entries = _parse_typed_list(lst.items[1:], False, ":objects")
            for tv in entries:
                if any(o == tv.name for o, _ in objects):
                    raise SemanticError(f"object '{tv.name}' declared twice")
                objects.append((tv.name, tv.type))
        elif key == ":init":
            for it in lst.items[1:]:
                if isinstance(it, SList) and it.items:
                    h = it.items[0]
                    if isinstance(h, Atom) and h.text == "not":
                        raise UnsupportedFeature("negated init atom", *_pos(h))
                lit = _parse_atom_expr(it, ":init", allow_vars=False)
                init.append(lit)
        elif key == ":goal":
            if len(lst.items) != 2:
                raise PddlSyntaxError("(:goal ...) takes one formula", *_pos(lst))
            goal = _parse_condition(lst.items[1], ":goal", allow_vars=True)
            for lit in goal:
                if not lit.is_ground():
                    raise SemanticError(f"goal literal {lit} is not ground")
        else:
            raise PddlSyntaxError(f"unknown problem section '{key}'", *_pos(key_atom))

    init_tuple = _dedup(init)
    goal_tuple = _dedup(goal)
    if len(goal_tuple) != len(goal):
        warnings.warn("duplicate goal literals were dropped", PddlWarning, stacklevel=2)

    problem = Problem(
        name=name,
        domain_name=domain_name,
        objects=tuple(objects),
        init=init_tuple,
        goal=goal_tuple,
    )
    if domain is not None:
        check_problem_against_domain(problem, domain)
    return problem


def check_problem_against_domain(problem: Problem, domain: Domain) -> None:
    declared_types = domain.declared_types()
    for obj, typ in problem.objects:
        if typ not in declared_types:
            raise SemanticError(f"object '{obj}' has undeclared type '{typ}'")
    preds = domain.predicate_map()
    known = {o for o, _ in problem.objects}
    for where, lits in ((":init", problem.init), (":goal", problem.goal)):
        for lit in lits:
            decl = preds.get(lit.predicate)
            if decl is None:
                raise SemanticError(f"undeclared predicate '{lit.predicate}' in {where}")
            if decl.arity != len(lit.args):
                raise SemanticError(
                    f"predicate '{lit.predicate}' used with {len(lit.args)} "
                    f"arguments in {where}, declared with {decl.arity}"
                )
            for a in lit.args:
                if a not in known:
                    raise UndeclaredObject(f"unknown object '{a}' in {where}")


def parse_plan(text: str) -> Plan:
    """Parse plan text: one ``(name arg ...)`` step per line, ``;`` comments.

    Empty text is an empty plan. Steps must be flat and ground.
    """
    forms = read_sexprs(text)
    steps = []
    for form in forms:
        lst = _expect_list(form, "plan step")
        if not lst.items:
            raise PddlSyntaxError("empty plan step", *_pos(lst))
        name = _name_atom(lst.items[0], "action name")
        args = []
        for arg in lst.items[1:]:
            atom = _expect_atom(arg, "plan step argument")
            if atom.text.startswith("?"):
                raise PddlSyntaxError(
                    f"plan step argument '{atom.text}' is a variable", *_pos(atom)
                )
            if not is_valid_symbol(atom.text):
                raise PddlSyntaxError(f"invalid argument '{atom.text}'", *_pos(atom))
            args.append(atom.text)
        steps.append(PlanStep(name, tuple(args)))
    return Plan(tuple(steps))
