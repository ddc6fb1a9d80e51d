"""Independent reference implementations used to cross-check the package.

Everything here works on plain frozensets of (predicate, args) tuples and
re-derives semantics (typing, instantiation, applicability) from the model
directly, sharing no code with pddlbench.ground or pddlbench.search. Slow
and obvious on purpose.
"""

from __future__ import annotations

import itertools

from pddlbench.model import Domain, Problem

Atom = tuple[str, tuple[str, ...]]
SimpleState = frozenset


def _subtype(domain: Domain, child: str, ancestor: str) -> bool:
    if ancestor == "object" or child == ancestor:
        return True
    parents = dict(domain.types)
    cur = child
    while cur in parents:
        cur = parents[cur]
        if cur == ancestor:
            return True
    return False


def _instantiate(lit, binding) -> Atom:
    return (
        lit.predicate,
        tuple(binding.get(a, a) for a in lit.args),
    )


def all_ground_actions(domain: Domain, problem: Problem):
    """Yield (name, args, pre_pos, pre_neg, add, delete) tuples."""
    for schema in domain.actions:
        pools = []
        for param in schema.params:
            pools.append(
                [o for o, ot in problem.objects if _subtype(domain, ot, param.type)]
            )
        for combo in itertools.product(*pools):
            binding = {"?" + p.name: obj for p, obj in zip(schema.params, combo)}
            pre_pos = frozenset(
                _instantiate(l, binding) for l in schema.precondition if l.positive
            )
            pre_neg = frozenset(
                _instantiate(l, binding) for l in schema.precondition if not l.positive
            )
            add = frozenset(_instantiate(l, binding) for l in schema.add_effects)
            delete = frozenset(_instantiate(l, binding) for l in schema.del_effects)
            yield schema.name, combo, pre_pos, pre_neg, add, delete


def initial_state(problem: Problem) -> SimpleState:
    return frozenset((l.predicate, l.args) for l in problem.init)


def goal_sets(problem: Problem):
    pos = frozenset((l.predicate, l.args) for l in problem.goal if l.positive)
    neg = frozenset((l.predicate, l.args) for l in problem.goal if not l.positive)
    return pos, neg


def _pairs(steps):
    steps = getattr(steps, "steps", steps)
    out = []
    for s in steps:
        if hasattr(s, "name"):
            out.append((s.name, tuple(s.args)))
        else:
            name, args = s
            out.append((name, tuple(args)))
    return out


def replay(domain: Domain, problem: Problem, steps) -> SimpleState | None:
    """Apply plan steps; None when some step is unknown or not applicable."""
    actions = {}
    for name, args, pre_pos, pre_neg, add, delete in all_ground_actions(domain, problem):
        actions[(name, tuple(args))] = (pre_pos, pre_neg, add, delete)
    state = initial_state(problem)
    for name, args in _pairs(steps):
        entry = actions.get((name, tuple(args)))
        if entry is None:
            return None
        pre_pos, pre_neg, add, delete = entry
        if not (pre_pos <= state and not (pre_neg & state)):
            return None
        state = (state - delete) | add
    return state


def plan_reaches_goal(domain: Domain, problem: Problem, steps) -> bool:
    final = replay(domain, problem, steps)
    if final is None:
        return False
    pos, neg = goal_sets(problem)
    return pos <= final and not (neg & final)


def iddfs_optimal_length(domain: Domain, problem: Problem, max_depth: int = 40):
    """Optimal plan length by iterative deepening, None if none <= max_depth.

    Uses a per-iteration transposition table (skip states already visited
    with at least as much remaining budget), which preserves completeness
    per iteration, so the first successful depth is the optimum.
    """
    grounded = list(all_ground_actions(domain, problem))
    init = initial_state(problem)
    goal_pos, goal_neg = goal_sets(problem)

    def satisfied(state) -> bool:
        return goal_pos <= state and not (goal_neg & state)

    if satisfied(init):
        return 0

    for limit in range(1, max_depth + 1):
        best_budget: dict = {}

        def dfs(state, remaining: int) -> bool:
            if satisfied(state):
                return True
            if remaining == 0:
                return False
            if best_budget.get(state, -1) >= remaining:
                return False
            best_budget[state] = remaining
            for _, _, pre_pos, pre_neg, add, delete in grounded:
                if pre_pos <= state and not (pre_neg & state):
                    if dfs((state - delete) | add, remaining - 1):
                        return True
            return False

        if dfs(init, limit):
            return limit
    return None
