"""Forward state-space search used as the solvability oracle.

States are encoded as Python ints used as bitsets over the atoms that can
ever matter (init, goals, and every atom mentioned by a ground action), so
applicability and successor generation are a few integer ops. Search is
deterministic: actions are tried in grounding order and ties break FIFO,
so repeated solves of the same task return byte-identical plans.
"""

from __future__ import annotations

import heapq
import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .errors import PddlError
from .ground import GroundTask, ground
from .model import Domain, Plan, PlanStep, Problem
from .parser import parse_domain, parse_problem

DEFAULT_MAX_EXPANDED = 2_000_000
DEFAULT_MAX_SECONDS = 60.0

STRATEGIES = ("bfs", "gbfs_goalcount")


class Verdict(str, Enum):
    SOLVED = "solved"
    UNSOLVABLE = "unsolvable"
    RESOURCE_EXCEEDED = "resource_exceeded"


@dataclass(frozen=True)
class SearchLimits:
    max_expanded_states: int = DEFAULT_MAX_EXPANDED
    max_wall_time: float = DEFAULT_MAX_SECONDS
    strategy: str = "bfs"

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(
                f"unknown strategy '{self.strategy}', expected one of {STRATEGIES}"
            )


@dataclass
class SearchStats:
    expanded: int = 0
    generated: int = 0
    elapsed: float = 0.0


@dataclass
class SolveResult:
    verdict: Verdict
    plan: Plan | None
    stats: SearchStats


@dataclass(frozen=True)
class _EncodedTask:
    init: int
    goal_pos: int
    goal_neg: int
    goal_atoms: tuple[int, ...]
    # per action: (pre_pos, pre_neg, delete_mask_complement, add, index)
    actions: tuple[tuple[int, int, int, int, int], ...]


def _encode(task: GroundTask) -> _EncodedTask:
    ids: dict = {}

    def bit(atom) -> int:
        idx = ids.get(atom)
        if idx is None:
            idx = len(ids)
            ids[atom] = idx
        return 1 << idx

    def mask(atoms) -> int:
        m = 0
        for a in atoms:
            m |= bit(a)
        return m

    init = mask(task.init)
    goal_pos = mask(task.goal_pos)
    goal_neg = mask(task.goal_neg)
    actions = []
    for i, ga in enumerate(task.actions):
        pp = mask(ga.pre_pos)
        pn = mask(ga.pre_neg)
        add = mask(ga.add)
        dl = mask(ga.delete)
        actions.append((pp, pn, ~dl, add, i))
    goal_atoms = tuple(1 << ids[a] for a in task.goal_pos)
    return _EncodedTask(init, goal_pos, goal_neg, goal_atoms, tuple(actions))


def _reconstruct(task: GroundTask, parents: dict, state: int) -> Plan:
    steps: list[PlanStep] = []
    while True:
        prev = parents[state]
        if prev is None:
            break
        state, action_idx = prev
        steps.append(task.actions[action_idx].step)
    steps.reverse()
    return Plan(tuple(steps))


def solve(task: GroundTask, limits: SearchLimits | None = None) -> SolveResult:
    """Search the ground task for a plan.

    SOLVED returns a plan (shortest one under bfs). UNSOLVABLE means the
    reachable space was exhausted. RESOURCE_EXCEEDED means a limit was hit
    first and says nothing about solvability.
    """
    if limits is None:
        limits = SearchLimits()
    enc = _encode(task)
    start = time.monotonic()
    stats = SearchStats()

    goal_pos = enc.goal_pos
    goal_neg = enc.goal_neg
    actions = enc.actions
    parents: dict[int, tuple[int, int] | None] = {enc.init: None}

    if limits.strategy == "bfs":
        frontier = deque([enc.init])

        def pop():
            return frontier.popleft()

        def push(state: int, h: int):
            frontier.append(state)

        def empty():
            return not frontier

    else:  # gbfs_goalcount: order by unsatisfied goal count, FIFO on ties
        counter = 0
        heap: list[tuple[int, int, int]] = []

        def goal_count(state: int) -> int:
            unsat = sum(1 for g in enc.goal_atoms if not state & g)
            unsat += bin(state & goal_neg).count("1")
            return unsat

        def pop():
            return heapq.heappop(heap)[2]

        def push(state: int, h: int):
            nonlocal counter
            counter += 1
            heapq.heappush(heap, (h, counter, state))

        def empty():
            return not heap

        push(enc.init, goal_count(enc.init))

    while not empty():
        state = pop()
        stats.expanded += 1
        if state & goal_pos == goal_pos and not state & goal_neg:
            stats.elapsed = time.monotonic() - start
            return SolveResult(Verdict.SOLVED, _reconstruct(task, parents, state), stats)
        if stats.expanded >= limits.max_expanded_states:
            stats.elapsed = time.monotonic() - start
            return SolveResult(Verdict.RESOURCE_EXCEEDED, None, stats)
        if stats.expanded % 1024 == 0:
            if time.monotonic() - start > limits.max_wall_time:
                stats.elapsed = time.monotonic() - start
                return SolveResult(Verdict.RESOURCE_EXCEEDED, None, stats)
        for pp, pn, not_dl, add, idx in actions:
            if state & pp == pp and not state & pn:
                succ = (state & not_dl) | add
                if succ not in parents:
                    parents[succ] = (state, idx)
                    stats.generated += 1
                    if limits.strategy == "bfs":
                        push(succ, 0)
                    else:
                        push(succ, goal_count(succ))

    stats.elapsed = time.monotonic() - start
    return SolveResult(Verdict.UNSOLVABLE, None, stats)


@dataclass
class SolvabilityOutcome:
    """Result of the parse-ground-solve composition on predicted PDDL text."""

    status: str  # solvable | unsolvable | parse_failure | resource_exceeded
    plan: Plan | None = None
    error: str | None = None
    result: SolveResult | None = None

    SOLVABLE = "solvable"
    UNSOLVABLE = "unsolvable"
    PARSE_FAILURE = "parse_failure"
    RESOURCE_EXCEEDED = "resource_exceeded"


def solvability_check(
    df_text: str, pf_text: str, limits: SearchLimits | None = None
) -> SolvabilityOutcome:
    """Judge predicted PDDL under its own semantics: does a plan exist?

    Parse or semantic errors in either text yield parse_failure; they are
    the syntax bucket, not unsolvability.
    """
    try:
        domain = parse_domain(df_text)
        problem = parse_problem(pf_text, domain)
        # Static pruning never changes reachability; it only sheds ground
        # actions that could never fire (big win on type-guard domains).
        task = ground(domain, problem, prune_static=True)
    except PddlError as exc:
        return SolvabilityOutcome(SolvabilityOutcome.PARSE_FAILURE, error=str(exc))
    result = solve(task, limits)
    if result.verdict is Verdict.SOLVED:
        return SolvabilityOutcome(
            SolvabilityOutcome.SOLVABLE, plan=result.plan, result=result
        )
    if result.verdict is Verdict.UNSOLVABLE:
        return SolvabilityOutcome(SolvabilityOutcome.UNSOLVABLE, result=result)
    return SolvabilityOutcome(SolvabilityOutcome.RESOURCE_EXCEEDED, result=result)
