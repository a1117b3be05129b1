"""Branch-and-bound over partial activation states with LP-relaxation
bounding and incumbent pruning."""

from __future__ import annotations

import heapq
import json
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, TextIO

import numpy as np

from .bounds import BoundsMap, fixed_by_bounds, propagate_interval, tighten_lp
from .errors import NoUndetermined
from .lp import (
    LPStatus,
    build_relaxed_lp,
    check_relu_consistency,
    solve_lp,
    split_assignment,
)
from .model import Network, NodeId
from .problems import OptimizationProblem
from .state import PartialActivationState, root_state

CONSISTENCY_TOL = 1e-6


class RegionStatus(Enum):
    WORSE_THAN_OPT = "worse_than_opt"
    UNKNOWN = "unknown"
    OPTIMAL = "optimal"


class SplitStrategy(Enum):
    EARLIEST_UNFIXED = "earliest"
    LARGEST_VIOLATION = "largest_violation"


class NodeOrder(Enum):
    BEST_FIRST = "best_first"
    DEPTH_FIRST = "depth_first"


class Status(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class RegionOutcome:
    status: RegionStatus
    lp_bound: float
    value: Optional[float] = None
    assignment: Optional[np.ndarray] = None  # input vector (Optimal only)
    lp_assignment: Optional[np.ndarray] = None  # full LP vector (Unknown only)


@dataclass
class SearchStats:
    nodes_explored: int = 0
    lps_solved: int = 0
    wall_seconds: float = 0.0
    peak_frontier: int = 0
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SearchResult:
    status: Status
    value: Optional[float] = None
    argopt: Optional[np.ndarray] = None
    stats: SearchStats = field(default_factory=SearchStats)


@dataclass(frozen=True)
class SearchConfig:
    split_strategy: SplitStrategy = SplitStrategy.EARLIEST_UNFIXED
    node_order: NodeOrder = NodeOrder.BEST_FIRST
    timeout: float = 120.0
    tighten_timeout: float = 0.0  # seconds per preprocessing LP; 0 disables
    warm_start_pgd: bool = False
    consistency_tol: float = CONSISTENCY_TOL
    stop_at_first_optimal: bool = False  # feasibility mode: exit on first witness

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")


def optimum_for_region(
    net: Network,
    problem: OptimizationProblem,
    state: PartialActivationState,
    bounds: BoundsMap,
    incumbent: float,
    consistency_tol: float = CONSISTENCY_TOL,
) -> RegionOutcome:
    """Solve the relaxed LP for the region. Infeasible regions and regions
    whose LP bound cannot beat the incumbent report WorseThanOpt; a
    consistent LP optimum is the region optimum; otherwise Unknown."""
    lp, imap = build_relaxed_lp(
        net,
        state,
        bounds,
        problem.box,
        output_rows=problem.rows,
        objective=problem.objective,
        t_upper=problem.t_upper,
    )
    res = solve_lp(lp)
    if res.status == LPStatus.INFEASIBLE:
        return RegionOutcome(RegionStatus.WORSE_THAN_OPT, lp_bound=-np.inf)
    bound = np.inf if res.status == LPStatus.UNBOUNDED else res.value
    if bound <= incumbent:
        return RegionOutcome(RegionStatus.WORSE_THAN_OPT, lp_bound=bound)
    if res.status == LPStatus.UNBOUNDED:
        # No assignment to check; force a split.
        return RegionOutcome(RegionStatus.UNKNOWN, lp_bound=bound)
    pre, post = split_assignment(net, imap, res.assignment)
    if not check_relu_consistency(net, pre, post, consistency_tol):
        x = res.assignment[imap.x].copy()
        value = problem.objective_at(net, x)
        return RegionOutcome(
            RegionStatus.OPTIMAL, lp_bound=bound, value=value, assignment=x
        )
    return RegionOutcome(
        RegionStatus.UNKNOWN, lp_bound=bound, lp_assignment=res.assignment
    )


def split(
    state: PartialActivationState,
    strategy: SplitStrategy,
    lp_assignment: Optional[np.ndarray] = None,
    net: Optional[Network] = None,
    imap=None,
) -> tuple[PartialActivationState, PartialActivationState]:
    """Fix one undetermined node: first child active, second inactive."""
    if not state.undetermined:
        raise NoUndetermined("state has no undetermined node to split")
    node = _pick_node(state, strategy, lp_assignment, net, imap)
    return state.fix(node, active=True), state.fix(node, active=False)


def _pick_node(state, strategy, lp_assignment, net, imap) -> NodeId:
    earliest = min(state.undetermined)
    if strategy is SplitStrategy.EARLIEST_UNFIXED or lp_assignment is None:
        return earliest
    if net is None or imap is None:
        raise ValueError("LargestViolation needs the network and index map")
    best, best_violation = earliest, 0.0
    for node in sorted(state.undetermined):
        zhat = lp_assignment[imap.pre_index(node)]
        z = lp_assignment[imap.post_index(node)]
        violation = abs(z - max(0.0, zhat))
        if violation > best_violation:
            best, best_violation = node, violation
    return best if best_violation > 0.0 else earliest


def optimize(
    net: Network,
    problem: OptimizationProblem,
    config: SearchConfig = SearchConfig(),
    bounds: Optional[BoundsMap] = None,
    trace: Optional[TextIO] = None,
    region_evaluator: Optional[Callable] = None,
) -> SearchResult:
    """Branch-and-bound global maximization over the canonical problem.

    `region_evaluator` defaults to optimum_for_region and exists so search
    behavior (pruning, incumbents, ordering) can be exercised with scripted
    region outcomes.
    """
    start = time.monotonic()
    stats = SearchStats()

    if bounds is None:
        bounds = propagate_interval(net, problem.box)
        if config.tighten_timeout > 0.0:
            bounds = tighten_lp(net, problem.box, bounds, config.tighten_timeout)

    fixed = fixed_by_bounds(bounds)
    root = root_state(net, active=fixed.active, inactive=fixed.inactive)

    incumbent = -np.inf
    argopt: Optional[np.ndarray] = None

    if config.warm_start_pgd and not problem.rows and problem.objective.c_y is not None:
        from .attacks import pgd

        x_ws, v_ws = pgd(net, problem.box.center, problem.objective.c_y, problem.box)
        if problem.objective.c_x is not None:
            v_ws += float(problem.objective.c_x @ x_ws)
        incumbent, argopt = v_ws, x_ws

    evaluator = region_evaluator or (
        lambda st, inc: optimum_for_region(
            net, problem, st, bounds, inc, config.consistency_tol
        )
    )

    imap = (
        _imap_for(net, problem)
        if config.split_strategy is SplitStrategy.LARGEST_VIOLATION
        else None
    )

    # Frontier entries: (priority, tiebreak counter, state, parent LP bound).
    # Best-first keys on the parent's LP bound (children can only be worse);
    # depth-first is LIFO.
    best_first = config.node_order is NodeOrder.BEST_FIRST
    counter = 0
    frontier: list = []

    def push(state: PartialActivationState, parent_bound: float):
        nonlocal counter
        if best_first:
            heapq.heappush(frontier, (-parent_bound, counter, state))
        else:
            frontier.append((None, counter, state))
        counter += 1

    def pop() -> tuple[PartialActivationState, float]:
        if best_first:
            neg_bound, _, state = heapq.heappop(frontier)
            return state, -neg_bound
        _, _, state = frontier.pop()
        return state, np.inf

    push(root, np.inf)
    timed_out = False

    while frontier:
        if time.monotonic() - start > config.timeout:
            timed_out = True
            break
        stats.peak_frontier = max(stats.peak_frontier, len(frontier))
        state, _ = pop()
        outcome = evaluator(state, incumbent)
        stats.nodes_explored += 1
        stats.lps_solved += 1
        if trace is not None:
            trace.write(
                json.dumps(
                    {
                        "state": state.fingerprint(),
                        "lp_bound": None if not np.isfinite(outcome.lp_bound) else outcome.lp_bound,
                        "status": outcome.status.value,
                    }
                )
                + "\n"
            )
        if outcome.status is RegionStatus.WORSE_THAN_OPT:
            continue
        if outcome.status is RegionStatus.OPTIMAL:
            if outcome.value > incumbent:
                incumbent = outcome.value
                argopt = outcome.assignment
                if config.stop_at_first_optimal:
                    break
            continue
        first, second = split(
            state,
            config.split_strategy,
            lp_assignment=outcome.lp_assignment,
            net=net,
            imap=imap,
        )
        push(second, outcome.lp_bound)
        push(first, outcome.lp_bound)

    stats.wall_seconds = time.monotonic() - start
    if timed_out:
        return SearchResult(
            Status.TIMEOUT,
            value=None if argopt is None else incumbent,
            argopt=argopt,
            stats=stats,
        )
    if argopt is None and not np.isfinite(incumbent):
        return SearchResult(Status.INFEASIBLE, stats=stats)
    return SearchResult(Status.OPTIMAL, value=incumbent, argopt=argopt, stats=stats)


def _imap_for(net: Network, problem: OptimizationProblem):
    from .lp import _index_map

    use_t = bool(problem.objective.c_t != 0.0 or any(r.a_t for r in problem.rows))
    return _index_map(net, use_t)
