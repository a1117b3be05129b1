"""Per-node activation bounds: interval propagation and LP-based
progressive tightening."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NumericalFailure
from .geometry import Hyperrectangle
from .model import Activation, Network, NodeId
from .state import root_state

log = logging.getLogger(__name__)

# Tightened bounds get inflated by this margin so LP feasibility noise can
# never make a sound bound unsound.
SAFETY_MARGIN = 1e-7
IMPROVEMENT_THRESHOLD = 1e-9
POST_CONSISTENCY_EPS = 1e-9


@dataclass(frozen=True)
class BoundsMap:
    """Pre/post activation intervals for every layer, plus the input box.
    ReLU-node accessors index through the network's ReLU layer list."""

    input_lower: np.ndarray
    input_upper: np.ndarray
    pre_lower: tuple[np.ndarray, ...]
    pre_upper: tuple[np.ndarray, ...]
    post_lower: tuple[np.ndarray, ...]
    post_upper: tuple[np.ndarray, ...]
    relu_layers: tuple[int, ...]

    def pre(self, node: NodeId) -> tuple[float, float]:
        k = self.relu_layers[node.layer]
        return float(self.pre_lower[k][node.node]), float(self.pre_upper[k][node.node])

    def post(self, node: NodeId) -> tuple[float, float]:
        k = self.relu_layers[node.layer]
        return float(self.post_lower[k][node.node]), float(self.post_upper[k][node.node])

    def copy_arrays(self):
        return (
            [a.copy() for a in self.pre_lower],
            [a.copy() for a in self.pre_upper],
            [a.copy() for a in self.post_lower],
            [a.copy() for a in self.post_upper],
        )


@dataclass(frozen=True)
class FixedByBounds:
    active: frozenset[NodeId]
    inactive: frozenset[NodeId]


def propagate_interval(net: Network, input_box: Hyperrectangle) -> BoundsMap:
    """Sound interval bounds, splitting each weight row into its positive
    and negative parts against the incoming interval."""
    if input_box.dim != net.input_dim:
        raise DimensionMismatch(
            f"box dimension {input_box.dim} != network input {net.input_dim}"
        )
    lo, hi = input_box.lower, input_box.upper
    pre_lo, pre_hi, post_lo, post_hi = [], [], [], []
    for layer in net.layers:
        w_pos = np.maximum(layer.weights, 0.0)
        w_neg = np.minimum(layer.weights, 0.0)
        zl = w_pos @ lo + w_neg @ hi + layer.biases
        zu = w_pos @ hi + w_neg @ lo + layer.biases
        pre_lo.append(zl)
        pre_hi.append(zu)
        if layer.activation is Activation.RELU:
            lo, hi = np.maximum(0.0, zl), np.maximum(0.0, zu)
        else:
            lo, hi = zl, zu
        post_lo.append(lo)
        post_hi.append(hi)
    return BoundsMap(
        input_lower=input_box.lower.copy(),
        input_upper=input_box.upper.copy(),
        pre_lower=tuple(pre_lo),
        pre_upper=tuple(pre_hi),
        post_lower=tuple(post_lo),
        post_upper=tuple(post_hi),
        relu_layers=net.relu_layers,
    )


def fixed_by_bounds(b: BoundsMap) -> FixedByBounds:
    """Nodes whose phase is forced by their pre-activation interval.
    A node with pre bounds exactly [0, 0] counts as inactive (z = 0 either way)."""
    active, inactive = set(), set()
    for i, k in enumerate(b.relu_layers):
        zl, zu = b.pre_lower[k], b.pre_upper[k]
        for j in range(len(zl)):
            if zu[j] <= 0.0:
                inactive.add(NodeId(i, j))
            elif zl[j] >= 0.0:
                active.add(NodeId(i, j))
    return FixedByBounds(frozenset(active), frozenset(inactive))


def tighten_lp(
    net: Network,
    input_box: Hyperrectangle,
    seed: BoundsMap,
    per_query_timeout: float,
) -> BoundsMap:
    """Progressive LP tightening: visit ReLU nodes in topological order and
    solve up to four LPs per node (max/min of zhat and of z) over the
    all-undetermined relaxation under the current bounds. A bound is replaced
    only when the LP finishes within the per-query timeout and improves it
    by at least the improvement threshold. Improved bounds are visible to
    later nodes immediately.
    """
    from .lp import LPStatus, build_relaxed_lp, solve_lp

    if per_query_timeout <= 0.0:
        return seed

    pre_lo, pre_hi, post_lo, post_hi = seed.copy_arrays()

    def current() -> BoundsMap:
        return BoundsMap(
            input_lower=seed.input_lower,
            input_upper=seed.input_upper,
            pre_lower=tuple(pre_lo),
            pre_upper=tuple(pre_hi),
            post_lower=tuple(post_lo),
            post_upper=tuple(post_hi),
            relu_layers=seed.relu_layers,
        )

    state = root_state(net)

    for i, k in enumerate(net.relu_layers):
        for j in range(net.layers[k].out_width):
            lp, imap = build_relaxed_lp(net, state, current(), input_box)
            targets = [
                ("pre", imap.pre[k][j], pre_lo[k], pre_hi[k]),
                ("post", imap.post[k][j], post_lo[k], post_hi[k]),
            ]
            for kind, col, lo_arr, hi_arr in targets:
                obj = np.zeros(lp.n_vars)
                obj[col] = 1.0
                for maximize in (True, False):
                    try:
                        res = solve_lp(
                            lp.with_objective(obj, maximize=maximize),
                            time_limit=per_query_timeout,
                        )
                    except NumericalFailure as exc:
                        log.debug(
                            "bound kept at node (%d, %d) %s: %s", i, j, kind, exc
                        )
                        continue
                    if res.status != LPStatus.OPTIMAL:
                        continue
                    if maximize:
                        cand = res.value + SAFETY_MARGIN
                        if hi_arr[j] - cand >= IMPROVEMENT_THRESHOLD:
                            hi_arr[j] = cand
                    else:
                        cand = res.value - SAFETY_MARGIN
                        if cand - lo_arr[j] >= IMPROVEMENT_THRESHOLD:
                            lo_arr[j] = cand
            # Keep post bounds consistent with the (possibly tighter) pre bounds.
            post_lo[k][j] = max(post_lo[k][j], max(0.0, pre_lo[k][j]) - POST_CONSISTENCY_EPS, 0.0)
            post_hi[k][j] = min(post_hi[k][j], max(0.0, pre_hi[k][j]) + POST_CONSISTENCY_EPS)
            if post_lo[k][j] > post_hi[k][j]:  # numerically crossed, keep sound order
                post_lo[k][j] = post_hi[k][j] = max(0.0, post_hi[k][j])

    return current()
