"""Gradient-based approximate maximizers: single-step sign method and
projected gradient ascent. Both return box-feasible points, so their values
lower-bound the exact optimum of c.f(x) over the box."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .geometry import Hyperrectangle
from .model import Network, evaluate, gradient


def fgsm(net: Network, x0, c, box: Hyperrectangle) -> tuple[np.ndarray, float]:
    """One signed-gradient step of the per-dimension box radius, clipped."""
    x0 = np.asarray(x0, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    step = box.radius * np.sign(gradient(net, x0, c))
    x = np.clip(x0 + step, box.lower, box.upper)
    return x, float(c @ evaluate(net, x))


def pgd(
    net: Network,
    x0,
    c,
    box: Hyperrectangle,
    steps: int = 1000,
    step_size: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, float]:
    """Projected signed-gradient ascent; returns the best iterate seen
    (the start point included)."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    x = np.asarray(x0, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    step = box.radius / 10.0 if step_size is None else np.asarray(step_size, dtype=np.float64)
    best_x, best_v = x, float(c @ evaluate(net, x))
    for _ in range(steps):
        x = np.clip(x + step * np.sign(gradient(net, x, c)), box.lower, box.upper)
        v = float(c @ evaluate(net, x))
        if v > best_v:
            best_x, best_v = x, v
    return best_x, best_v
