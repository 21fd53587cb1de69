"""Nondimensional parameter record and mode stiffness coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Params:
    """Mach, Weber, Cavitation and polytropic numbers for one configuration.

    Immutable after construction; epsilon = 0 is legal and selects the
    incompressible limit.
    """

    epsilon: float
    weber: float
    cavitation: float
    gamma: float


def make_params(epsilon, weber, cavitation, gamma):
    """Validate and build a Params record.

    Rejects non-finite inputs, weber <= 0, gamma <= 1 and epsilon < 0.
    """
    values = dict(epsilon=epsilon, weber=weber, cavitation=cavitation, gamma=gamma)
    for name, v in values.items():
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")
    if weber <= 0:
        raise ValueError(f"weber must be positive, got {weber}")
    if gamma <= 1:
        raise ValueError(f"gamma must exceed 1, got {gamma}")
    if epsilon < 0:
        raise ValueError(f"epsilon must be non-negative, got {epsilon}")
    if cavitation < 0:
        raise ValueError(f"cavitation must be non-negative, got {cavitation}")
    return Params(float(epsilon), float(weber), float(cavitation), float(gamma))


def rl_hat(params, l):
    """Mode stiffness: (3 gamma/2) Ca + 2(3 gamma - 1)/We at l = 0, and
    (l+2)(l-1)/We for l >= 2.

    l = 1 is rejected loudly: the center-of-mass frame removes all l = 1
    modes from the linearized system, and silently returning 0 would let
    that constraint be violated downstream.
    """
    if not isinstance(l, int):
        raise TypeError(f"l must be an integer, got {type(l).__name__}")
    if l < 0:
        raise ValueError(f"l must be non-negative, got {l}")
    if l == 1:
        raise ValueError("l = 1 modes are excluded by the center-of-mass constraint")
    if l == 0:
        return 1.5 * params.gamma * params.cavitation + 2.0 * (3.0 * params.gamma - 1.0) / params.weber
    return (l + 2) * (l - 1) / params.weber
