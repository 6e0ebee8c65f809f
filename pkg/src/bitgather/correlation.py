"""Distance-driven bit budgets: pairwise and set-conditioned.

Two model families are supported:

* PowerLawModel  — budget = min(alpha * ceil(d**beta), n), a staircase that
  grows with distance.
* GaussianDecayModel — budget = ceil(n * (1 - alpha * exp(-beta * d**2))),
  saturating at n as the correlation term decays.

Both depend on distance only, so the pairwise budget is symmetric by
construction. Conditioning on a set of already-transmitted nodes uses one
of three rules: nearest prior node (MIN), farthest prior node (MAX), or a
summed exponential term (ADDITIVE, Gaussian-decay parameters only).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

from .topology import Topology

# Values this close to an integer are snapped before the ceiling, so that
# floating-point noise (e.g. exp(0) rounding) cannot inflate a budget by one.
CEIL_SNAP = 1e-9


def guarded_ceil(x: float) -> int:
    nearest = round(x)
    if abs(x - nearest) <= CEIL_SNAP:
        return int(nearest)
    return math.ceil(x)


@dataclass(frozen=True)
class PowerLawModel:
    """Staircase budget: alpha * ceil(d**beta), capped at n."""

    n: int
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")


@dataclass(frozen=True)
class GaussianDecayModel:
    """Saturating budget: ceil(n * (1 - alpha * exp(-beta * d**2)))."""

    n: int
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")


ModelSpec = Union[PowerLawModel, GaussianDecayModel]


class ConditioningRule(Enum):
    MIN = "min"
    MAX = "max"
    ADDITIVE = "additive"


def _clamp(bits: int, n: int) -> int:
    return max(0, min(bits, n))


def pairwise_bits(model: ModelSpec, d: float) -> int:
    """Bits a node must transmit given one other node's data, at distance d.

    Always in [0, n]. Raises on non-finite or negative d, and on the
    singular 0**beta case for negative power-law exponents.
    """
    if not math.isfinite(d):
        raise ValueError(f"distance must be finite, got {d!r}")
    if d < 0:
        raise ValueError(f"distance must be non-negative, got {d!r}")
    if isinstance(model, PowerLawModel):
        if d == 0 and model.beta < 0:
            raise ValueError("d = 0 with negative exponent is singular")
        raw = model.alpha * guarded_ceil(d**model.beta)
        return _clamp(guarded_ceil(raw), model.n)
    raw = model.n * (1.0 - model.alpha * math.exp(-model.beta * d * d))
    return _clamp(guarded_ceil(raw), model.n)


def conditioned_bits(
    model: ModelSpec,
    rule: ConditioningRule,
    topology: Topology,
    i: int,
    prior: Iterable[int],
) -> int:
    """Bits node i must transmit given the nodes in `prior` already have.

    An empty prior set means i transmits everything (n bits). The ADDITIVE
    rule requires Gaussian-decay parameters; MIN/MAX work with either model.
    """
    prior_set = set(prior)
    if i in prior_set:
        raise ValueError(f"node {i} cannot condition on itself")
    topology.distance(i, i)  # index check
    if not prior_set:
        return model.n

    if rule is ConditioningRule.ADDITIVE:
        if not isinstance(model, GaussianDecayModel):
            raise ValueError("additive rule requires Gaussian-decay parameters")
        s = sum(
            math.exp(-model.beta * topology.distance(i, j) ** 2) for j in prior_set
        )
        return _clamp(guarded_ceil(model.n * (1.0 - model.alpha * s)), model.n)

    budgets = [pairwise_bits(model, topology.distance(i, j)) for j in prior_set]
    return min(budgets) if rule is ConditioningRule.MIN else max(budgets)
