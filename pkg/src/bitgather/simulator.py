"""Synthetic correlated fields and end-to-end gathering runs.

The field generator seeds node 0 with a uniform n-bit value and assigns
the rest in increasing distance from node 0: each node gets a value within
+/- ceil(L * d) of its nearest already-assigned node, where d is that
distance and L tunes smoothness (L = 0 gives a constant field). This gives
a Lipschitz-style bound tying data deltas to distance, the same premise
the budget models encode.

A gather run walks a schedule, budgets each node against the already
polled set, encodes the low bits, and decodes against the reconstructed
reading of the nearest prior node. Reconstructed (not true) readings feed
later references, so decoding errors propagate as they would in a real
collector. Budgets are data-independent: the bit report always matches
schedule.evaluate on the same inputs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .codec import Reading, decode, encode
from .correlation import ConditioningRule, ModelSpec, conditioned_bits
from .schedule import BitReport, _check_permutation
from .topology import Topology


@dataclass(frozen=True)
class SensorField:
    readings: tuple[int, ...]
    width: int
    smoothness: float
    seed: int


@dataclass(frozen=True)
class GatherResult:
    bit_report: BitReport
    reconstructed: tuple[int, ...]
    exact_count: int
    max_abs_error: int


def generate_field(
    topology: Topology, n: int, smoothness: float, seed: int
) -> SensorField:
    """Deterministic correlated field over the topology's nodes."""
    if smoothness < 0:
        raise ValueError("smoothness must be >= 0")
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    top = (1 << n) - 1
    n_nodes = topology.size
    readings: list[int | None] = [None] * n_nodes
    readings[0] = rng.randint(0, top)
    # assignment order: increasing distance from the seed node, ties by id
    rest = sorted(range(1, n_nodes), key=lambda v: (topology.distance(0, v), v))
    assigned = [0]
    for v in rest:
        nearest = min(assigned, key=lambda u: (topology.distance(v, u), u))
        spread = math.ceil(smoothness * topology.distance(v, nearest))
        value = readings[nearest] + rng.randint(-spread, spread)
        readings[v] = max(0, min(value, top))
        assigned.append(v)
    return SensorField(
        readings=tuple(readings), width=n, smoothness=smoothness, seed=seed
    )


def gather(
    model: ModelSpec,
    rule: ConditioningRule,
    topology: Topology,
    schedule: Sequence[int],
    field: SensorField,
) -> GatherResult:
    """Run one full collection pass and report bits spent and fidelity."""
    if len(field.readings) != topology.size:
        raise ValueError(
            f"field has {len(field.readings)} readings for {topology.size} nodes"
        )
    if field.width != model.n:
        raise ValueError(f"field width {field.width} != model n {model.n}")
    order = _check_permutation(schedule, topology.size)
    n = model.n
    recon: dict[int, int] = {}
    per_node = []
    total = 0
    for k, node in enumerate(order):
        bits = conditioned_bits(model, rule, topology, node, order[:k])
        per_node.append((node, bits))
        total += bits
        truth = Reading(field.readings[node], n)
        if k == 0:
            recon[node] = truth.value  # full n bits, always exact
            continue
        ref_node = min(order[:k], key=lambda u: (topology.distance(node, u), u))
        reference = Reading(recon[ref_node], n)
        recon[node] = decode(reference, encode(truth, bits)).value
    reconstructed = tuple(recon[v] for v in range(topology.size))
    errors = [abs(a - b) for a, b in zip(reconstructed, field.readings)]
    return GatherResult(
        bit_report=BitReport(per_node=tuple(per_node), total=total),
        reconstructed=reconstructed,
        exact_count=sum(1 for e in errors if e == 0),
        max_abs_error=max(errors),
    )


def fidelity_sweep(
    model: ModelSpec,
    rule: ConditioningRule,
    topology: Topology,
    schedule: Sequence[int],
    smoothness_values: Iterable[float],
    seeds: Iterable[int],
) -> list[tuple[float, int, int, int, int]]:
    """(L, seed, total_bits, exact_count, max_abs_error) per combination."""
    l_values = list(smoothness_values)
    seed_values = list(seeds)
    if not l_values or not seed_values:
        raise ValueError("sweep needs at least one smoothness value and one seed")
    rows = []
    for smoothness in l_values:
        for seed in seed_values:
            field = generate_field(topology, model.n, smoothness, seed)
            result = gather(model, rule, topology, schedule, field)
            rows.append(
                (
                    smoothness,
                    seed,
                    result.bit_report.total,
                    result.exact_count,
                    result.max_abs_error,
                )
            )
    return rows
