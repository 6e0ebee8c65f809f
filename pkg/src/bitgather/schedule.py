"""Polling-schedule evaluation, statistics, and search.

A schedule is a permutation of node ids: position k is the k-th node
polled. The first node always transmits all n bits; every later node's
budget is conditioned on the set already polled, so the total depends on
the order. Under the MIN rule the minimum total over all schedules equals
n plus the weight of the minimum spanning tree of the complete graph with
pairwise budgets as edge weights: any schedule's attachment edges form a
spanning tree, and a Prim order achieves the MST.

"Average" statistics are the mean over uniformly random schedules, drawn
by Fisher-Yates shuffles of a seeded Mersenne Twister (random.Random), so
sampled results are bit-reproducible across platforms and worker counts.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from statistics import fmean
from typing import Callable, Sequence

from .correlation import (
    ConditioningRule,
    GaussianDecayModel,
    ModelSpec,
    conditioned_bits,
    pairwise_bits,
)
from .topology import Topology

# 10! is ~3.6M evaluations; beyond that exhaustive enumeration is refused.
EXHAUSTIVE_LIMIT = 10


class InfeasibleError(RuntimeError):
    """Request would require enumerating too many permutations."""


@dataclass(frozen=True)
class BitReport:
    """Per-node budgets in polling order plus their sum."""

    per_node: tuple[tuple[int, int], ...]  # (node, bits) in polling order
    total: int


@dataclass(frozen=True)
class ScheduleStats:
    mean_total: float
    min_total: int
    max_total: int
    argmin: tuple[int, ...]
    argmax: tuple[int, ...]
    sample_count: int
    exhaustive: bool


def _check_permutation(schedule: Sequence[int], n_nodes: int) -> tuple[int, ...]:
    order = tuple(schedule)
    if sorted(order) != list(range(n_nodes)):
        raise ValueError(f"schedule {order} is not a permutation of 0..{n_nodes - 1}")
    return order


def evaluate(
    model: ModelSpec,
    rule: ConditioningRule,
    topology: Topology,
    schedule: Sequence[int],
) -> BitReport:
    """Per-node budgets and total bits for one polling order."""
    order = _check_permutation(schedule, topology.size)
    per_node = []
    total = 0
    for k, node in enumerate(order):
        bits = conditioned_bits(model, rule, topology, node, order[:k])
        per_node.append((node, bits))
        total += bits
    return BitReport(per_node=tuple(per_node), total=total)


def budget_matrix(model: ModelSpec, topology: Topology) -> list[list[int]]:
    """Pairwise budgets for every node pair; symmetric, zero-safe diagonal."""
    n_nodes = topology.size
    w = [[0] * n_nodes for _ in range(n_nodes)]
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            b = pairwise_bits(model, topology.distance(i, j))
            w[i][j] = b
            w[j][i] = b
    return w


def _total_fn(
    model: ModelSpec, rule: ConditioningRule, topology: Topology
) -> Callable[[Sequence[int]], int]:
    """Fast total-only evaluation, equivalent to evaluate().total."""
    n = model.n
    if rule is ConditioningRule.ADDITIVE:
        if not isinstance(model, GaussianDecayModel):
            raise ValueError("additive rule requires Gaussian-decay parameters")
        n_nodes = topology.size
        e = [
            [math.exp(-model.beta * topology.distance(i, j) ** 2) for j in range(n_nodes)]
            for i in range(n_nodes)
        ]
        alpha = model.alpha
        from .correlation import guarded_ceil

        def total_additive(order: Sequence[int]) -> int:
            t = n
            for k in range(1, len(order)):
                node = order[k]
                row = e[node]
                s = sum(row[order[j]] for j in range(k))
                t += max(0, min(guarded_ceil(n * (1.0 - alpha * s)), n))
            return t

        return total_additive

    w = budget_matrix(model, topology)
    pick = min if rule is ConditioningRule.MIN else max

    def total_minmax(order: Sequence[int]) -> int:
        t = n
        for k in range(1, len(order)):
            row = w[order[k]]
            t += pick(row[order[j]] for j in range(k))
        return t

    return total_minmax


def _sampled_perms(n_nodes: int, count: int, seed: int) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    base = list(range(n_nodes))
    perms = []
    for _ in range(count):
        rng.shuffle(base)
        perms.append(tuple(base))
    return perms


def schedule_stats(
    model: ModelSpec,
    rule: ConditioningRule,
    topology: Topology,
    mode: str,
    *,
    count: int | None = None,
    seed: int | None = None,
    workers: int = 1,
) -> ScheduleStats:
    """Min / mean / max total bits over schedules.

    mode="exhaustive" enumerates all N! permutations (N <= EXHAUSTIVE_LIMIT);
    mode="sampled" draws `count` uniform permutations from `seed`. Results do
    not depend on `workers`.
    """
    n_nodes = topology.size
    total_of = _total_fn(model, rule, topology)

    if mode == "exhaustive":
        if n_nodes > EXHAUSTIVE_LIMIT:
            raise InfeasibleError(
                f"exhaustive enumeration refused for N={n_nodes} > "
                f"{EXHAUSTIVE_LIMIT}; use sampled mode"
            )
        best_min = best_max = None
        argmin = argmax = None
        acc = 0
        n_perms = 0
        for perm in itertools.permutations(range(n_nodes)):
            t = total_of(perm)
            acc += t
            n_perms += 1
            if best_min is None or t < best_min:
                best_min, argmin = t, perm
            if best_max is None or t > best_max:
                best_max, argmax = t, perm
        return ScheduleStats(
            mean_total=acc / n_perms,
            min_total=best_min,
            max_total=best_max,
            argmin=argmin,
            argmax=argmax,
            sample_count=n_perms,
            exhaustive=True,
        )

    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    if count is None or count < 1:
        raise ValueError("sampled mode needs count >= 1")
    if seed is None:
        raise ValueError("sampled mode needs an explicit seed")

    perms = _sampled_perms(n_nodes, count, seed)
    if workers > 1:
        chunk = max(1, -(-len(perms) // workers))
        parts = [perms[i : i + chunk] for i in range(0, len(perms), chunk)]
        with ThreadPoolExecutor(max_workers=workers) as ex:
            totals = [t for part in ex.map(lambda c: [total_of(p) for p in c], parts) for t in part]
    else:
        totals = [total_of(p) for p in perms]

    i_min = min(range(len(totals)), key=lambda i: (totals[i], i))
    i_max = min(range(len(totals)), key=lambda i: (-totals[i], i))
    return ScheduleStats(
        mean_total=fmean(totals),
        min_total=totals[i_min],
        max_total=totals[i_max],
        argmin=perms[i_min],
        argmax=perms[i_max],
        sample_count=len(perms),
        exhaustive=False,
    )


def _greedy_prim_order(w: list[list[int]], start: int) -> tuple[tuple[int, ...], int]:
    """Prim-style order from `start`: always attach the cheapest node next.

    Ties broken toward the lowest node id. Returns (order, attachment cost).
    """
    n_nodes = len(w)
    in_order = [False] * n_nodes
    in_order[start] = True
    attach = list(w[start])  # cheapest link from v into the scheduled set
    order = [start]
    cost = 0
    for _ in range(n_nodes - 1):
        best_v = -1
        for v in range(n_nodes):
            if in_order[v]:
                continue
            if best_v < 0 or attach[v] < attach[best_v]:
                best_v = v
        cost += attach[best_v]
        order.append(best_v)
        in_order[best_v] = True
        row = w[best_v]
        for v in range(n_nodes):
            if not in_order[v] and row[v] < attach[v]:
                attach[v] = row[v]
    return tuple(order), cost


def optimize(
    model: ModelSpec,
    rule: ConditioningRule,
    topology: Topology,
    objective: str = "minimize",
    strategy: str = "brute_force",
    *,
    count: int | None = None,
    seed: int | None = None,
    force: bool = False,
) -> tuple[tuple[int, ...], BitReport]:
    """Search for a schedule optimizing total bits.

    brute_force is exact (N <= EXHAUSTIVE_LIMIT). greedy_prim tries every
    start node and keeps the best Prim order; it is exact for the MIN rule
    with objective "minimize" and refused for other rules unless `force`
    is set (then it runs as a heuristic). random_restart keeps the best of
    `count` seeded random permutations.
    """
    if objective not in ("minimize", "maximize"):
        raise ValueError(f"unknown objective {objective!r}")
    n_nodes = topology.size
    total_of = _total_fn(model, rule, topology)
    better = (lambda a, b: a < b) if objective == "minimize" else (lambda a, b: a > b)

    if strategy == "brute_force":
        if n_nodes > EXHAUSTIVE_LIMIT:
            raise InfeasibleError(
                f"brute force refused for N={n_nodes} > {EXHAUSTIVE_LIMIT}"
            )
        best_perm = None
        best_total = None
        for perm in itertools.permutations(range(n_nodes)):
            t = total_of(perm)
            if best_total is None or better(t, best_total):
                best_perm, best_total = perm, t
    elif strategy == "greedy_prim":
        if (rule is not ConditioningRule.MIN or objective != "minimize") and not force:
            raise ValueError(
                "greedy_prim is only exact for the min rule with objective "
                "minimize; pass force=True to run it as a heuristic"
            )
        w = budget_matrix(model, topology)
        best_perm = None
        best_total = None
        for start in range(n_nodes):
            order, _ = _greedy_prim_order(w, start)
            t = total_of(order)
            if best_total is None or better(t, best_total):
                best_perm, best_total = order, t
    elif strategy == "random_restart":
        if count is None or count < 1:
            raise ValueError("random_restart needs count >= 1")
        if seed is None:
            raise ValueError("random_restart needs an explicit seed")
        best_perm = None
        best_total = None
        for perm in _sampled_perms(n_nodes, count, seed):
            t = total_of(perm)
            if best_total is None or better(t, best_total):
                best_perm, best_total = perm, t
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    return best_perm, evaluate(model, rule, topology, best_perm)
