import random

import pytest

from bitgather import PowerLawModel, Topology


@pytest.fixture
def collinear3():
    """Three nodes on a line at x = 0, 1, 2."""
    return Topology.from_positions([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])


@pytest.fixture
def unit_staircase():
    return PowerLawModel(n=5, alpha=1.0, beta=1.0)


def random_topology(rng: random.Random, n_nodes: int, scale: float = 10.0) -> Topology:
    return Topology.from_positions(
        [(rng.uniform(0, scale), rng.uniform(0, scale)) for _ in range(n_nodes)]
    )


def mst_weight(weights) -> int:
    """Independent Prim oracle: MST weight of a complete graph.

    Deliberately separate from the schedule-search code so it can check it.
    """
    n = len(weights)
    if n == 1:
        return 0
    in_tree = [False] * n
    in_tree[0] = True
    best = [weights[0][v] for v in range(n)]
    total = 0
    for _ in range(n - 1):
        u = min(
            (v for v in range(n) if not in_tree[v]), key=lambda v: (best[v], v)
        )
        total += best[u]
        in_tree[u] = True
        for v in range(n):
            if not in_tree[v] and weights[u][v] < best[v]:
                best[v] = weights[u][v]
    return total
