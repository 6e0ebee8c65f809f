"""Node placement and pairwise Euclidean distances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence


class TopologyError(ValueError):
    """Malformed node-placement input (bad file, bad ids, bad coordinates)."""


@dataclass(frozen=True)
class Topology:
    """Immutable 2-D node layout with a precomputed distance matrix.

    positions[i] is the (x, y) coordinate of node i; distances is the full
    symmetric matrix of Euclidean distances. Safe for concurrent reads.
    """

    positions: tuple[tuple[float, float], ...]
    distances: tuple[tuple[float, ...], ...]

    @property
    def size(self) -> int:
        return len(self.positions)

    @classmethod
    def from_positions(cls, positions: Sequence[tuple[float, float]]) -> "Topology":
        if not positions:
            raise TopologyError("topology needs at least one node")
        pos = tuple((float(x), float(y)) for x, y in positions)
        for i, (x, y) in enumerate(pos):
            if not (math.isfinite(x) and math.isfinite(y)):
                raise TopologyError(f"non-finite coordinate for node {i}")
        rows = []
        for xi, yi in pos:
            rows.append(tuple(math.hypot(xi - xj, yi - yj) for xj, yj in pos))
        return cls(positions=pos, distances=tuple(rows))

    def distance(self, i: int, j: int) -> float:
        n = self.size
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"node index out of range: ({i}, {j}) with N={n}")
        return self.distances[i][j]


def load_topology(source: str | Path | Iterable[str]) -> Topology:
    """Load a topology from `id,x,y` comma-separated text.

    Ids must be dense in [0, N) (any order in the file). Errors carry the
    offending line number, header = line 1.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = [ln.rstrip("\n") for ln in source]

    lines = [ln for ln in lines if ln.strip() != ""]
    if not lines:
        raise TopologyError("empty input: expected header id,x,y")
    header = [c.strip() for c in lines[0].split(",")]
    if header != ["id", "x", "y"]:
        raise TopologyError(f"line 1: expected header id,x,y, got {lines[0]!r}")

    by_id: dict[int, tuple[float, float]] = {}
    for lineno, raw in enumerate(lines[1:], start=2):
        cells = [c.strip() for c in raw.split(",")]
        if len(cells) != 3:
            raise TopologyError(f"line {lineno}: expected 3 fields, got {len(cells)}")
        try:
            node_id = int(cells[0])
        except ValueError:
            raise TopologyError(f"line {lineno}: id {cells[0]!r} is not an integer") from None
        try:
            x, y = float(cells[1]), float(cells[2])
        except ValueError:
            raise TopologyError(f"line {lineno}: non-numeric coordinate") from None
        if node_id < 0:
            raise TopologyError(f"line {lineno}: negative id {node_id}")
        if not (math.isfinite(x) and math.isfinite(y)):
            raise TopologyError(f"line {lineno}: non-finite coordinate")
        if node_id in by_id:
            raise TopologyError(f"line {lineno}: duplicate id {node_id}")
        by_id[node_id] = (x, y)

    if not by_id:
        raise TopologyError("empty input: no node records after header")
    expected = list(range(len(by_id)))
    if sorted(by_id) != expected:
        missing = sorted(set(expected) - set(by_id))
        raise TopologyError(f"ids must be dense 0..{len(by_id) - 1}; missing {missing}")
    return Topology.from_positions([by_id[i] for i in expected])
