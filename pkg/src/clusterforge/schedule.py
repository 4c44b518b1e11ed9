"""Partition of cluster edges into rounds of disjoint pairwise interactions.

Step ``2k`` (0-based) holds the axis-``k`` edges whose lower endpoint sits an
even number of lattice steps above the bounding-box minimum along that axis;
step ``2k + 1`` holds the odd ones. Two such edges cannot share a site, so
every step is a matching. Empty steps are kept, so a schedule always has
``2 * dimension`` steps and step ``i`` always means axis ``i // 2``, parity
``i % 2``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import ValidationError
from .lattice import Cluster, Edge, Site, bounding_box, require_valid


@dataclass(frozen=True)
class Step:
    edges: tuple[Edge, ...] = ()

    def sites(self) -> list[Site]:
        return [s for e in self.edges for s in e]

    def is_matching(self) -> bool:
        sites = self.sites()
        return len(sites) == len(set(sites))

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class Schedule:
    steps: tuple[Step, ...] = ()

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def edges(self) -> list[Edge]:
        return [e for step in self.steps for e in step.edges]

    def to_dict(self) -> dict:
        return {"steps": [{"edges": [[list(a), list(b)] for a, b in step.edges]}
                          for step in self.steps]}

    @classmethod
    def from_dict(cls, data: Mapping) -> Schedule:
        try:
            steps = []
            for step in data["steps"]:
                steps.append(Step(tuple((tuple(a), tuple(b)) for a, b in step["edges"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed schedule JSON: {exc}") from None
        return cls(tuple(steps))


def edge_axis(edge: Edge) -> int:
    a, b = edge
    diff = [k for k in range(len(a)) if a[k] != b[k]]
    if len(diff) != 1 or abs(a[diff[0]] - b[diff[0]]) != 1:
        raise ValidationError(f"{edge} is not a nearest-neighbour pair")
    return diff[0]


def generate_schedule(cluster: Cluster) -> Schedule:
    require_valid(cluster)
    d = cluster.dimension
    lows = [lo for lo, _ in bounding_box(cluster)]
    buckets: list[list[Edge]] = [[] for _ in range(2 * d)]
    for a, b in cluster.edges():
        axis = edge_axis((a, b))
        lower = min(a[axis], b[axis])
        buckets[2 * axis + (lower - lows[axis]) % 2].append((a, b))
    return Schedule(tuple(Step(tuple(edges)) for edges in buckets))


@dataclass(frozen=True)
class ScheduleReport:
    ok: bool
    problems: list[str] = field(default_factory=list)
    shared_sites: list[tuple[int, Site]] = field(default_factory=list)
    uncovered: list[Edge] = field(default_factory=list)
    repeated: list[Edge] = field(default_factory=list)
    foreign: list[Edge] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _canon(edge: Sequence[Sequence[int]]) -> Edge:
    a, b = (tuple(s) for s in edge)
    return (a, b) if a <= b else (b, a)


def validate_schedule(cluster: Cluster, schedule: Schedule) -> ScheduleReport:
    problems = []
    shared, foreign = [], []
    wanted = set(cluster.edges())
    counts: Counter[Edge] = Counter()
    for i, step in enumerate(schedule.steps):
        seen: set[Site] = set()
        for edge in step.edges:
            e = _canon(edge)
            counts[e] += 1
            if e not in wanted:
                foreign.append(e)
                problems.append(f"step {i}: {e} is not an edge of the cluster")
            for s in e:
                if s in seen:
                    shared.append((i, s))
                    problems.append(f"step {i}: site {s} is in more than one edge")
                seen.add(s)
    uncovered = sorted(wanted - set(counts))
    repeated = sorted(e for e, c in counts.items() if c > 1)
    problems += [f"edge {e} is never scheduled" for e in uncovered]
    problems += [f"edge {e} is scheduled {counts[e]} times" for e in repeated]
    if len(schedule.steps) > 2 * cluster.dimension:
        problems.append(f"{len(schedule.steps)} steps exceed the bound {2 * cluster.dimension}")
    return ScheduleReport(not problems, problems, shared, uncovered, repeated, foreign)
