"""Clusters of occupied sites on a d-dimensional cubic lattice."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ClusterError, ValidationError
from .statevector import PauliString

Site = tuple[int, ...]
Edge = tuple[Site, Site]


class Cluster:
    """Immutable set of lattice sites; qubit ``i`` is the ``i``-th site in lexicographic order.

    Construction only checks that sites are well-formed and distinct. Use
    :func:`validate_cluster` for connectivity.
    """

    __slots__ = ("dimension", "sites", "_index")

    def __init__(self, dimension: int, sites: Iterable[Sequence[int]]):
        if not isinstance(dimension, int) or dimension < 1:
            raise ClusterError(f"dimension must be a positive integer, got {dimension!r}")
        parsed = []
        for s in sites:
            site = tuple(int(c) for c in s)
            if len(site) != dimension:
                raise ClusterError(f"site {list(s)} does not have {dimension} coordinates")
            parsed.append(site)
        ordered = tuple(sorted(parsed))
        if len(set(ordered)) != len(ordered):
            dupes = sorted({s for s in ordered if ordered.count(s) > 1})
            raise ClusterError(f"duplicate sites: {dupes}")
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "sites", ordered)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(ordered)})

    def __setattr__(self, name, value):
        raise AttributeError("Cluster is immutable")

    def __repr__(self):
        return f"Cluster(dimension={self.dimension}, sites={list(self.sites)})"

    def __eq__(self, other):
        return isinstance(other, Cluster) and (self.dimension, self.sites) == (other.dimension, other.sites)

    def __hash__(self):
        return hash((self.dimension, self.sites))

    def __len__(self):
        return len(self.sites)

    def __contains__(self, site) -> bool:
        return tuple(site) in self._index

    def index(self, site: Sequence[int]) -> int:
        try:
            return self._index[tuple(site)]
        except KeyError:
            raise ClusterError(f"site {tuple(site)} is not in the cluster") from None

    def edges(self) -> list[Edge]:
        """Every nearest-neighbour pair once, as (lower, upper) in lexicographic order."""
        out = []
        for s in self.sites:
            for axis in range(self.dimension):
                t = s[:axis] + (s[axis] + 1,) + s[axis + 1:]
                if t in self._index:
                    out.append((s, t))
        return out

    def degree(self, site: Sequence[int]) -> int:
        return len(neighbors(self, site))

    @classmethod
    def chain(cls, n: int, start: int = 0) -> Cluster:
        return cls(1, [(start + i,) for i in range(n)])

    @classmethod
    def box(cls, *shape: int) -> Cluster:
        from itertools import product

        return cls(len(shape), product(*(range(k) for k in shape)))

    # -- JSON -------------------------------------------------------------
    @classmethod
    def from_dict(cls, data: Mapping) -> tuple[Cluster, list[int] | None]:
        """Parse cluster JSON; returns the cluster and the kappa bits (reordered to qubit order) if given."""
        if not isinstance(data, Mapping):
            raise ValidationError("cluster JSON must be an object")
        if "dimension" not in data:
            raise ValidationError("cluster JSON is missing field 'dimension'")
        if "sites" not in data:
            raise ValidationError("cluster JSON is missing field 'sites'")
        dim = data["dimension"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise ValidationError(f"field 'dimension' must be a positive integer, got {dim!r}")
        raw_sites = data["sites"]
        if not isinstance(raw_sites, list):
            raise ValidationError("field 'sites' must be a list of coordinate lists")
        for s in raw_sites:
            if (not isinstance(s, list) or len(s) != dim
                    or not all(isinstance(c, int) and not isinstance(c, bool) for c in s)):
                raise ValidationError(f"field 'sites' has a bad entry {s!r}: expected {dim} integers")
        try:
            cluster = cls(dim, raw_sites)
        except ClusterError as exc:
            raise ValidationError(f"field 'sites': {exc}") from None
        kappa = data.get("kappa")
        if kappa is not None:
            kappa = kappa_in_qubit_order(cluster, raw_sites, kappa)
        return cluster, kappa

    def to_dict(self) -> dict:
        return {"dimension": self.dimension, "sites": [list(s) for s in self.sites]}


def kappa_in_qubit_order(cluster: Cluster, file_sites: Sequence[Sequence[int]], kappa) -> list[int]:
    """Kappa bits listed alongside ``file_sites`` rearranged to the cluster's qubit order."""
    if not isinstance(kappa, list) or len(kappa) != len(file_sites):
        raise ValidationError(f"field 'kappa' must list one bit per site ({len(file_sites)})")
    if any(k not in (0, 1) or isinstance(k, bool) for k in kappa):
        raise ValidationError("field 'kappa' entries must be 0 or 1")
    out = [0] * len(cluster)
    for s, k in zip(file_sites, kappa):
        out[cluster.index(s)] = k
    return out


def neighbors(cluster: Cluster, s: Sequence[int]) -> set[Site]:
    s = tuple(s)
    if s not in cluster:
        raise ClusterError(f"site {s} is not in the cluster")
    out = set()
    for axis in range(cluster.dimension):
        for step in (-1, 1):
            t = s[:axis] + (s[axis] + step,) + s[axis + 1:]
            if t in cluster:
                out.add(t)
    return out


@dataclass(frozen=True)
class ClusterReport:
    ok: bool
    reason: str = ""
    components: list[list[Site]] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def connected_components(cluster: Cluster) -> list[list[Site]]:
    seen: set[Site] = set()
    comps = []
    for start in cluster.sites:
        if start in seen:
            continue
        seen.add(start)
        comp, queue = [], deque([start])
        while queue:
            s = queue.popleft()
            comp.append(s)
            for t in neighbors(cluster, s):
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        comps.append(sorted(comp))
    return comps


def validate_cluster(cluster: Cluster) -> ClusterReport:
    if len(cluster) == 0:
        return ClusterReport(False, "cluster is empty")
    comps = connected_components(cluster)
    if len(comps) > 1:
        return ClusterReport(False, f"cluster has {len(comps)} disconnected components", comps)
    return ClusterReport(True, components=comps)


def require_valid(cluster: Cluster) -> Cluster:
    report = validate_cluster(cluster)
    if not report:
        raise ClusterError(report.reason)
    return cluster


def correlation_operator(cluster: Cluster, a: Sequence[int]) -> PauliString:
    """X on site ``a`` and Z on each occupied neighbour."""
    terms = {cluster.index(a): "X"}
    for b in neighbors(cluster, a):
        terms[cluster.index(b)] = "Z"
    return PauliString(terms)


def bounding_box(cluster: Cluster) -> list[tuple[int, int]]:
    if len(cluster) == 0:
        raise ClusterError("bounding box of an empty cluster")
    return [(min(s[k] for s in cluster.sites), max(s[k] for s in cluster.sites))
            for k in range(cluster.dimension)]
