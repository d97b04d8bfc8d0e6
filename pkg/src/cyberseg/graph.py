"""Device networks, connectivity, and the isolation scoring kernel.

A network is a set of devices plus undirected connections.  Given a set of
attacked devices, every connected device pair is either *vulnerable* (at
least one endpoint attacked) or *healthy* (neither endpoint attacked).  The
combined objective

    phi = (n0**2 + 1) * vulnerability - healthiness

ranks residual networks lexicographically: fewer vulnerable pairs always
wins, and among equals more healthy pairs wins.  ``n0`` (the multiplier
base) is the device count of the original, uncut network so that scores of
different candidate cuts stay mutually comparable.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Optional, Union


class ConnectionKind(Enum):
    """How two devices relate: a direct link, a multi-hop path, or nothing."""

    DIRECT = "direct"
    INDIRECT = "indirect"
    NONE = "none"


@dataclass(frozen=True)
class Device:
    """One network device. Ids are stable: removal never re-indexes."""

    id: int
    label: Optional[str] = None

    def __post_init__(self) -> None:
        if not isinstance(self.id, int) or isinstance(self.id, bool) or self.id < 0:
            raise ValueError(f"device id must be a non-negative integer, got {self.id!r}")


@dataclass(frozen=True)
class AttackSet:
    """The device ids flagged as attacked."""

    attacked: frozenset[int] = frozenset()

    def __init__(self, attacked: Iterable[int] = ()) -> None:
        ids = frozenset(attacked)
        for i in ids:
            if not isinstance(i, int) or isinstance(i, bool) or i < 0:
                raise ValueError(f"attacked id must be a non-negative integer, got {i!r}")
        object.__setattr__(self, "attacked", ids)

    def __contains__(self, device_id: int) -> bool:
        return device_id in self.attacked

    def __len__(self) -> int:
        return len(self.attacked)


@dataclass(frozen=True)
class ComponentSummary:
    """Size and attacked-device count of one connected component."""

    size: int
    attacked_count: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("component size must be at least 1")
        if not 0 <= self.attacked_count <= self.size:
            raise ValueError(
                f"attacked_count {self.attacked_count} outside [0, {self.size}]"
            )


@dataclass(frozen=True)
class ScoreReport:
    """Vulnerable/healthy pair counts and the combined objective value."""

    vulnerability: int
    healthiness: int
    phi: int
    multiplier_base: int

    def __post_init__(self) -> None:
        if self.vulnerability < 0 or self.healthiness < 0:
            raise ValueError("pair counts must be non-negative")
        if self.multiplier_base < 0:
            raise ValueError("multiplier_base must be non-negative")
        expected = (self.multiplier_base**2 + 1) * self.vulnerability - self.healthiness
        if self.phi != expected:
            raise ValueError(f"phi {self.phi} inconsistent with counts (expected {expected})")

    @classmethod
    def from_counts(cls, vulnerability: int, healthiness: int, multiplier_base: int) -> "ScoreReport":
        phi = (multiplier_base**2 + 1) * vulnerability - healthiness
        return cls(vulnerability, healthiness, phi, multiplier_base)


class Graph:
    """Immutable undirected network of devices.

    Connections are unordered pairs of distinct device ids, stored once.
    All operations treat the graph as a value: removal returns a new graph.
    """

    __slots__ = ("_ids", "_labels", "_pairs", "_adj", "_order", "_hash")

    def __init__(
        self,
        devices: Iterable[Union[int, Device]] = (),
        connections: Iterable[tuple[int, int]] = (),
    ) -> None:
        ids: set[int] = set()
        labels: dict[int, str] = {}
        for entry in devices:
            dev = entry if isinstance(entry, Device) else Device(entry)
            if dev.id in ids and labels.get(dev.id) != dev.label and dev.label is not None:
                raise ValueError(f"conflicting labels for device {dev.id}")
            ids.add(dev.id)
            if dev.label is not None:
                labels[dev.id] = dev.label

        pairs: set[tuple[int, int]] = set()
        for conn in connections:
            u, v = conn
            if u == v:
                raise ValueError(f"self-loop on device {u} is not allowed")
            if u not in ids or v not in ids:
                raise ValueError(f"connection ({u}, {v}) references an unknown device")
            pairs.add((u, v) if u < v else (v, u))

        adj: dict[int, list[int]] = {i: [] for i in ids}
        for u, v in pairs:
            adj[u].append(v)
            adj[v].append(u)

        self._ids: frozenset[int] = frozenset(ids)
        self._labels: dict[int, str] = labels
        self._pairs: frozenset[tuple[int, int]] = frozenset(pairs)
        self._order: tuple[int, ...] = tuple(sorted(ids))
        self._adj: dict[int, tuple[int, ...]] = {i: tuple(sorted(adj[i])) for i in ids}
        self._hash = hash((self._ids, self._pairs, tuple(sorted(labels.items()))))

    @property
    def device_ids(self) -> frozenset[int]:
        return self._ids

    @property
    def devices(self) -> tuple[Device, ...]:
        return tuple(Device(i, self._labels.get(i)) for i in self._order)

    @property
    def connections(self) -> frozenset[tuple[int, int]]:
        return self._pairs

    @property
    def device_count(self) -> int:
        return len(self._ids)

    @property
    def connection_count(self) -> int:
        return len(self._pairs)

    def label(self, device_id: int) -> Optional[str]:
        self._require(device_id)
        return self._labels.get(device_id)

    def has_device(self, device_id: int) -> bool:
        return device_id in self._ids

    def has_connection(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._pairs

    def neighbors(self, device_id: int) -> tuple[int, ...]:
        self._require(device_id)
        return self._adj[device_id]

    def degree(self, device_id: int) -> int:
        self._require(device_id)
        return len(self._adj[device_id])

    def adjacency(self) -> Mapping[int, tuple[int, ...]]:
        """Read-only adjacency view, neighbor lists sorted by id."""
        return MappingProxyType(self._adj)

    def _require(self, device_id: int) -> None:
        if device_id not in self._ids:
            raise ValueError(f"unknown device id {device_id}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._ids == other._ids
            and self._pairs == other._pairs
            and self._labels == other._labels
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(devices={self.device_count}, connections={self.connection_count})"


def _require_attacked_in_graph(g: Graph, a: AttackSet) -> None:
    missing = a.attacked - g.device_ids
    if missing:
        raise ValueError(f"attacked devices not in graph: {sorted(missing)}")


def remove_devices(g: Graph, c: Iterable[int]) -> Graph:
    """Return a copy of ``g`` without the devices in ``c`` or their connections."""
    cut = set(c)
    unknown = cut - g.device_ids
    if unknown:
        raise ValueError(f"cannot remove unknown devices: {sorted(unknown)}")
    survivors = [Device(i, g.label(i)) for i in sorted(g.device_ids - cut)]
    kept = [(u, v) for (u, v) in g.connections if u not in cut and v not in cut]
    return Graph(survivors, kept)


def are_connected(g: Graph, u: int, v: int) -> ConnectionKind:
    """Classify the pair (u, v): directly linked, path-connected, or neither."""
    if u == v:
        raise ValueError("connection kind is defined on two distinct devices")
    g._require(u)
    g._require(v)
    if g.has_connection(u, v):
        return ConnectionKind.DIRECT
    # Breadth-first search from u, early exit on reaching v.
    adj = g.adjacency()
    seen = {u}
    frontier = [u]
    while frontier:
        nxt: list[int] = []
        for node in frontier:
            for nb in adj[node]:
                if nb == v:
                    return ConnectionKind.INDIRECT
                if nb not in seen:
                    seen.add(nb)
                    nxt.append(nb)
        frontier = nxt
    return ConnectionKind.NONE


def residual_pair_counts(
    adj: Mapping[int, tuple[int, ...]],
    order: Iterable[int],
    attacked: frozenset[int],
    removed: frozenset[int] = frozenset(),
) -> tuple[int, int]:
    """(vulnerable, healthy) connected-pair counts of the network minus ``removed``.

    This is the solver hot path: it walks components with an iterative DFS
    and applies the per-component pair formula without building new graphs.
    """
    visited = set(removed)
    vul = 0
    heal = 0
    for start in order:
        if start in visited:
            continue
        visited.add(start)
        stack = [start]
        size = 0
        att = 0
        while stack:
            node = stack.pop()
            size += 1
            if node in attacked:
                att += 1
            for nb in adj[node]:
                if nb not in visited:
                    visited.add(nb)
                    stack.append(nb)
        b = att * (att - 1) // 2 + att * (size - att)
        vul += b
        heal += size * (size - 1) // 2 - b
    return vul, heal


def components(g: Graph, a: AttackSet) -> list[tuple[tuple[int, ...], ComponentSummary]]:
    """Connected components with their size and attacked-device count.

    Components are ordered by their smallest device id; member tuples are
    sorted, so output is deterministic for a given graph.
    """
    _require_attacked_in_graph(g, a)
    adj = g.adjacency()
    visited: set[int] = set()
    out: list[tuple[tuple[int, ...], ComponentSummary]] = []
    for start in sorted(g.device_ids):
        if start in visited:
            continue
        visited.add(start)
        stack = [start]
        members: list[int] = []
        while stack:
            node = stack.pop()
            members.append(node)
            for nb in adj[node]:
                if nb not in visited:
                    visited.add(nb)
                    stack.append(nb)
        members.sort()
        att = sum(1 for m in members if m in a.attacked)
        out.append((tuple(members), ComponentSummary(len(members), att)))
    return out


def component_vulnerable_pairs(size: int, attacked_count: int) -> int:
    """Vulnerable pairs inside one connected component of ``size`` devices.

    Every pair of attacked devices plus every (attacked, non-attacked) pair
    is vulnerable; within a component all pairs are connected.
    """
    if size < 0 or attacked_count < 0:
        raise ValueError("counts must be non-negative")
    if attacked_count > size:
        raise ValueError(f"attacked_count {attacked_count} exceeds component size {size}")
    return attacked_count * (attacked_count - 1) // 2 + attacked_count * (size - attacked_count)


def _resolve_base(g: Graph, multiplier_base: Optional[int]) -> int:
    base = g.device_count if multiplier_base is None else multiplier_base
    if base < g.device_count:
        raise ValueError(
            f"multiplier_base {base} is smaller than the device count {g.device_count}"
        )
    return base


def score(g: Graph, a: AttackSet, multiplier_base: Optional[int] = None) -> ScoreReport:
    """Score a network via its connected components.

    ``multiplier_base`` defaults to the graph's own device count; pass the
    original instance's count when scoring a residual network so candidate
    cuts remain comparable.
    """
    _require_attacked_in_graph(g, a)
    base = _resolve_base(g, multiplier_base)
    vul, heal = residual_pair_counts(g.adjacency(), g._order, a.attacked)
    return ScoreReport.from_counts(vul, heal, base)


def score_bruteforce(g: Graph, a: AttackSet, multiplier_base: Optional[int] = None) -> ScoreReport:
    """Score a network by classifying every device pair individually.

    Independent oracle for :func:`score`: no component formula, just a
    connectivity check per unordered pair.  Quadratic in pair count; meant
    for small graphs and cross-checking.
    """
    _require_attacked_in_graph(g, a)
    base = _resolve_base(g, multiplier_base)
    ids = sorted(g.device_ids)
    vul = 0
    heal = 0
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            if are_connected(g, u, v) is ConnectionKind.NONE:
                continue
            if u in a.attacked or v in a.attacked:
                vul += 1
            else:
                heal += 1
    return ScoreReport.from_counts(vul, heal, base)
