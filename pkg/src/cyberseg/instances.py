"""Problem instances: generators, attack sampling, bundled benchmark, file I/O.

An instance is a network, the set of attacked devices, and optionally an
isolation budget.  Instances round-trip through a small JSON document;
plain edge-list text is accepted for topology-only inputs.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import IO, Optional, Union

from .graph import AttackSet, Device, Graph


class ParseError(ValueError):
    """Malformed instance text; carries the offending line number."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class Rounding(Enum):
    HALF_EVEN = "half_even"
    FLOOR = "floor"
    CEIL = "ceil"


@dataclass(frozen=True)
class Instance:
    """One isolation problem: network, attacked devices, optional budget."""

    graph: Graph
    attacked: AttackSet
    budget: Optional[int] = None

    def __post_init__(self) -> None:
        missing = self.attacked.attacked - self.graph.device_ids
        if missing:
            raise ValueError(f"attacked devices not in graph: {sorted(missing)}")
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be non-negative")


@dataclass(frozen=True)
class TreeSource:
    devices: int
    branching: int


@dataclass(frozen=True)
class KarateSource:
    pass


@dataclass(frozen=True)
class FileSource:
    path: str


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for building an instance: topology source plus attack sampling."""

    source: Union[TreeSource, KarateSource, FileSource]
    attack_fraction_p: float = 0.0
    seed: int = 0
    rounding: Rounding = Rounding.HALF_EVEN

    def __post_init__(self) -> None:
        if not 0.0 <= self.attack_fraction_p <= 1.0:
            raise ValueError("attack_fraction_p must be within [0, 1]")


def generate_full_ary_tree(n: int, r: int) -> Graph:
    """Full r-ary tree on devices 0..n-1; device i's children are r*i+1 .. r*i+r."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if r < 1:
        raise ValueError("r must be at least 1")
    edges = []
    for i in range(n):
        for child in range(r * i + 1, r * i + r + 1):
            if child < n:
                edges.append((i, child))
    return Graph(range(n), edges)


def attacked_count(n: int, p: float, rounding: Rounding = Rounding.HALF_EVEN) -> int:
    """Number of attacked devices for fraction ``p`` of ``n`` devices.

    Exact rational arithmetic, so the half-even tie rule is deterministic
    across platforms.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be within [0, 1]")
    if n < 0:
        raise ValueError("n must be non-negative")
    q = Fraction(p) * n
    floor = q.numerator // q.denominator
    remainder = q - floor
    if rounding is Rounding.FLOOR:
        return floor
    if rounding is Rounding.CEIL:
        return floor if remainder == 0 else floor + 1
    half = Fraction(1, 2)
    if remainder > half:
        return floor + 1
    if remainder < half:
        return floor
    return floor if floor % 2 == 0 else floor + 1


def sample_attacked(
    g: Graph, p: float, seed: int, rounding: Rounding = Rounding.HALF_EVEN
) -> AttackSet:
    """Uniform attacked-device sample of size ``attacked_count(n, p)``.

    Scheme: seed a Mersenne Twister, shuffle the sorted device-id list,
    take the prefix.  Identical (graph, p, seed, rounding) always yields
    the identical set, independent of platform.
    """
    count = attacked_count(g.device_count, p, rounding)
    ids = sorted(g.device_ids)
    random.Random(seed).shuffle(ids)
    return AttackSet(ids[:count])


def load_karate() -> Graph:
    """The bundled 34-device, 78-connection karate-club social network."""
    text = resources.files("cyberseg.data").joinpath("karate.edgelist").read_text("utf-8")
    return parse_edgelist(text)


def build_instance(spec: InstanceSpec, budget: Optional[int] = None) -> Instance:
    """Materialize a spec: build the topology, then sample the attacked set."""
    if isinstance(spec.source, TreeSource):
        g = generate_full_ary_tree(spec.source.devices, spec.source.branching)
    elif isinstance(spec.source, KarateSource):
        g = load_karate()
    else:
        g = load_instance(spec.source.path).graph
    attacked = sample_attacked(g, spec.attack_fraction_p, spec.seed, spec.rounding)
    return Instance(graph=g, attacked=attacked, budget=budget)


def parse_edgelist(text: str) -> Graph:
    """Parse "u v" connection lines; '#' comments; "node u" declares an isolated device."""
    devices: set[int] = set()
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "node":
            if len(fields) != 2:
                raise ParseError("expected 'node <id>'", lineno)
            try:
                devices.add(int(fields[1]))
            except ValueError:
                raise ParseError(f"bad device id {fields[1]!r}", lineno) from None
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 'u v', got {raw.strip()!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"bad connection endpoints {raw.strip()!r}", lineno) from None
        if u == v:
            raise ParseError(f"self-loop on device {u}", lineno)
        devices.add(u)
        devices.add(v)
        edges.append((u, v))
    return Graph(sorted(devices), edges)


def instance_from_json_dict(obj: object) -> Instance:
    """Build an instance from its JSON object form; unknown keys are ignored."""
    if not isinstance(obj, dict):
        raise ParseError("instance document must be a JSON object")
    try:
        raw_devices = obj["devices"]
    except KeyError:
        raise ParseError("missing 'devices' array") from None
    if not isinstance(raw_devices, list):
        raise ParseError("'devices' must be an array")

    devices: list[Device] = []
    seen: set[int] = set()
    for entry in raw_devices:
        if isinstance(entry, dict):
            if "id" not in entry:
                raise ParseError(f"device entry missing 'id': {entry!r}")
            dev = Device(_as_id(entry["id"]), entry.get("label"))
        else:
            dev = Device(_as_id(entry))
        if dev.id in seen:
            raise ParseError(f"duplicate device id {dev.id}")
        seen.add(dev.id)
        devices.append(dev)

    connections: list[tuple[int, int]] = []
    for entry in obj.get("connections", []):
        if not isinstance(entry, list) or len(entry) != 2:
            raise ParseError(f"connection must be a 2-element array, got {entry!r}")
        u, v = _as_id(entry[0]), _as_id(entry[1])
        if u not in seen or v not in seen:
            raise ParseError(f"connection [{u}, {v}] references an unknown device")
        if u == v:
            raise ParseError(f"self-loop on device {u}")
        connections.append((u, v))

    attacked_ids = [_as_id(i) for i in obj.get("attacked", [])]
    for i in attacked_ids:
        if i not in seen:
            raise ParseError(f"attacked device {i} is not declared in 'devices'")

    budget = obj.get("budget")
    if budget is not None and (not isinstance(budget, int) or isinstance(budget, bool) or budget < 0):
        raise ParseError(f"budget must be a non-negative integer, got {budget!r}")

    return Instance(Graph(devices, connections), AttackSet(attacked_ids), budget)


def _as_id(value: object) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ParseError(f"device id must be a non-negative integer, got {value!r}")
    return value


def instance_to_json_dict(inst: Instance) -> dict:
    """Canonical JSON object form: sorted ids, normalized [min, max] pairs."""
    devices: list[object] = []
    for dev in inst.graph.devices:
        devices.append({"id": dev.id, "label": dev.label} if dev.label is not None else dev.id)
    doc: dict = {
        "devices": devices,
        "connections": [[u, v] for u, v in sorted(inst.graph.connections)],
        "attacked": sorted(inst.attacked.attacked),
    }
    if inst.budget is not None:
        doc["budget"] = inst.budget
    return doc


def parse_instance_text(text: str) -> Instance:
    """Parse instance JSON, or fall back to edge-list text for bare topologies."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        return instance_from_json_dict(obj)
    return Instance(parse_edgelist(text), AttackSet())


def load_instance(source: Union[str, Path, IO[str]]) -> Instance:
    """Read an instance from a path or text stream (JSON or edge-list)."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text("utf-8")
    else:
        text = source.read()
    return parse_instance_text(text)


def save_instance(inst: Instance, target: Union[str, Path, IO[str]]) -> None:
    """Write the canonical JSON form; load_instance() restores it exactly."""
    text = json.dumps(instance_to_json_dict(inst), indent=2) + "\n"
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, "utf-8")
    else:
        target.write(text)
