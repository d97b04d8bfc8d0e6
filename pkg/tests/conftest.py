"""Shared builders for randomized solver and scoring tests."""

from __future__ import annotations

import random
from itertools import combinations

from cyberseg import AttackSet, Graph


def random_graph(rng: random.Random, min_devices: int = 0, max_devices: int = 10) -> Graph:
    """Uniform-ish small graph: random device count, random edge subset."""
    n = rng.randint(min_devices, max_devices)
    ids = list(range(n))
    possible = list(combinations(ids, 2))
    edges = [e for e in possible if rng.random() < rng.uniform(0.1, 0.7)]
    return Graph(ids, edges)


def random_attack(rng: random.Random, g: Graph, max_attacked: int = 4) -> AttackSet:
    ids = sorted(g.device_ids)
    count = rng.randint(0, min(max_attacked, len(ids)))
    return AttackSet(rng.sample(ids, count))


def path_graph(*ids: int) -> Graph:
    return Graph(ids, list(zip(ids, ids[1:])))
