#!/usr/bin/env python3
"""Scoring basics: vulnerable vs healthy connectivity of a small network.

A pair of devices counts as connected if a path joins them.  Connected
pairs touching an attacked device are vulnerable; the rest are healthy.
The combined objective phi ranks candidate cuts lexicographically:
vulnerability first, healthiness as the tiebreaker.
"""

from cyberseg import AttackSet, Graph, components, remove_devices, score

# A tiny production cell: one controller (0) bridging two field segments.
g = Graph(
    range(7),
    [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6)],
)
attacked = AttackSet([2])

baseline = score(g, attacked)
print(f"baseline: vulnerability={baseline.vulnerability} healthiness={baseline.healthiness} phi={baseline.phi}")

for members, summary in components(g, attacked):
    print(f"  component {members}: size={summary.size} attacked={summary.attacked_count}")

# What happens if we isolate device 1 (between the attacked device and the controller)?
cut = {1}
residual = remove_devices(g, cut)
after = score(residual, attacked, multiplier_base=g.device_count)
print(f"\nafter isolating {sorted(cut)}:")
print(f"  vulnerability={after.vulnerability} healthiness={after.healthiness} phi={after.phi}")
for members, summary in components(residual, attacked):
    print(f"  component {members}: size={summary.size} attacked={summary.attacked_count}")

# Isolating the attacked device itself is even better here.
residual2 = remove_devices(g, {2})
after2 = score(residual2, AttackSet(), multiplier_base=g.device_count)
print(f"\nafter isolating [2]: vulnerability={after2.vulnerability} healthiness={after2.healthiness}")
