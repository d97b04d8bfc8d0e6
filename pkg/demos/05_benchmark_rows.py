#!/usr/bin/env python3
"""Benchmark baselines: pair counts for three networks at three attack rates.

For a connected network the baseline counts depend only on the device count
and the attacked count, so a generated tree stands in for any real topology
of the same size.  Attack fractions round half-to-even (3.4 -> 3, 8.5 -> 8).
"""

from cyberseg import attacked_count, generate_full_ary_tree, load_karate, sample_attacked, score

networks = {
    "karate (34 devices)": load_karate(),
    "control tree (50 devices)": generate_full_ary_tree(50, 5),
    "plant surrogate (288 devices)": generate_full_ary_tree(288, 5),
}

print(f"{'network':30s} {'p':>5s} {'attacked':>8s} {'vulnerable':>10s} {'healthy':>8s}")
for name, g in networks.items():
    for p in (0.1, 0.25, 0.5):
        a = sample_attacked(g, p, seed=1)
        r = score(g, a)
        assert len(a.attacked) == attacked_count(g.device_count, p)
        print(f"{name:30s} {p:5.2f} {len(a.attacked):8d} {r.vulnerability:10d} {r.healthiness:8d}")
