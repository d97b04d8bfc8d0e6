import { describe, expect, it } from 'vitest';

import { componentsOf, computeLayout, mulberry32, seedFromString } from '../src/layout.js';

const ring = (n: number): [number, number][] =>
    Array.from({ length: n }, (_, i) => [i, (i + 1) % n] as [number, number]);

describe('seeded randomness', () => {
    it('same key gives the same stream', () => {
        const a = mulberry32(seedFromString('instance-abc'));
        const b = mulberry32(seedFromString('instance-abc'));
        for (let i = 0; i < 50; i++) {
            expect(a()).toBe(b());
        }
    });

    it('different keys diverge', () => {
        const a = mulberry32(seedFromString('instance-abc'));
        const b = mulberry32(seedFromString('instance-xyz'));
        const streamA = Array.from({ length: 10 }, () => a());
        const streamB = Array.from({ length: 10 }, () => b());
        expect(streamA).not.toEqual(streamB);
    });
});

describe('components', () => {
    it('splits disconnected parts', () => {
        const groups = componentsOf([0, 1, 2, 3, 4], [[0, 1], [2, 3]]);
        expect(groups).toEqual([[0, 1], [2, 3], [4]]);
    });
});

describe('computeLayout', () => {
    it('is deterministic per instance key', () => {
        const ids = [...Array(12).keys()];
        const first = computeLayout(ids, ring(12), 'inst-1');
        const second = computeLayout(ids, ring(12), 'inst-1');
        expect(first).toEqual(second);
    });

    it('changes with the instance key', () => {
        const ids = [...Array(12).keys()];
        const first = computeLayout(ids, ring(12), 'inst-1');
        const second = computeLayout(ids, ring(12), 'inst-2');
        expect(first).not.toEqual(second);
    });

    it('keeps every point inside the canvas', () => {
        const ids = [...Array(30).keys()];
        for (const point of computeLayout(ids, ring(30), 'bounds')) {
            expect(point.x).toBeGreaterThanOrEqual(0);
            expect(point.x).toBeLessThanOrEqual(900);
            expect(point.y).toBeGreaterThanOrEqual(0);
            expect(point.y).toBeLessThanOrEqual(560);
        }
    });

    it('separates components into disjoint horizontal bands', () => {
        const ids = [0, 1, 2, 3, 4, 5];
        const edges: [number, number][] = [
            [0, 1],
            [1, 2],
            [3, 4],
            [4, 5],
        ];
        const layout = computeLayout(ids, edges, 'split');
        const left = layout.filter((p) => p.component === 0).map((p) => p.x);
        const right = layout.filter((p) => p.component === 1).map((p) => p.x);
        expect(Math.max(...left)).toBeLessThan(Math.min(...right));
    });
});
