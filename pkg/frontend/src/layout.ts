// Seeded force-directed layout. The seed derives from the instance id, so
// the same instance always lands in the same place across reloads, and
// disconnected components are packed side by side, which visually
// separates the network after a cut.

export interface LayoutPoint {
    id: number;
    x: number;
    y: number;
    component: number;
}

export function seedFromString(key: string): number {
    // FNV-1a, 32 bit
    let hash = 0x811c9dc5;
    for (let i = 0; i < key.length; i++) {
        hash ^= key.charCodeAt(i);
        hash = Math.imul(hash, 0x01000193);
    }
    return hash >>> 0;
}

export function mulberry32(seed: number): () => number {
    let state = seed >>> 0;
    return () => {
        state = (state + 0x6d2b79f5) >>> 0;
        let t = state;
        t = Math.imul(t ^ (t >>> 15), t | 1);
        t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
        return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
    };
}

export function componentsOf(ids: number[], edges: [number, number][]): number[][] {
    const adjacency = new Map<number, number[]>(ids.map((id) => [id, []]));
    for (const [u, v] of edges) {
        adjacency.get(u)?.push(v);
        adjacency.get(v)?.push(u);
    }
    const seen = new Set<number>();
    const out: number[][] = [];
    for (const start of [...ids].sort((a, b) => a - b)) {
        if (seen.has(start)) continue;
        seen.add(start);
        const stack = [start];
        const members: number[] = [];
        while (stack.length > 0) {
            const node = stack.pop()!;
            members.push(node);
            for (const nb of adjacency.get(node) ?? []) {
                if (!seen.has(nb)) {
                    seen.add(nb);
                    stack.push(nb);
                }
            }
        }
        out.push(members.sort((a, b) => a - b));
    }
    return out;
}

export interface LayoutOptions {
    iterations?: number;
    width?: number;
    height?: number;
    padding?: number;
}

export function computeLayout(
    ids: number[],
    edges: [number, number][],
    seedKey: string,
    options: LayoutOptions = {},
): LayoutPoint[] {
    const { iterations = 150, width = 900, height = 560, padding = 30 } = options;
    if (ids.length === 0) return [];
    const rand = mulberry32(seedFromString(seedKey));
    const groups = componentsOf(ids, edges);

    // Give every component its own horizontal band, weighted by size.
    const total = ids.length;
    const bands: { x0: number; x1: number }[] = [];
    let cursor = 0;
    for (const group of groups) {
        const share = group.length / total;
        bands.push({ x0: cursor, x1: cursor + share });
        cursor += share;
    }

    const index = new Map<number, number>();
    const componentOf = new Map<number, number>();
    groups.forEach((group, gi) => group.forEach((id) => componentOf.set(id, gi)));
    const order = [...ids].sort((a, b) => a - b);
    order.forEach((id, i) => index.set(id, i));

    const xs = new Float64Array(order.length);
    const ys = new Float64Array(order.length);
    for (let i = 0; i < order.length; i++) {
        const band = bands[componentOf.get(order[i])!];
        xs[i] = band.x0 + (band.x1 - band.x0) * rand();
        ys[i] = rand();
    }

    const pairs = edges
        .map(([u, v]) => [index.get(u)!, index.get(v)!] as const)
        .filter(([a, b]) => a !== undefined && b !== undefined);

    const repulsion = 0.0015;
    const spring = 0.06;
    const ideal = 0.16;
    for (let step = 0; step < iterations; step++) {
        const cool = 1 - step / iterations;
        const fx = new Float64Array(order.length);
        const fy = new Float64Array(order.length);
        for (let i = 0; i < order.length; i++) {
            for (let j = i + 1; j < order.length; j++) {
                if (componentOf.get(order[i]) !== componentOf.get(order[j])) continue;
                const dx = xs[i] - xs[j];
                const dy = ys[i] - ys[j];
                const d2 = dx * dx + dy * dy + 1e-6;
                const f = repulsion / d2;
                fx[i] += dx * f;
                fy[i] += dy * f;
                fx[j] -= dx * f;
                fy[j] -= dy * f;
            }
        }
        for (const [a, b] of pairs) {
            const dx = xs[a] - xs[b];
            const dy = ys[a] - ys[b];
            const dist = Math.sqrt(dx * dx + dy * dy) + 1e-9;
            const f = spring * (dist - ideal);
            fx[a] -= (dx / dist) * f;
            fy[a] -= (dy / dist) * f;
            fx[b] += (dx / dist) * f;
            fy[b] += (dy / dist) * f;
        }
        for (let i = 0; i < order.length; i++) {
            const band = bands[componentOf.get(order[i])!];
            xs[i] = Math.min(band.x1, Math.max(band.x0, xs[i] + fx[i] * cool));
            ys[i] = Math.min(1, Math.max(0, ys[i] + fy[i] * cool));
        }
    }

    return order.map((id, i) => ({
        id,
        x: padding + xs[i] * (width - 2 * padding),
        y: padding + ys[i] * (height - 2 * padding),
        component: componentOf.get(id)!,
    }));
}
