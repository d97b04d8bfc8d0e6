// SVG rendering of the network view: attacked devices highlighted with a
// star, isolated devices crossed out, and the post-cut components drifting
// apart because the layout packs components into separate bands.

import { computeLayout } from './layout.js';
import type { InstanceDetail, SolutionDoc } from './types.js';
import { deviceId } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

function el<K extends keyof SVGElementTagNameMap>(
    tag: K,
    attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
    const node = document.createElementNS(SVG_NS, tag);
    for (const [key, value] of Object.entries(attrs)) {
        node.setAttribute(key, String(value));
    }
    return node;
}

export function renderPlaceholder(container: HTMLElement, message: string): void {
    container.replaceChildren();
    const div = document.createElement('div');
    div.className = 'placeholder';
    div.textContent = message;
    container.appendChild(div);
}

export interface RenderHooks {
    onDeviceClick?: (id: number) => void;
}

export function renderGraph(
    container: HTMLElement,
    detail: InstanceDetail,
    attackedOverlay: Set<number>,
    solution: SolutionDoc | null = null,
    hooks: RenderHooks = {},
): void {
    container.replaceChildren();
    const doc = detail.instance;
    const ids = doc.devices.map(deviceId);
    if (ids.length === 0) {
        renderPlaceholder(container, 'This instance has no devices.');
        return;
    }
    const labels = new Map<number, string>();
    for (const entry of doc.devices) {
        if (typeof entry !== 'number' && entry.label) {
            labels.set(entry.id, entry.label);
        }
    }

    const cut = new Set(solution?.chosen ?? []);
    // Residual edges only: with a solution applied the surviving components
    // get their own layout bands and visibly separate.
    const edges = doc.connections.filter(([u, v]) => !cut.has(u) && !cut.has(v));
    const layout = computeLayout(ids, solution ? edges : doc.connections, detail.id);
    const position = new Map(layout.map((p) => [p.id, p]));

    const svg = el('svg', { viewBox: '0 0 900 560', class: 'network' });

    for (const [u, v] of doc.connections) {
        const a = position.get(u)!;
        const b = position.get(v)!;
        const severed = cut.has(u) || cut.has(v);
        svg.appendChild(
            el('line', {
                x1: a.x,
                y1: a.y,
                x2: b.x,
                y2: b.y,
                class: severed ? 'connection severed' : 'connection',
            }),
        );
    }

    for (const point of layout) {
        const group = el('g', {
            class: [
                'device',
                attackedOverlay.has(point.id) ? 'attacked' : '',
                cut.has(point.id) ? 'isolated' : '',
            ]
                .filter(Boolean)
                .join(' '),
            transform: `translate(${point.x}, ${point.y})`,
        });
        group.appendChild(el('circle', { r: 11 }));
        const idText = el('text', { class: 'device-id', y: 4 });
        idText.textContent = String(point.id);
        group.appendChild(idText);
        if (attackedOverlay.has(point.id)) {
            const star = el('text', { class: 'attack-mark', y: -14 });
            star.textContent = '*';
            group.appendChild(star);
        }
        if (cut.has(point.id)) {
            const cross = el('text', { class: 'cut-mark', y: 5 });
            cross.textContent = '×';
            group.appendChild(cross);
        }
        const title = document.createElementNS(SVG_NS, 'title');
        title.textContent = labels.get(point.id) ?? `device ${point.id}`;
        group.appendChild(title);
        if (hooks.onDeviceClick) {
            group.addEventListener('click', () => hooks.onDeviceClick!(point.id));
        }
        svg.appendChild(group);
    }

    container.appendChild(svg);
}
