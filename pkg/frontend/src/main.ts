// Console wiring: instance picker, attacked-set overlay editing, budget
// slider, solver runs with a naive-baseline comparison, and pinned
// what-if cards.

import { ApiClient, ApiRequestError } from './api.js';
import { renderGraph, renderPlaceholder } from './render.js';
import { JobFailedError, Session } from './session.js';
import type { Comparison, ScenarioCard } from './session.js';
import type { SolutionDoc, SolveRequest } from './types.js';

const api = new ApiClient('');
const session = new Session(api);

const $ = <T extends HTMLElement>(id: string): T => {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as T;
};

const graphHost = $<HTMLDivElement>('graph');
const instancePicker = $<HTMLSelectElement>('instance-picker');
const budgetSlider = $<HTMLInputElement>('budget');
const budgetValue = $<HTMLSpanElement>('budget-value');
const statusLine = $<HTMLParagraphElement>('status');
const comparisonHost = $<HTMLDivElement>('comparison');
const pinsHost = $<HTMLDivElement>('pins');

let lastSolution: SolutionDoc | null = null;

function note(message: string, isError = false): void {
    statusLine.textContent = message;
    statusLine.className = isError ? 'error' : '';
}

function redraw(): void {
    if (!session.detail) {
        renderPlaceholder(graphHost, 'Load an instance to begin.');
        return;
    }
    renderGraph(graphHost, session.detail, session.attackedOverlay, lastSolution, {
        onDeviceClick: (id) => {
            session.toggleAttacked(id);
            note(
                session.overlayDirty()
                    ? 'Attacked set edited locally. Submit to create a scenario instance.'
                    : 'Overlay matches the stored attacked set.',
            );
            redraw();
        },
    });
}

async function refreshInstances(selected?: string): Promise<void> {
    const list = (await api.listInstances()).data;
    instancePicker.replaceChildren();
    for (const summary of list) {
        const option = document.createElement('option');
        option.value = summary.id;
        option.textContent = `${summary.name} (${summary.devices} devices, ${summary.attacked} attacked)`;
        instancePicker.appendChild(option);
    }
    if (selected) instancePicker.value = selected;
}

async function loadSelected(): Promise<void> {
    if (!instancePicker.value) return;
    lastSolution = null;
    await session.loadInstance(instancePicker.value);
    budgetSlider.value = String(session.budgetK);
    budgetValue.textContent = budgetSlider.value;
    comparisonHost.replaceChildren();
    note(`Loaded ${session.detail!.name}.`);
    redraw();
}

function comparisonTable(comparison: Comparison): HTMLElement {
    const table = document.createElement('table');
    table.innerHTML = `
        <thead><tr><th></th><th>vulnerable</th><th>healthy</th><th>devices cut</th></tr></thead>`;
    const body = document.createElement('tbody');
    for (const row of [comparison.solver, comparison.baseline]) {
        const tr = document.createElement('tr');
        const cells = [row.label, row.display.vulnerability, row.display.healthiness, String(row.cutSize)];
        for (const cell of cells) {
            const td = document.createElement('td');
            td.textContent = cell;
            tr.appendChild(td);
        }
        body.appendChild(tr);
    }
    table.appendChild(body);
    return table;
}

function pinCard(card: ScenarioCard): void {
    session.pinScenario(card);
    const div = document.createElement('div');
    div.className = 'pin';
    const deltaText = card.delta
        ? ` (Δvul ${card.delta.vulnerability}, Δheal ${card.delta.healthiness})`
        : '';
    div.textContent =
        `${card.label}: vul ${card.display.vulnerability}, heal ${card.display.healthiness}, ` +
        `phi ${card.display.phi}${deltaText}`;
    pinsHost.appendChild(div);
}

async function runSolver(): Promise<void> {
    if (!session.detail) return note('Load an instance first.', true);
    const algo = $<HTMLSelectElement>('algo').value as SolveRequest['algo'];
    const x = Number($<HTMLInputElement>('chunk-x').value) || undefined;
    note(`Running ${algo}…`);
    try {
        const comparison = await session.runAndCompare(session.budgetK, algo, x);
        lastSolution = session.jobs[session.jobs.length - 1]?.result ?? null;
        comparisonHost.replaceChildren(comparisonTable(comparison));
        note(`Job ${comparison.jobState}; solver status ${comparison.solverStatus}.`);
        redraw();
    } catch (error) {
        if (error instanceof JobFailedError) {
            const retry = document.createElement('button');
            retry.textContent = 'retry';
            retry.addEventListener('click', () => void runSolver());
            comparisonHost.replaceChildren(`job failed: ${error.message} `, retry);
            note('Solve job failed.', true);
        } else {
            note(String(error), true);
        }
    }
}

async function manualWhatIf(): Promise<void> {
    if (!session.detail) return note('Load an instance first.', true);
    const text = $<HTMLInputElement>('isolate-input').value.trim();
    const isolate = text ? text.split(/[\s,]+/).map(Number) : [];
    try {
        const card = await session.whatIfManual(isolate);
        pinCard(card);
        note(`What-if scored: vul ${card.display.vulnerability}, heal ${card.display.healthiness}.`);
    } catch (error) {
        if (error instanceof ApiRequestError) {
            note(`what-if rejected: ${error.detail}`, true);
        } else {
            note(String(error), true);
        }
    }
}

async function boot(): Promise<void> {
    try {
        renderPlaceholder(graphHost, 'Load an instance to begin.');
        await refreshInstances();
    } catch (error) {
        renderPlaceholder(graphHost, `Cannot reach the service: ${String(error)}`);
    }

    $<HTMLButtonElement>('load-karate').addEventListener('click', () => {
        void (async () => {
            const created = await api.createKarate(`karate-${Date.now() % 100000}`);
            await refreshInstances(created.data.id);
            await loadSelected();
        })();
    });
    $<HTMLButtonElement>('load-instance').addEventListener('click', () => void loadSelected());
    $<HTMLButtonElement>('reset-overlay').addEventListener('click', () => {
        session.resetOverlay();
        note('Overlay reset to the stored attacked set.');
        redraw();
    });
    $<HTMLButtonElement>('submit-overlay').addEventListener('click', () => {
        void (async () => {
            if (!session.overlayDirty()) return note('Overlay already matches the server.');
            const detail = await session.submitOverlay();
            await refreshInstances(detail.id);
            note(`Created scenario instance ${detail.name}.`);
            redraw();
        })();
    });
    budgetSlider.addEventListener('input', () => {
        session.setBudget(Number(budgetSlider.value));
        budgetValue.textContent = budgetSlider.value;
    });
    $<HTMLButtonElement>('run-solver').addEventListener('click', () => void runSolver());
    $<HTMLButtonElement>('run-whatif').addEventListener('click', () => void manualWhatIf());
}

void boot();
