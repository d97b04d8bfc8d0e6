// Session state for one operator tab: which instance is loaded, the local
// attacked-set overlay and budget (never sent to the server until
// explicitly submitted), pinned what-if scenarios, and job tracking.
//
// Every number the session exposes for display is lifted verbatim from a
// service response; the console does no scoring of its own.

import { ApiClient, ApiRequestError } from './api.js';
import type {
    InstanceDetail,
    JobView,
    ScoreReport,
    SolutionDoc,
    SolveRequest,
    WhatIfResponse,
} from './types.js';
import { deviceIds } from './types.js';

export interface DisplayNumbers {
    vulnerability: string;
    healthiness: string;
    phi: string;
}

export interface ScenarioCard {
    label: string;
    isolate: number[];
    report: ScoreReport;
    display: DisplayNumbers;
    /** Positive healthiness delta means better than the current baseline. */
    delta: { vulnerability: number; healthiness: number } | null;
    raw: string;
}

export interface ComparisonRow {
    label: string;
    cutSize: number;
    chosen: number[];
    display: DisplayNumbers;
    raw: string;
}

export interface Comparison {
    solver: ComparisonRow;
    baseline: ComparisonRow;
    jobState: string;
    solverStatus: SolutionDoc['status'];
}

export function displayFromReport(report: ScoreReport): DisplayNumbers {
    // JSON integers re-stringify to the exact bytes the server sent.
    return {
        vulnerability: String(report.vulnerability),
        healthiness: String(report.healthiness),
        phi: String(report.phi),
    };
}

export class JobFailedError extends Error {
    constructor(readonly job: JobView) {
        super(job.error ?? `job ${job.id} failed`);
    }
}

export class Session {
    readonly api: ApiClient;

    detail: InstanceDetail | null = null;
    attackedOverlay = new Set<number>();
    budgetK = 3;
    pinned: ScenarioCard[] = [];
    baseline: ScenarioCard | null = null;
    jobs: JobView[] = [];

    constructor(api: ApiClient) {
        this.api = api;
    }

    get instanceId(): string | null {
        return this.detail?.id ?? null;
    }

    deviceIdsOfInstance(): number[] {
        return this.detail ? deviceIds(this.detail.instance) : [];
    }

    serverAttacked(): number[] {
        return this.detail ? [...this.detail.instance.attacked] : [];
    }

    async loadInstance(id: string): Promise<InstanceDetail> {
        const response = await this.api.getInstance(id);
        this.detail = response.data;
        this.attackedOverlay = new Set(this.detail.instance.attacked);
        if (this.detail.instance.budget != null) {
            this.budgetK = this.detail.instance.budget;
        }
        this.baseline = null;
        this.pinned = [];
        return this.detail;
    }

    /** Toggle a device in the local overlay; editing never touches the server. */
    toggleAttacked(deviceId: number): void {
        this.requireLoaded();
        if (!this.deviceIdsOfInstance().includes(deviceId)) {
            throw new Error(`device ${deviceId} is not part of the loaded instance`);
        }
        if (this.attackedOverlay.has(deviceId)) {
            this.attackedOverlay.delete(deviceId);
        } else {
            this.attackedOverlay.add(deviceId);
        }
    }

    overlayDirty(): boolean {
        const server = new Set(this.serverAttacked());
        if (server.size !== this.attackedOverlay.size) return true;
        for (const id of this.attackedOverlay) {
            if (!server.has(id)) return true;
        }
        return false;
    }

    /** Undo: drop local edits, back to the stored attacked set. */
    resetOverlay(): void {
        this.attackedOverlay = new Set(this.serverAttacked());
    }

    setBudget(k: number): void {
        if (!Number.isInteger(k) || k < 0) {
            throw new Error(`budget must be a non-negative integer, got ${k}`);
        }
        this.budgetK = k;
    }

    /**
     * Submit the overlay as a *derived* instance (the original is never
     * mutated; scenarios stay auditable), then load the new instance.
     */
    async submitOverlay(name?: string): Promise<InstanceDetail> {
        const detail = this.requireLoaded();
        const doc = {
            ...detail.instance,
            attacked: [...this.attackedOverlay].sort((a, b) => a - b),
            name: name ?? `${detail.name} (scenario)`,
        };
        const created = await this.api.createInstance(doc);
        return this.loadInstance(created.data.id);
    }

    /** Score a manual cut; the card carries raw bytes and a delta vs baseline. */
    async whatIfManual(isolate: number[], label?: string): Promise<ScenarioCard> {
        const detail = this.requireLoaded();
        const response = await this.api.whatIf(detail.id, isolate);
        const card = this.cardFrom(label ?? `isolate ${JSON.stringify(isolate)}`, response.data, response.raw);
        if (isolate.length === 0) {
            this.baseline = card;
        }
        return card;
    }

    /** Pinned scenarios may only reference devices of the loaded instance. */
    pinScenario(card: ScenarioCard): void {
        const known = new Set(this.deviceIdsOfInstance());
        for (const id of card.isolate) {
            if (!known.has(id)) {
                throw new Error(`cannot pin: device ${id} does not exist in this instance`);
            }
        }
        this.pinned.push(card);
    }

    unpinScenario(index: number): void {
        this.pinned.splice(index, 1);
    }

    /**
     * Run a solver job and compare it against the naive response of
     * isolating exactly the attacked devices.  Both sides of the panel
     * come from service responses (job result and what-if).
     */
    async runAndCompare(k: number, algo: SolveRequest['algo'], x?: number): Promise<Comparison> {
        const detail = this.requireLoaded();
        const params: SolveRequest = { algo, k };
        if (x !== undefined) params.x = x;

        const submitted = await this.api.submitSolve(detail.id, params);
        const finished = await this.api.pollJob(submitted.data.job_id);
        this.jobs.push(finished.data);
        if (finished.data.state === 'failed' || finished.data.result === null) {
            throw new JobFailedError(finished.data);
        }
        const solution = finished.data.result;

        const naive = await this.api.whatIf(detail.id, this.serverAttacked());

        return {
            solver: {
                label: `${algo} (k=${k})`,
                cutSize: solution.chosen.length,
                chosen: [...solution.chosen],
                display: displayFromReport(solution.report),
                raw: finished.raw,
            },
            baseline: {
                label: 'naive: isolate all attacked',
                cutSize: naive.data.isolate.length,
                chosen: [...naive.data.isolate],
                display: displayFromReport(naive.data.report),
                raw: naive.raw,
            },
            jobState: finished.data.state,
            solverStatus: solution.status,
        };
    }

    private cardFrom(label: string, body: WhatIfResponse, raw: string): ScenarioCard {
        const delta = this.baseline
            ? {
                  vulnerability: body.report.vulnerability - this.baseline.report.vulnerability,
                  healthiness: body.report.healthiness - this.baseline.report.healthiness,
              }
            : null;
        return {
            label,
            isolate: [...body.isolate],
            report: body.report,
            display: displayFromReport(body.report),
            delta,
            raw,
        };
    }

    private requireLoaded(): InstanceDetail {
        if (!this.detail) {
            throw new Error('no instance loaded');
        }
        return this.detail;
    }
}

export { ApiRequestError };
