// JSON shapes served by the isolation service. Field names mirror the wire
// format exactly; the console never rescores anything locally.

export interface ScoreReport {
    vulnerability: number;
    healthiness: number;
    phi: number;
    multiplier_base: number;
}

export interface ComponentBreakdown {
    devices: number[];
    size: number;
    attacked_count: number;
}

export interface WhatIfResponse {
    isolate: number[];
    report: ScoreReport;
    components: ComponentBreakdown[];
}

export type DeviceEntry = number | { id: number; label?: string | null };

export interface InstanceDoc {
    devices: DeviceEntry[];
    connections: [number, number][];
    attacked: number[];
    budget?: number | null;
}

export interface InstanceSummary {
    id: string;
    name: string;
    created_at: string;
    devices: number;
    connections: number;
    attacked: number;
    budget: number | null;
}

export interface InstanceDetail extends InstanceSummary {
    instance: InstanceDoc;
}

export type JobState = 'queued' | 'running' | 'done' | 'timeout' | 'failed';

export interface SolutionDoc {
    chosen: number[];
    report: ScoreReport;
    status: 'optimal' | 'timeout_best_effort';
    subsets_evaluated: number;
    elapsed_seconds: number;
    chunk_budgets?: number[];
}

export interface JobView {
    id: string;
    instance_id: string | null;
    params: Record<string, unknown> | null;
    state: JobState;
    result: SolutionDoc | null;
    error: string | null;
}

export interface SolveRequest {
    algo: 'direct' | 'greedy' | 'oracle';
    k: number;
    x?: number;
    mode?: 'snpv' | 'cnpv';
    timeout?: number;
}

export function deviceId(entry: DeviceEntry): number {
    return typeof entry === 'number' ? entry : entry.id;
}

export function deviceIds(doc: InstanceDoc): number[] {
    return doc.devices.map(deviceId);
}
