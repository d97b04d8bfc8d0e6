// Typed client for the isolation service. Every response keeps the raw
// body text alongside the parsed value so the UI can prove that displayed
// numbers byte-match what the server sent.

import type {
    InstanceDetail,
    InstanceDoc,
    InstanceSummary,
    JobView,
    SolveRequest,
    WhatIfResponse,
} from './types.js';

export interface ApiResponse<T> {
    data: T;
    raw: string;
    status: number;
}

export class ApiRequestError extends Error {
    readonly status: number;
    readonly detail: string;

    constructor(status: number, error: string, detail: string) {
        super(`${error}: ${detail}`);
        this.status = status;
        this.detail = detail;
    }
}

export class PollDeadlineError extends Error {
    constructor(jobId: string, deadlineMs: number) {
        super(`job ${jobId} did not reach a terminal state within ${deadlineMs} ms`);
    }
}

async function request<T>(url: string, init?: RequestInit): Promise<ApiResponse<T>> {
    const response = await fetch(url, init);
    const raw = await response.text();
    if (!response.ok) {
        let error = `http_${response.status}`;
        let detail = raw;
        try {
            const body = JSON.parse(raw) as { error?: string; detail?: string };
            error = body.error ?? error;
            detail = body.detail ?? detail;
        } catch {
            // non-JSON error body; keep the raw text as detail
        }
        throw new ApiRequestError(response.status, error, detail);
    }
    return { data: raw ? (JSON.parse(raw) as T) : (undefined as T), raw, status: response.status };
}

function post(body: unknown): RequestInit {
    return {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify(body),
    };
}

export class ApiClient {
    constructor(readonly baseUrl: string) {}

    listInstances(): Promise<ApiResponse<InstanceSummary[]>> {
        return request(`${this.baseUrl}/api/instances`);
    }

    createInstance(doc: InstanceDoc & { name?: string }): Promise<ApiResponse<InstanceSummary>> {
        return request(`${this.baseUrl}/api/instances`, post(doc));
    }

    createKarate(name: string, attacked: number[] = [], budget?: number): Promise<ApiResponse<InstanceSummary>> {
        return request(`${this.baseUrl}/api/instances`, post({ source: 'karate', name, attacked, budget }));
    }

    getInstance(id: string): Promise<ApiResponse<InstanceDetail>> {
        return request(`${this.baseUrl}/api/instances/${id}`);
    }

    deleteInstance(id: string): Promise<ApiResponse<void>> {
        return request(`${this.baseUrl}/api/instances/${id}`, { method: 'DELETE' });
    }

    whatIf(id: string, isolate: number[]): Promise<ApiResponse<WhatIfResponse>> {
        return request(`${this.baseUrl}/api/instances/${id}/whatif`, post({ isolate }));
    }

    submitSolve(id: string, params: SolveRequest): Promise<ApiResponse<{ job_id: string; state: string }>> {
        return request(`${this.baseUrl}/api/instances/${id}/solve`, post(params));
    }

    getJob(jobId: string): Promise<ApiResponse<JobView>> {
        return request(`${this.baseUrl}/api/jobs/${jobId}`);
    }

    /** Poll until done/timeout/failed; a client-side deadline always ends the wait. */
    async pollJob(jobId: string, intervalMs = 150, deadlineMs = 60_000): Promise<ApiResponse<JobView>> {
        const end = Date.now() + deadlineMs;
        for (;;) {
            const view = await this.getJob(jobId);
            const state = view.data.state;
            if (state === 'done' || state === 'timeout' || state === 'failed') {
                return view;
            }
            if (Date.now() >= end) {
                throw new PollDeadlineError(jobId, deadlineMs);
            }
            await new Promise((resolve) => setTimeout(resolve, intervalMs));
        }
    }
}
