/**
 * Thin typed client for the screening service.
 *
 * The fetch implementation is injectable so tests can intercept every
 * response; the default talks to the same origin the UI is served from
 * (the service mounts the built assets under /ui).
 */

import type {
  ApiErrorJson,
  FlagEntryJson,
  HistoryJson,
  ReferenceCellJson,
  SessionBody,
  SessionJson,
  SubjectJson,
} from './types';

/** A non-2xx response, decoded from the service error envelope. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly field: string | null;

  constructor(status: number, body: ApiErrorJson) {
    super(body.message);
    this.name = 'ApiError';
    this.status = status;
    this.code = body.code;
    this.field = body.field;
  }
}

/** The request never reached the service (DNS, refused, offline). */
export class NetworkError extends Error {
  constructor(cause: unknown) {
    super('service unreachable');
    this.name = 'NetworkError';
    this.cause = cause;
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base = '', fetchImpl?: FetchLike) {
    // strip one trailing slash so base + '/path' stays well-formed
    this.base = base.endsWith('/') ? base.slice(0, -1) : base;
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    signal?: AbortSignal,
  ): Promise<T> {
    let response;
    try {
      response = await this.fetchImpl(this.base + path, {
        method,
        headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
        body: body === undefined ? undefined : JSON.stringify(body),
        signal,
      });
    } catch (err) {
      if (err instanceof Error && err.name === 'AbortError') throw err;
      throw new NetworkError(err);
    }
    if (!response.ok) {
      let envelope: ApiErrorJson;
      try {
        envelope = (await response.json()) as ApiErrorJson;
      } catch {
        envelope = { code: 'unknown_error', message: `HTTP ${response.status}`, field: null };
      }
      throw new ApiError(response.status, envelope);
    }
    return (await response.json()) as T;
  }

  registerSubject(cnp: string, signal?: AbortSignal): Promise<SubjectJson> {
    return this.request<SubjectJson>('POST', '/subjects', { cnp }, signal);
  }

  recordSession(cnp: string, body: SessionBody, signal?: AbortSignal): Promise<SessionJson> {
    return this.request<SessionJson>(
      'POST',
      `/subjects/${encodeURIComponent(cnp)}/sessions`,
      body,
      signal,
    );
  }

  history(cnp: string, signal?: AbortSignal): Promise<HistoryJson> {
    return this.request<HistoryJson>(
      'GET',
      `/subjects/${encodeURIComponent(cnp)}/history`,
      undefined,
      signal,
    );
  }

  latest(cnp: string, signal?: AbortSignal): Promise<SessionJson> {
    return this.request<SessionJson>(
      'GET',
      `/subjects/${encodeURIComponent(cnp)}/latest`,
      undefined,
      signal,
    );
  }

  flags(signal?: AbortSignal): Promise<FlagEntryJson[]> {
    return this.request<FlagEntryJson[]>('GET', '/flags', undefined, signal);
  }

  reference(
    age: number,
    sex: string,
    env: string,
    signal?: AbortSignal,
  ): Promise<ReferenceCellJson> {
    const query = new URLSearchParams({ age: String(age), sex, env });
    return this.request<ReferenceCellJson>('GET', `/reference?${query}`, undefined, signal);
  }
}
