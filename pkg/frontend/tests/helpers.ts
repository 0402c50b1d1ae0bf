/** Shared test utilities: a recording fake fetch and numeric-token audits. */

import type { EntryView } from '../src/views/entry';

export interface Exchange {
  method: string;
  url: string;
  body: unknown;
  status: number;
  response: unknown;
}

export type RouteHandler = (
  method: string,
  url: string,
  body: unknown,
) => { status: number; json: unknown } | 'network';

export interface FakeFetch {
  impl: (url: string, init?: RequestInit) => Promise<{
    ok: boolean;
    status: number;
    json(): Promise<unknown>;
  }>;
  /** Every response actually delivered to the client, in order. */
  exchanges: Exchange[];
}

export function fakeFetch(handler: RouteHandler): FakeFetch {
  const exchanges: Exchange[] = [];
  return {
    exchanges,
    impl: async (url, init) => {
      const method = init?.method ?? 'GET';
      const body = init?.body ? JSON.parse(init.body as string) : undefined;
      const out = handler(method, url, body);
      if (out === 'network') {
        throw new TypeError('fetch failed');
      }
      exchanges.push({ method, url, body, status: out.status, response: out.json });
      return {
        ok: out.status >= 200 && out.status < 300,
        status: out.status,
        json: async () => out.json,
      };
    },
  };
}

/** Route table for the usual register-then-record flow. */
export function entryRoutes(opts: {
  subject?: unknown;
  session: { status: number; json: unknown } | 'network';
}): RouteHandler {
  return (method, url) => {
    if (method === 'POST' && /\/subjects$/.test(url)) {
      return {
        status: 200,
        json: opts.subject ?? { cnp: 'x', warnings: [] },
      };
    }
    if (method === 'POST' && /\/sessions$/.test(url)) {
      return opts.session;
    }
    throw new Error(`unexpected request ${method} ${url}`);
  };
}

export function numericTokens(text: string): string[] {
  return text.match(/\d+(?:\.\d+)?/g) ?? [];
}

/**
 * Numeric tokens the user actually sees inside an element, collected per
 * text node so adjacent elements never glue their digits together.
 */
export function shownNumericTokens(root: Element): string[] {
  const walker = document.createTreeWalker(root, NodeFilter.SHOW_TEXT);
  const tokens: string[] = [];
  while (walker.nextNode()) {
    tokens.push(...numericTokens(walker.currentNode.nodeValue ?? ''));
  }
  return tokens;
}

/** Collect every numeric token appearing anywhere in a JSON payload. */
export function tokensFromJson(value: unknown, out: Set<string> = new Set()): Set<string> {
  if (value === null || value === undefined) return out;
  if (typeof value === 'number' || typeof value === 'string' || typeof value === 'boolean') {
    for (const token of numericTokens(String(value))) out.add(token);
    return out;
  }
  if (Array.isArray(value)) {
    for (const item of value) tokensFromJson(item, out);
    return out;
  }
  if (typeof value === 'object') {
    for (const item of Object.values(value)) tokensFromJson(item, out);
    return out;
  }
  return out;
}

/** Set a form field by input id and fire the input event. */
export function setField(view: EntryView, name: string, value: string): void {
  const input = view.el.querySelector<HTMLInputElement>(`#field-${name}`);
  if (!input) throw new Error(`no input for field ${name}`);
  input.value = value;
  input.dispatchEvent(new Event('input', { bubbles: true }));
}

export function fillForm(view: EntryView, values: Record<string, string>): void {
  for (const [name, value] of Object.entries(values)) {
    setField(view, name, value);
  }
}

export const WORKED_FORM: Record<string, string> = {
  cnp: '1900410354721',
  date: '2007-05-20',
  age: '17',
  height: '1.70',
  weight: '73.0',
  chest: '12.9',
  midaxillary: '15.2',
  triceps: '10.8',
  subscapular: '17.3',
  abdomen: '18.7',
  suprailiac: '15.6',
  thigh: '10.5',
};

export function submitButton(view: EntryView): HTMLButtonElement {
  const button = view.el.querySelector<HTMLButtonElement>('[data-testid="submit"]');
  if (!button) throw new Error('no submit button');
  return button;
}
