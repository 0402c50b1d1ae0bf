// @vitest-environment jsdom
/**
 * Single-source-of-truth audit: every numeric token the UI displays on the
 * evaluation card and the trend view must already appear in an intercepted
 * service response (the fixed 25/30 guide labels on the chart being the
 * only chart furniture). If any view ever computed or re-rounded a number
 * itself, the token would not match and this suite would fail.
 */

import { beforeEach, describe, expect, it } from 'vitest';

import historyDecreasing from './fixtures/history_decreasing.json';
import workedSession from './fixtures/worked_session.json';
import {
  entryRoutes,
  fakeFetch,
  fillForm,
  shownNumericTokens,
  tokensFromJson,
  WORKED_FORM,
} from './helpers';
import { ApiClient } from '../src/api';
import { BMI_GUIDES } from '../src/chart';
import { LABELS } from '../src/i18n';
import { createEntryView } from '../src/views/entry';
import { createTrendView } from '../src/views/trend';

beforeEach(() => {
  document.body.innerHTML = '';
});

function assertCovered(shown: string[], allowed: Set<string>, where: string): void {
  for (const token of shown) {
    expect(allowed.has(token), `${where} shows '${token}' with no service source`).toBe(true);
  }
}

describe('single source of truth', () => {
  it('every numeric on the evaluation card comes from a service response', async () => {
    const fetcher = fakeFetch(
      entryRoutes({ session: { status: 200, json: workedSession } }),
    );
    const view = createEntryView({ client: new ApiClient('', fetcher.impl), labels: LABELS.en });
    document.body.append(view.el);
    fillForm(view, WORKED_FORM);
    await view.submit();

    const card = view.el.querySelector('[data-testid="evaluation-card"]')!;
    expect(card).not.toBeNull();
    const shown = shownNumericTokens(card);
    expect(shown.length).toBeGreaterThan(0);
    expect(shown).toContain('25.26');
    expect(shown).toContain('1.069');
    expect(shown).toContain('10');

    const allowed = new Set<string>();
    for (const exchange of fetcher.exchanges) {
      tokensFromJson(exchange.response, allowed);
    }
    assertCovered(shown, allowed, 'card');
  });

  it('every numeric on the trend view comes from the history response', async () => {
    const fetcher = fakeFetch(() => ({ status: 200, json: historyDecreasing }));
    const view = createTrendView({ client: new ApiClient('', fetcher.impl), labels: LABELS.en });
    document.body.append(view.el);
    await view.load('1900410354721');

    const content = view.el.querySelector('[data-testid="trend-content"]')!;
    const shown = shownNumericTokens(content);
    expect(shown.length).toBeGreaterThan(0);

    const allowed = new Set<string>(BMI_GUIDES.map(String));
    for (const exchange of fetcher.exchanges) {
      tokensFromJson(exchange.response, allowed);
    }
    assertCovered(shown, allowed, 'trend');
  });

  it('display strings are never renormalized by the UI', async () => {
    // a deliberately odd display string must land in the DOM verbatim
    const doctored = {
      ...workedSession,
      bmi_display: '25.2600',
    };
    const fetcher = fakeFetch(entryRoutes({ session: { status: 200, json: doctored } }));
    const view = createEntryView({ client: new ApiClient('', fetcher.impl), labels: LABELS.en });
    document.body.append(view.el);
    fillForm(view, WORKED_FORM);
    await view.submit();

    expect(
      view.el.querySelector('[data-testid="bmi-line"]')?.textContent,
    ).toBe('Body mass index = 25.2600');
  });
});
