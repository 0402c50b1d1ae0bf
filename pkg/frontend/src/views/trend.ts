/**
 * Trend view: one subject's longitudinal record as a chart plus the
 * history table. Table cells are the values the service stored and the
 * display strings it rounded; nothing is recomputed client-side.
 */

import { ApiError, NetworkError, type ApiClient } from '../api';
import { buildTrendChart } from '../chart';
import { clear, el } from '../dom';
import { promptLabel, type LabelSet } from '../i18n';
import type { SessionJson } from '../types';

interface TrendDeps {
  client: ApiClient;
  labels: LabelSet;
}

export interface TrendView {
  el: HTMLElement;
  /** Load and render one subject's history; aborts any prior load. */
  load(cnp: string): Promise<void>;
}

function historyTable(sessions: SessionJson[], labels: LabelSet): HTMLElement {
  const head = el('tr', {});
  for (const column of labels.history_columns) {
    head.append(el('th', {}, [column]));
  }
  const table = el('table', { class: 'history-table', 'data-testid': 'history-table' }, [
    el('thead', {}, [head]),
  ]);
  const body = el('tbody', {});
  for (const s of sessions) {
    const cells = [
      s.date,
      String(s.age),
      String(s.height_m),
      String(s.weight_kg),
      String(s.chest_mm),
      String(s.midaxillary_mm),
      String(s.triceps_mm),
      String(s.subscapular_mm),
      String(s.abdomen_mm),
      String(s.suprailiac_mm),
      String(s.thigh_mm),
      s.bmi_display,
      s.bd_display ?? 'n/a',
      s.pat_display ?? 'n/a',
    ];
    body.append(el('tr', {}, cells.map((text) => el('td', {}, [text]))));
  }
  table.append(body);
  return el('div', { class: 'table-scroll' }, [table]);
}

export function createTrendView(deps: TrendDeps): TrendView {
  const { client, labels } = deps;

  const cnpInput = el('input', {
    type: 'text',
    'data-testid': 'trend-cnp',
    autocomplete: 'off',
  });
  const lookupButton = el('button', { type: 'submit' }, [labels.ui.trend_lookup]);
  const lookupForm = el('form', { class: 'trend-lookup', novalidate: '' }, [
    el('label', {}, [promptLabel(labels.ui.trend_load)]),
    cnpInput,
    lookupButton,
  ]);

  const content = el('div', { class: 'trend-content', 'data-testid': 'trend-content' });
  const root = el('section', { class: 'view view-trend' }, [lookupForm, content]);

  let controller: AbortController | null = null;

  lookupForm.addEventListener('submit', (event) => {
    event.preventDefault();
    void view.load(cnpInput.value.trim());
  });

  const view: TrendView = {
    el: root,
    async load(cnp: string): Promise<void> {
      if (!cnp) return;
      cnpInput.value = cnp;
      controller?.abort();
      controller = new AbortController();
      const signal = controller.signal;

      clear(content);
      content.append(el('p', { class: 'loading' }, [labels.ui.loading]));
      try {
        const history = await client.history(cnp, signal);
        if (signal.aborted) return;
        clear(content);
        if (history.sessions.length === 0) {
          content.append(
            el('p', { class: 'placeholder', 'data-testid': 'empty-history' }, [
              labels.ui.empty_history,
            ]),
          );
          return;
        }
        const chart = buildTrendChart(history.sessions, labels.ui);
        content.append(
          el('h3', {}, [`${labels.report_subject} ${history.subject.cnp}`]),
          chart.svg,
          historyTable(history.sessions, labels),
        );
      } catch (err) {
        if (err instanceof Error && err.name === 'AbortError') return;
        clear(content);
        if (err instanceof ApiError) {
          content.append(
            el('p', { class: 'field-error', 'data-testid': 'trend-error' }, [err.message]),
          );
        } else if (err instanceof NetworkError) {
          content.append(
            el('div', { class: 'banner', 'data-testid': 'network-banner' }, [
              labels.ui.network_error,
            ]),
          );
        } else {
          throw err;
        }
      }
    },
  };

  return view;
}
