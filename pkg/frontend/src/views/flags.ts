/**
 * Flag triage view: every subject whose latest session classifies as
 * overweight or obese, highest BMI first (the service supplies the order).
 * Clicking a row opens that subject's trend.
 */

import { NetworkError, type ApiClient } from '../api';
import { clear, el } from '../dom';
import type { LabelSet } from '../i18n';

interface FlagsDeps {
  client: ApiClient;
  labels: LabelSet;
  onOpenSubject: (cnp: string) => void;
}

export interface FlagsView {
  el: HTMLElement;
  load(): Promise<void>;
}

export function createFlagsView(deps: FlagsDeps): FlagsView {
  const { client, labels, onOpenSubject } = deps;

  const content = el('div', { class: 'flags-content', 'data-testid': 'flags-content' });
  const root = el('section', { class: 'view view-flags' }, [content]);

  let controller: AbortController | null = null;

  const view: FlagsView = {
    el: root,
    async load(): Promise<void> {
      controller?.abort();
      controller = new AbortController();
      const signal = controller.signal;

      clear(content);
      content.append(el('p', { class: 'loading' }, [labels.ui.loading]));
      try {
        const entries = await client.flags(signal);
        if (signal.aborted) return;
        clear(content);
        if (entries.length === 0) {
          content.append(
            el('p', { class: 'placeholder', 'data-testid': 'no-flags' }, [labels.no_flags]),
          );
          return;
        }

        const head = el('tr', {});
        for (const column of ['CNP', labels.history_columns[0]!, labels.history_columns[11]!, '']) {
          head.append(el('th', {}, [column]));
        }
        const body = el('tbody', {});
        for (const entry of entries) {
          const row = el('tr', { class: 'flag-row', 'data-cnp': entry.cnp }, [
            el('td', {}, [entry.cnp]),
            el('td', {}, [entry.date]),
            el('td', {}, [entry.bmi_display]),
            el('td', {}, [entry.classification.principal_label]),
          ]);
          row.addEventListener('click', () => onOpenSubject(entry.cnp));
          body.append(row);
        }
        const table = el('table', { class: 'flags-table', 'data-testid': 'flags-table' }, [
          el('thead', {}, [head]),
          body,
        ]);
        content.append(
          el('div', { class: 'table-scroll' }, [table]),
          el('p', { class: 'hint' }, [labels.ui.flags_hint]),
        );
      } catch (err) {
        if (err instanceof Error && err.name === 'AbortError') return;
        clear(content);
        if (err instanceof NetworkError) {
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
