/**
 * Application shell: tab navigation between the three views and the
 * en/ro locale toggle. Switching tabs rebuilds the active view; switching
 * locale rebuilds the whole shell with the other label set.
 */

import type { ApiClient } from './api';
import { clear, el } from './dom';
import { LABELS, type Locale } from './i18n';
import { createEntryView } from './views/entry';
import { createFlagsView } from './views/flags';
import { createTrendView } from './views/trend';

type TabName = 'entry' | 'trend' | 'flags';

export interface App {
  /** Switch tab; for 'trend' an optional subject to load immediately. */
  navigate(tab: TabName, cnp?: string): void;
  setLocale(locale: Locale): void;
  readonly locale: Locale;
}

export function createApp(root: HTMLElement, client: ApiClient, initial: Locale = 'en'): App {
  let locale: Locale = initial;
  let activeTab: TabName = 'entry';
  let pendingCnp: string | undefined;

  function render(): void {
    const labels = LABELS[locale];
    clear(root);

    const title = el('h1', {}, [labels.ui.app_title]);

    const tabBar = el('nav', { class: 'tabs', role: 'tablist' });
    const tabs: Array<[TabName, string]> = [
      ['entry', labels.ui.tab_entry],
      ['trend', labels.ui.tab_trend],
      ['flags', labels.ui.tab_flags],
    ];
    for (const [name, text] of tabs) {
      const button = el(
        'button',
        { type: 'button', 'data-testid': `tab-${name}`, role: 'tab' },
        [text],
      );
      if (name === activeTab) button.classList.add('active');
      button.addEventListener('click', () => app.navigate(name));
      tabBar.append(button);
    }

    const localeToggle = el(
      'button',
      { type: 'button', class: 'locale-toggle', 'data-testid': 'locale-toggle' },
      [locale === 'en' ? 'RO' : 'EN'],
    );
    localeToggle.addEventListener('click', () => {
      app.setLocale(locale === 'en' ? 'ro' : 'en');
    });
    tabBar.append(localeToggle);

    const viewHost = el('main', { class: 'view-host' });
    root.append(el('header', {}, [title, tabBar]), viewHost);

    if (activeTab === 'entry') {
      viewHost.append(createEntryView({ client, labels }).el);
    } else if (activeTab === 'trend') {
      const view = createTrendView({ client, labels });
      viewHost.append(view.el);
      if (pendingCnp) {
        void view.load(pendingCnp);
        pendingCnp = undefined;
      }
    } else {
      const view = createFlagsView({
        client,
        labels,
        onOpenSubject: (cnp) => app.navigate('trend', cnp),
      });
      viewHost.append(view.el);
      void view.load();
    }
  }

  const app: App = {
    navigate(tab: TabName, cnp?: string): void {
      activeTab = tab;
      pendingCnp = cnp;
      render();
    },
    setLocale(next: Locale): void {
      locale = next;
      render();
    },
    get locale(): Locale {
      return locale;
    },
  };

  render();
  return app;
}
