/**
 * Session entry view: the measurement form and the evaluation card.
 *
 * The submit button stays disabled until every field parses and passes
 * the same range checks the service applies. The card renders only what
 * the service returned: the display strings for BMI, body density and
 * adipose percentage, the classification labels, and the weight band.
 */

import { ApiError, NetworkError, type ApiClient } from '../api';
import { clear, el } from '../dom';
import { BAND_LABELS, fill, promptLabel, type LabelSet } from '../i18n';
import { SKINFOLD_SITES, WEIGHT_BANDS, type SessionJson } from '../types';
import {
  emptyFormInput,
  serviceFieldToFormField,
  validateSessionForm,
  type FormField,
  type SessionFormInput,
} from '../validation';

interface EntryDeps {
  client: ApiClient;
  labels: LabelSet;
}

export interface EntryView {
  el: HTMLElement;
  /** Re-read inputs, update error spans and the submit button. */
  refresh(): void;
  /** Submit the current form; resolves when the card or an error is shown. */
  submit(): Promise<void>;
}

const TEXT_FIELDS: Array<{ name: FormField & keyof SessionFormInput; labelKey: 'prompt_cnp' | 'prompt_date' | 'prompt_age' | 'prompt_height' | 'prompt_weight' }> = [
  { name: 'cnp', labelKey: 'prompt_cnp' },
  { name: 'date', labelKey: 'prompt_date' },
  { name: 'age', labelKey: 'prompt_age' },
  { name: 'height', labelKey: 'prompt_height' },
  { name: 'weight', labelKey: 'prompt_weight' },
];

function fieldGroup(
  name: string,
  labelText: string,
  input: HTMLInputElement,
): HTMLElement {
  const label = el('label', { for: `field-${name}` }, [labelText]);
  const error = el('span', { class: 'field-error', 'data-testid': `error-${name}` });
  return el('div', { class: 'form-group', 'data-field': name }, [label, input, error]);
}

export function createEntryView(deps: EntryDeps): EntryView {
  const { client, labels } = deps;
  const inputs = new Map<keyof SessionFormInput, HTMLInputElement>();

  const form = el('form', { class: 'entry-form', novalidate: '' });
  form.addEventListener('submit', (event) => {
    event.preventDefault();
    void view.submit();
  });

  for (const field of TEXT_FIELDS) {
    const input = el('input', {
      id: `field-${field.name}`,
      name: field.name,
      type: field.name === 'date' ? 'date' : 'text',
      autocomplete: 'off',
    });
    inputs.set(field.name, input);
    form.append(fieldGroup(field.name, promptLabel(labels[field.labelKey]), input));
  }

  const foldsFieldset = el('fieldset', { class: 'folds' }, [
    el('legend', {}, [labels.prompt_folds]),
  ]);
  for (const site of SKINFOLD_SITES) {
    const input = el('input', {
      id: `field-${site}`,
      name: site,
      type: 'text',
      inputmode: 'decimal',
      autocomplete: 'off',
    });
    inputs.set(site, input);
    foldsFieldset.append(fieldGroup(site, promptLabel(labels.fold_prompts[site]), input));
  }
  const foldSumError = el('span', { class: 'field-error', 'data-testid': 'error-fold_sum' });
  foldsFieldset.append(foldSumError);
  form.append(foldsFieldset);

  const formError = el('p', { class: 'field-error form-error', 'data-testid': 'error-form' });
  const warningsBox = el('ul', { class: 'warnings', 'data-testid': 'warnings' });
  const submitButton = el('button', { type: 'submit', 'data-testid': 'submit' }, [
    labels.ui.submit,
  ]);
  submitButton.disabled = true;
  form.append(formError, warningsBox, submitButton);

  const banner = el('div', { class: 'banner hidden', 'data-testid': 'network-banner' });
  const cardHost = el('div', { class: 'card-host', 'data-testid': 'card-host' });
  const root = el('section', { class: 'view view-entry' }, [form, banner, cardHost]);

  function readInput(): SessionFormInput {
    const raw = emptyFormInput();
    for (const [name, input] of inputs) {
      raw[name] = input.value;
    }
    return raw;
  }

  function showErrors(errors: Partial<Record<FormField, string>>): void {
    for (const name of inputs.keys()) {
      const span = form.querySelector(`[data-testid="error-${name}"]`);
      if (span) span.textContent = errors[name] ?? '';
    }
    foldSumError.textContent = errors.fold_sum ?? '';
    formError.textContent = errors.form ?? '';
  }

  function showWarnings(warnings: string[]): void {
    clear(warningsBox);
    for (const warning of warnings) {
      warningsBox.append(el('li', { class: 'warning' }, [warning]));
    }
  }

  function hideBanner(): void {
    banner.classList.add('hidden');
    clear(banner);
  }

  function showBanner(): void {
    clear(banner);
    banner.classList.remove('hidden');
    const retry = el('button', { type: 'button', 'data-testid': 'retry' }, [labels.ui.retry]);
    retry.addEventListener('click', () => {
      void view.submit();
    });
    banner.append(el('span', {}, [labels.ui.network_error]), retry);
  }

  function renderCard(session: SessionJson): void {
    clear(cardHost);
    const card = el('article', { class: 'card', 'data-testid': 'evaluation-card' });

    card.append(
      el('h3', {}, [`${labels.report_subject} ${session.cnp}`]),
      el('p', { class: 'echo' }, [
        [
          fill(labels.report_age, { age: session.age }),
          fill(labels.report_height, { height: session.height_m }),
          fill(labels.report_weight, { weight: session.weight_kg }),
        ].join(' | '),
      ]),
      el('p', { class: 'result-line', 'data-testid': 'bmi-line' }, [
        fill(labels.report_bmi, { bmi: session.bmi_display }),
      ]),
    );

    if (session.pat_supported && session.bd_display !== null && session.pat_display !== null) {
      card.append(
        el('p', { class: 'result-line', 'data-testid': 'bd-line' }, [
          fill(labels.report_bd, { bd: session.bd_display }),
        ]),
        el('p', { class: 'result-line', 'data-testid': 'pat-line' }, [
          fill(labels.report_pat, { pat: session.pat_display }),
        ]),
      );
    } else {
      card.append(
        el('p', { class: 'notice', 'data-testid': 'pat-notice' }, [labels.ui.pat_unsupported]),
      );
    }

    const cls = session.classification;
    card.append(
      el('p', { class: 'class-line' }, [
        el(
          'span',
          {
            class: 'badge',
            'data-testid': 'class-badge',
            'data-class': cls.principal,
          },
          [cls.principal_label],
        ),
        ' ',
        el('span', { class: 'class-detail' }, [
          fill(labels.report_class, { label: cls.additional_label }),
        ]),
      ]),
    );

    const strip = el('div', { class: 'band-strip', 'data-testid': 'band-strip' });
    if (session.weight_band !== null) {
      for (const band of WEIGHT_BANDS) {
        const segment = el(
          'span',
          { class: `band-seg band-${band}`, 'data-band': band },
          [BAND_LABELS[band]],
        );
        if (band === session.weight_band) segment.classList.add('active');
        strip.append(segment);
      }
      card.append(
        el('p', { class: 'band-line', 'data-testid': 'band-line' }, [
          fill(labels.report_band, { band: BAND_LABELS[session.weight_band] }),
        ]),
        strip,
      );
    } else {
      card.append(
        el('p', { class: 'band-line', 'data-testid': 'band-line' }, [
          fill(labels.report_band, { band: labels.band_unavailable }),
        ]),
      );
    }

    if (session.warnings && session.warnings.length) {
      const list = el('ul', { class: 'warnings' });
      for (const warning of session.warnings) {
        list.append(el('li', { class: 'warning' }, [warning]));
      }
      card.append(el('h4', {}, [labels.ui.warnings_title]), list);
    }

    cardHost.append(card);
  }

  const view: EntryView = {
    el: root,
    refresh(): void {
      const result = validateSessionForm(readInput());
      showErrors(result.errors);
      showWarnings(result.warnings);
      submitButton.disabled = !result.valid;
    },
    async submit(): Promise<void> {
      const result = validateSessionForm(readInput());
      showErrors(result.errors);
      showWarnings(result.warnings);
      submitButton.disabled = !result.valid;
      if (!result.valid || !result.body || !result.decoded) return;

      hideBanner();
      submitButton.disabled = true;
      submitButton.textContent = labels.ui.submitting;
      try {
        await client.registerSubject(result.decoded.raw);
        const session = await client.recordSession(result.decoded.raw, result.body);
        renderCard(session);
      } catch (err) {
        clear(cardHost);
        if (err instanceof ApiError) {
          const field = serviceFieldToFormField(err.field);
          showErrors({ [field]: err.message });
        } else if (err instanceof NetworkError) {
          showBanner();
        } else {
          throw err;
        }
      } finally {
        submitButton.textContent = labels.ui.submit;
        submitButton.disabled = !validateSessionForm(readInput()).valid;
      }
    },
  };

  form.addEventListener('input', () => view.refresh());
  view.refresh();
  return view;
}
