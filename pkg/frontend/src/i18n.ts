/**
 * English/Romanian label sets.
 *
 * The prompt and report strings mirror the CLI's label sets verbatim so
 * the web client and the terminal client read identically to operators
 * who switch between them. UI-only strings (tabs, banners, notices) live
 * under `ui`.
 */

import type { SkinfoldSite, WeightBand } from './types';

export type Locale = 'en' | 'ro';

export interface LabelSet {
  prompt_cnp: string;
  prompt_date: string;
  prompt_age: string;
  prompt_height: string;
  prompt_weight: string;
  prompt_sex: string;
  prompt_folds: string;
  fold_prompts: Record<SkinfoldSite, string>;
  report_subject: string;
  report_age: string;
  report_height: string;
  report_weight: string;
  report_sex: string;
  report_folds: string;
  fold_names: Record<SkinfoldSite, string>;
  report_bmi: string;
  report_bd: string;
  report_pat: string;
  report_bd_na: string;
  report_pat_na: string;
  report_class: string;
  report_band: string;
  band_unavailable: string;
  no_flags: string;
  history_columns: string[];
  ui: {
    app_title: string;
    tab_entry: string;
    tab_trend: string;
    tab_flags: string;
    submit: string;
    submitting: string;
    retry: string;
    network_error: string;
    pat_unsupported: string;
    empty_history: string;
    loading: string;
    trend_lookup: string;
    trend_load: string;
    bmi_axis: string;
    pat_axis: string;
    flags_hint: string;
    warnings_title: string;
  };
}

export const LABELS: Record<Locale, LabelSet> = {
  en: {
    prompt_cnp: 'Subject CNP: ',
    prompt_date: 'Session date: ',
    prompt_age: 'Age (years): ',
    prompt_height: 'Height (m): ',
    prompt_weight: 'Weight (kg): ',
    prompt_sex: 'Sex (M/F): ',
    prompt_folds: 'Skinfold measurements (mm):',
    fold_prompts: {
      chest: '-chest: ',
      midaxillary: '-midaxillary: ',
      triceps: '-triceps: ',
      subscapular: '-subscapular: ',
      abdomen: '-abdomen: ',
      suprailiac: '-suprailiac: ',
      thigh: '-thigh: ',
    },
    report_subject: 'Subject',
    report_age: 'Age: {age} years',
    report_height: 'Height: {height} m',
    report_weight: 'Weight: {weight} kg',
    report_sex: 'Sex: {sex}',
    report_folds: 'Skinfolds (mm):',
    fold_names: {
      chest: 'chest',
      midaxillary: 'midaxillary',
      triceps: 'triceps',
      subscapular: 'subscapular',
      abdomen: 'abdomen',
      suprailiac: 'suprailiac',
      thigh: 'thigh',
    },
    report_bmi: 'Body mass index = {bmi}',
    report_bd: 'Body density = {bd}',
    report_pat: 'Adipose tissue = {pat}%',
    report_bd_na: 'Body density = n/a',
    report_pat_na: 'Adipose tissue = n/a (age outside 8-18)',
    report_class: 'Classification: {label}',
    report_band: 'Weight band: {band}',
    band_unavailable: 'band unavailable',
    no_flags: 'no flagged subjects',
    history_columns: [
      'date', 'age', 'height', 'weight', 'chest', 'midax', 'tricep',
      'subscap', 'abdom', 'suprail', 'thigh', 'bmi', 'bd', 'pat',
    ],
    ui: {
      app_title: 'Body-composition screening',
      tab_entry: 'New session',
      tab_trend: 'Trend',
      tab_flags: 'Flags',
      submit: 'Evaluate',
      submitting: 'Evaluating...',
      retry: 'Retry',
      network_error: 'Cannot reach the screening service.',
      pat_unsupported: 'PAT unsupported for this age',
      empty_history: 'No sessions recorded for this subject yet.',
      loading: 'Loading...',
      trend_lookup: 'Show trend',
      trend_load: 'Subject CNP: ',
      bmi_axis: 'BMI',
      pat_axis: 'Adipose %',
      flags_hint: 'Click a row to open the trend.',
      warnings_title: 'Warnings',
    },
  },
  ro: {
    prompt_cnp: 'Introduceti CNP subiectului: ',
    prompt_date: 'Data sesiunii: ',
    prompt_age: 'Introduceti varsta subiectului: ',
    prompt_height: 'Introduceti talia subiectului: ',
    prompt_weight: 'Introduceti greutatea subiectului: ',
    prompt_sex: 'Introduceti sexul subiectului (F/M): ',
    prompt_folds: 'Introduceti dimensiunile pliurilor cutanate:',
    fold_prompts: {
      chest: '-torace: ',
      midaxillary: '-linia axilara mijlocie: ',
      triceps: '-triceps: ',
      subscapular: '-subcapular: ',
      abdomen: '-abdomen: ',
      suprailiac: '-suprailiac: ',
      thigh: '-coapsa: ',
    },
    report_subject: 'Subiect',
    report_age: 'Varsta: {age} ani',
    report_height: 'Talie: {height} m',
    report_weight: 'Greutate: {weight} kg',
    report_sex: 'Sex: {sex}',
    report_folds: 'Pliuri subcutanate (mm):',
    fold_names: {
      chest: 'torace',
      midaxillary: 'axilara mijlocie',
      triceps: 'triceps',
      subscapular: 'subcapular',
      abdomen: 'abdomen',
      suprailiac: 'suprailiac',
      thigh: 'coapsa',
    },
    report_bmi: 'Indicele de masa corporala={bmi}',
    report_bd: 'Densitatea corporala={bd}',
    report_pat: '% Tesut adipos={pat}%',
    report_bd_na: 'Densitatea corporala=n/a',
    report_pat_na: '% Tesut adipos=n/a (varsta in afara 8-18)',
    report_class: 'Clasificare: {label}',
    report_band: 'Banda de greutate: {band}',
    band_unavailable: 'banda indisponibila',
    no_flags: 'niciun subiect semnalat',
    history_columns: [
      'data', 'A', 'Inal', 'Gre', 'P.Tor', 'P.LAM', 'P.Tri',
      'P.Sub', 'P.Abd', 'P.Sup', 'P.Coa', 'IMC', 'DC', 'Pr',
    ],
    ui: {
      app_title: 'Evaluarea compozitiei corporale',
      tab_entry: 'Sesiune noua',
      tab_trend: 'Evolutie',
      tab_flags: 'Semnalari',
      submit: 'Evalueaza',
      submitting: 'Se evalueaza...',
      retry: 'Reincearca',
      network_error: 'Serviciul de evaluare nu poate fi contactat.',
      pat_unsupported: 'PAT indisponibil pentru aceasta varsta',
      empty_history: 'Nicio sesiune inregistrata pentru acest subiect.',
      loading: 'Se incarca...',
      trend_lookup: 'Arata evolutia',
      trend_load: 'CNP subiect: ',
      bmi_axis: 'IMC',
      pat_axis: 'Tesut adipos %',
      flags_hint: 'Apasati un rand pentru a deschide evolutia.',
      warnings_title: 'Avertismente',
    },
  },
};

/** Band names match the CLI's single (unlocalized) set. */
export const BAND_LABELS: Record<WeightBand, string> = {
  VeryLow: 'Very low',
  Low: 'Low',
  Normal: 'Normal',
  High: 'High',
  VeryHigh: 'Very high',
};

/** Fill {placeholders} in a label template. */
export function fill(template: string, values: Record<string, string | number>): string {
  return template.replace(/\{(\w+)\}/g, (whole, key: string) =>
    key in values ? String(values[key]) : whole,
  );
}

/** Label text for a form field: the CLI prompt without its trailing colon. */
export function promptLabel(prompt: string): string {
  return prompt.replace(/:\s*$/, '').replace(/^-/, '');
}
