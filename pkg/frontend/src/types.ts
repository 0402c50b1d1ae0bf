/**
 * Wire types for the screening service JSON API.
 *
 * Field names and units match the service payloads one-to-one; nothing in
 * here is computed client-side. Display strings (`bmi_display`,
 * `bd_display`, `pat_display`) arrive pre-rounded from the service and are
 * the only numbers the UI ever shows for derived quantities.
 */

export type SexCode = 'M' | 'F';

export type WeightBand = 'VeryLow' | 'Low' | 'Normal' | 'High' | 'VeryHigh';

export interface ClassificationJson {
  principal: string;
  additional: string;
  principal_label: string;
  additional_label: string;
  underweight: boolean;
  overweight: boolean;
  obese: boolean;
}

export interface SubjectJson {
  cnp: string;
  name: string | null;
  sex: SexCode;
  birthdate: string;
  environment: string | null;
  checksum_ok: boolean;
  warnings?: string[];
}

export interface SessionJson {
  cnp: string;
  date: string;
  age: number;
  height_m: number;
  weight_kg: number;
  chest_mm: number;
  midaxillary_mm: number;
  triceps_mm: number;
  subscapular_mm: number;
  abdomen_mm: number;
  suprailiac_mm: number;
  thigh_mm: number;
  fold_sum_mm: number;
  bmi: number;
  bmi_display: string;
  pat_supported: boolean;
  bd: number | null;
  bd_display: string | null;
  pat: number | null;
  pat_percent: number | null;
  pat_display: string | null;
  abm_kg: number | null;
  classification: ClassificationJson;
  weight_band: WeightBand | null;
  warnings?: string[];
}

export interface FlagEntryJson extends SessionJson {
  name: string | null;
  environment: string | null;
}

export interface HistoryJson {
  subject: SubjectJson;
  sessions: SessionJson[];
}

export interface ReferenceCellJson {
  age: number;
  sex: SexCode;
  environment: string;
  mean_kg: number;
  sd_kg: number;
  m_minus_2d: number;
  m_minus_d: number;
  m_plus_d: number;
  m_plus_2d: number;
}

/** Error envelope every non-2xx response carries. */
export interface ApiErrorJson {
  code: string;
  message: string;
  field: string | null;
}

/** Request body for POST /subjects/{cnp}/sessions. */
export interface SessionBody {
  date: string;
  age?: number;
  height_m: number;
  weight_kg: number;
  chest_mm: number;
  midaxillary_mm: number;
  triceps_mm: number;
  subscapular_mm: number;
  abdomen_mm: number;
  suprailiac_mm: number;
  thigh_mm: number;
}

export const SKINFOLD_SITES = [
  'chest',
  'midaxillary',
  'triceps',
  'subscapular',
  'abdomen',
  'suprailiac',
  'thigh',
] as const;

export type SkinfoldSite = (typeof SKINFOLD_SITES)[number];

export const WEIGHT_BANDS: WeightBand[] = [
  'VeryLow',
  'Low',
  'Normal',
  'High',
  'VeryHigh',
];
