/**
 * Client-side session form validation.
 *
 * The checks mirror the service's input domain exactly: height in
 * (0.5, 2.5) m, weight in (5, 300) kg, each skinfold in (0, 100] mm, age
 * in [5, 25] whole years, and a fold sum of at most 300 mm whenever the
 * adipose regression applies (ages 8-18). The evaluated age is the one
 * derived from the CNP and the session date, so that is the one range
 * checked; a typed age only has to parse and agree.
 *
 * Deliberately no BMI/density/adipose math lives here: what the form can
 * reject locally is exactly what the service rejects as an out-of-range
 * input, and everything deeper (for example a lean-subject negative
 * adipose estimate) comes back as a service error mapped onto the form.
 */

import { ageAt, parseCnp, type DecodedCnp } from './cnp';
import { SKINFOLD_SITES, type SessionBody, type SkinfoldSite } from './types';

export const HEIGHT_RANGE_M: readonly [number, number] = [0.5, 2.5];
export const WEIGHT_RANGE_KG: readonly [number, number] = [5, 300];
export const AGE_RANGE_YEARS: readonly [number, number] = [5, 25];
export const FOLD_MAX_MM = 100;
export const FOLD_SUM_MAX_MM = 300;
export const PAT_AGE_MIN = 8;
export const PAT_AGE_MAX = 18;

/** Raw text of every form input, exactly as typed. */
export interface SessionFormInput {
  cnp: string;
  date: string;
  age: string;
  height: string;
  weight: string;
  chest: string;
  midaxillary: string;
  triceps: string;
  subscapular: string;
  abdomen: string;
  suprailiac: string;
  thigh: string;
}

export type FormField = keyof SessionFormInput | 'fold_sum' | 'form';

export interface ValidationResult {
  valid: boolean;
  errors: Partial<Record<FormField, string>>;
  warnings: string[];
  /** Present when the CNP field decodes, even if other fields fail. */
  decoded?: DecodedCnp;
  /** Age the service will evaluate (CNP birthdate vs session date). */
  derivedAge?: number;
  /** Whether the adipose regression applies at the derived age. */
  patSupported?: boolean;
  /** Ready-to-post body; present only when valid. */
  body?: SessionBody;
}

export function emptyFormInput(): SessionFormInput {
  return {
    cnp: '',
    date: '',
    age: '',
    height: '',
    weight: '',
    chest: '',
    midaxillary: '',
    triceps: '',
    subscapular: '',
    abdomen: '',
    suprailiac: '',
    thigh: '',
  };
}

const ISO_DATE = /^\d{4}-\d{2}-\d{2}$/;

function parseNumber(text: string): number | null {
  const trimmed = text.trim();
  if (trimmed === '') return null;
  const value = Number(trimmed);
  return Number.isFinite(value) ? value : null;
}

function parseIsoDate(text: string): string | null {
  const trimmed = text.trim();
  if (!ISO_DATE.test(trimmed)) return null;
  const [y, m, d] = trimmed.split('-').map(Number) as [number, number, number];
  const probe = new Date(Date.UTC(y, m - 1, d));
  if (
    probe.getUTCFullYear() !== y ||
    probe.getUTCMonth() !== m - 1 ||
    probe.getUTCDate() !== d
  ) {
    return null;
  }
  return trimmed;
}

export function validateSessionForm(input: SessionFormInput): ValidationResult {
  const errors: Partial<Record<FormField, string>> = {};
  const warnings: string[] = [];

  let decoded: DecodedCnp | undefined;
  try {
    decoded = parseCnp(input.cnp);
    if (!decoded.checksumOk) {
      warnings.push('CNP fails the control-digit check');
    }
  } catch (err) {
    errors.cnp = err instanceof Error ? err.message : 'invalid CNP';
  }

  const date = parseIsoDate(input.date);
  if (date === null) {
    errors.date = 'session date is required (YYYY-MM-DD)';
  }

  let derivedAge: number | undefined;
  if (decoded && date !== null) {
    if (date < decoded.birthdate) {
      errors.date = `session date ${date} predates birthdate ${decoded.birthdate}`;
    } else {
      derivedAge = ageAt(decoded, date);
      if (derivedAge < AGE_RANGE_YEARS[0] || derivedAge > AGE_RANGE_YEARS[1]) {
        errors.age = `age from CNP is ${derivedAge}; must be in [5, 25] years`;
      }
    }
  }

  let typedAge: number | undefined;
  if (input.age.trim() !== '') {
    const age = parseNumber(input.age);
    if (age === null || !Number.isInteger(age)) {
      errors.age = errors.age ?? 'age must be a whole number of years';
    } else if (age < AGE_RANGE_YEARS[0] || age > AGE_RANGE_YEARS[1]) {
      errors.age = errors.age ?? `age must be in [5, 25] years, got ${age}`;
    } else {
      typedAge = age;
      if (derivedAge !== undefined && typedAge !== derivedAge) {
        warnings.push(
          `typed age ${typedAge} disagrees with CNP-derived age ${derivedAge}`,
        );
      }
    }
  }

  const height = parseNumber(input.height);
  if (height === null) {
    errors.height = 'height is required';
  } else if (!(HEIGHT_RANGE_M[0] < height && height < HEIGHT_RANGE_M[1])) {
    errors.height = `height must be in (0.5, 2.5) m, got ${height}`;
  }

  const weight = parseNumber(input.weight);
  if (weight === null) {
    errors.weight = 'weight is required';
  } else if (!(WEIGHT_RANGE_KG[0] < weight && weight < WEIGHT_RANGE_KG[1])) {
    errors.weight = `weight must be in (5, 300) kg, got ${weight}`;
  }

  const folds: Partial<Record<SkinfoldSite, number>> = {};
  for (const site of SKINFOLD_SITES) {
    const value = parseNumber(input[site]);
    if (value === null) {
      errors[site] = `${site} fold is required`;
    } else if (!(0 < value && value <= FOLD_MAX_MM)) {
      errors[site] = `${site} fold must be in (0, 100] mm, got ${value}`;
    } else {
      folds[site] = value;
    }
  }

  const patSupported =
    derivedAge !== undefined && derivedAge >= PAT_AGE_MIN && derivedAge <= PAT_AGE_MAX;

  // the density regression is only evaluated for ages 8-18, so the fold
  // sum cap only binds there; outside that span any in-range folds pass
  if (patSupported && Object.keys(folds).length === SKINFOLD_SITES.length) {
    const foldSum = SKINFOLD_SITES.reduce((total, site) => total + folds[site]!, 0);
    if (foldSum > FOLD_SUM_MAX_MM) {
      errors.fold_sum = `fold sum must be at most 300 mm, got ${foldSum}`;
    }
  }

  const valid = Object.keys(errors).length === 0;
  const result: ValidationResult = { valid, errors, warnings };
  if (decoded) result.decoded = decoded;
  if (derivedAge !== undefined) {
    result.derivedAge = derivedAge;
    result.patSupported = patSupported;
  }
  if (valid) {
    const body: SessionBody = {
      date: date!,
      height_m: height!,
      weight_kg: weight!,
      chest_mm: folds.chest!,
      midaxillary_mm: folds.midaxillary!,
      triceps_mm: folds.triceps!,
      subscapular_mm: folds.subscapular!,
      abdomen_mm: folds.abdomen!,
      suprailiac_mm: folds.suprailiac!,
      thigh_mm: folds.thigh!,
    };
    if (typedAge !== undefined) body.age = typedAge;
    result.body = body;
  }
  return result;
}

/** Map a service error field onto the form field that should show it. */
export function serviceFieldToFormField(field: string | null): FormField {
  if (field === null) return 'form';
  const known: Record<string, FormField> = {
    cnp: 'cnp',
    date: 'date',
    age: 'age',
    height: 'height',
    height_m: 'height',
    weight: 'weight',
    weight_kg: 'weight',
    fold_sum: 'fold_sum',
  };
  if (field in known) return known[field]!;
  for (const site of SKINFOLD_SITES) {
    if (field === site || field === `${site}_mm`) return site;
  }
  return 'form';
}
