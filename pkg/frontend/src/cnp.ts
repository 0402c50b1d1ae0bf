/**
 * Client-side decoding of the Romanian personal numeric code (CNP).
 *
 * Mirrors the service's rules exactly: 13 digits, first digit encodes sex
 * and birth century, digits 2-7 the birthdate, last digit is a control
 * digit. Wrong shape or an impossible birthdate is a hard error; a failing
 * control digit only clears `checksumOk` (real registers contain such
 * codes and the subject still has to be screened).
 */

import type { SexCode } from './types';

export const CNP_LENGTH = 13;

const CHECKSUM_WEIGHTS = [2, 7, 9, 1, 4, 6, 3, 5, 8, 2, 7, 9];

// first digit -> [sex, birth century]; 0 and 9 are not decodable
const SEX_CENTURY: Record<string, [SexCode, number]> = {
  '1': ['M', 1900],
  '2': ['F', 1900],
  '3': ['M', 1800],
  '4': ['F', 1800],
  '5': ['M', 2000],
  '6': ['F', 2000],
  '7': ['M', 1900],
  '8': ['F', 1900],
};

export interface DecodedCnp {
  raw: string;
  sex: SexCode;
  /** ISO date string, YYYY-MM-DD. */
  birthdate: string;
  birthYear: number;
  birthMonth: number;
  birthDay: number;
  checksumOk: boolean;
}

export class CnpParseError extends Error {
  constructor(message: string) {
    super(message);
    this.name = 'CnpParseError';
  }
}

export function checksumDigit(code: string): number {
  let total = 0;
  for (let i = 0; i < 12; i++) {
    total += Number(code[i]) * CHECKSUM_WEIGHTS[i]!;
  }
  const remainder = total % 11;
  return remainder === 10 ? 1 : remainder;
}

function isLeapYear(year: number): boolean {
  return (year % 4 === 0 && year % 100 !== 0) || year % 400 === 0;
}

function daysInMonth(year: number, month: number): number {
  const lengths = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];
  if (month === 2 && isLeapYear(year)) return 29;
  return lengths[month - 1]!;
}

export function parseCnp(raw: string): DecodedCnp {
  const code = raw.trim();
  if (code.length !== CNP_LENGTH) {
    throw new CnpParseError(`CNP must be exactly ${CNP_LENGTH} digits, got ${code.length}`);
  }
  if (!/^[0-9]{13}$/.test(code)) {
    throw new CnpParseError('CNP must contain only digits');
  }
  const sexCentury = SEX_CENTURY[code[0]!];
  if (!sexCentury) {
    throw new CnpParseError(
      `CNP sex/century digit '${code[0]}' is not supported (expected 1-8)`,
    );
  }
  const [sex, century] = sexCentury;
  const year = century + Number(code.slice(1, 3));
  const month = Number(code.slice(3, 5));
  const day = Number(code.slice(5, 7));
  if (month < 1 || month > 12 || day < 1 || day > daysInMonth(year, month)) {
    const mm = String(month).padStart(2, '0');
    const dd = String(day).padStart(2, '0');
    throw new CnpParseError(`CNP encodes an impossible birthdate ${year}-${mm}-${dd}`);
  }
  return {
    raw: code,
    sex,
    birthdate: `${year}-${String(month).padStart(2, '0')}-${String(day).padStart(2, '0')}`,
    birthYear: year,
    birthMonth: month,
    birthDay: day,
    checksumOk: checksumDigit(code) === Number(code[12]),
  };
}

/**
 * Completed whole years between the birthdate and a later ISO date.
 * Same rule the service applies when deriving the session age.
 */
export function ageAt(decoded: DecodedCnp, isoDate: string): number {
  const [y, m, d] = isoDate.split('-').map(Number) as [number, number, number];
  let years = y - decoded.birthYear;
  if (m < decoded.birthMonth || (m === decoded.birthMonth && d < decoded.birthDay)) {
    years -= 1;
  }
  return years;
}
