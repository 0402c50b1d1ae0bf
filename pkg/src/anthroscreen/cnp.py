"""Romanian personal numeric code (CNP) parsing and validation.

A CNP is 13 digits: S YY MM DD JJ NNN C. The first digit encodes sex and
birth century, digits 2-7 the birthdate, and the last digit is a control
digit over the standard weight vector. The control check is recorded as a
flag rather than enforced: real-world registers contain codes that fail it,
and a screening tool has to accept the subject in front of the operator.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

from .core import Sex

CNP_LENGTH = 13
CHECKSUM_WEIGHTS = (2, 7, 9, 1, 4, 6, 3, 5, 8, 2, 7, 9)

# First digit -> (sex, birth century). Residents (7/8) carry no century in
# the code; the 1900s are assumed by convention. 9 (foreign citizens) does
# not encode sex and is rejected.
_SEX_CENTURY = {
    "1": (Sex.MALE, 1900),
    "2": (Sex.FEMALE, 1900),
    "3": (Sex.MALE, 1800),
    "4": (Sex.FEMALE, 1800),
    "5": (Sex.MALE, 2000),
    "6": (Sex.FEMALE, 2000),
    "7": (Sex.MALE, 1900),
    "8": (Sex.FEMALE, 1900),
}


class CnpError(ValueError):
    """The code cannot be decoded (wrong shape or impossible birthdate)."""

    field = "cnp"


@dataclass(frozen=True)
class Cnp:
    """A decoded personal numeric code."""

    raw: str
    sex: Sex
    birthdate: dt.date
    checksum_ok: bool

    def __str__(self) -> str:
        return self.raw


def checksum_digit(digits: str) -> int:
    """Control digit for the first 12 digits: weighted sum mod 11, 10 -> 1."""
    total = sum(int(c) * w for c, w in zip(digits[:12], CHECKSUM_WEIGHTS))
    remainder = total % 11
    return 1 if remainder == 10 else remainder


def parse_cnp(raw: str) -> Cnp:
    """Decode and validate a CNP.

    Wrong length, non-digit characters, an unsupported first digit and an
    impossible birthdate are hard errors; a failing control digit only
    clears ``checksum_ok``.
    """
    code = raw.strip()
    if len(code) != CNP_LENGTH:
        raise CnpError(f"CNP must be exactly {CNP_LENGTH} digits, got {len(code)}")
    if not code.isascii() or not code.isdigit():
        raise CnpError("CNP must contain only digits")
    try:
        sex, century = _SEX_CENTURY[code[0]]
    except KeyError:
        raise CnpError(
            f"CNP sex/century digit {code[0]!r} is not supported"
            " (expected 1-8)"
        ) from None
    year = century + int(code[1:3])
    month = int(code[3:5])
    day = int(code[5:7])
    try:
        birthdate = dt.date(year, month, day)
    except ValueError:
        raise CnpError(f"CNP encodes an impossible birthdate {year:04d}-{month:02d}-{day:02d}") from None
    return Cnp(
        raw=code,
        sex=sex,
        birthdate=birthdate,
        checksum_ok=checksum_digit(code) == int(code[12]),
    )
