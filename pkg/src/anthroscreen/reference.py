"""Growth-reference tables: mean/SD body weight per age, sex and environment.

Loads and validates the reference CSV (``age,sex,environment,mean_kg,sd_kg``),
answers exact-key lookups (no interpolation across ages), and bins a measured
weight into the five bands around the reference mean. The packaged seed file
ships the published 17-year-old urban boys row; deployments can load fuller
institute tables without code changes.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import IO, Iterable, Optional

from .core import Sex

REFERENCE_HEADER = ("age", "sex", "environment", "mean_kg", "sd_kg")


class Environment(Enum):
    URBAN = "urban"
    RURAL = "rural"


class TableError(ValueError):
    """A reference table row violates the table invariants."""


class TableParseError(TableError):
    """A reference CSV line cannot be parsed; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ReferenceEntry:
    """Reference mean and standard deviation of body weight for one cell."""

    age: int
    sex: Sex
    environment: Environment
    mean: float
    sd: float

    def __post_init__(self):
        if self.mean <= 0.0 or self.sd <= 0.0 or self.mean - 2.0 * self.sd <= 0.0:
            raise TableError(
                f"reference entry ({self.age},{self.sex.value},{self.environment.value})"
                f" needs mean > 0, sd > 0 and mean - 2*sd > 0,"
                f" got mean={self.mean:g} sd={self.sd:g}"
            )

    def thresholds(self) -> tuple[float, float, float, float]:
        """The four band cut values: M-2d, M-d, M+d, M+2d."""
        return (
            self.mean - 2.0 * self.sd,
            self.mean - self.sd,
            self.mean + self.sd,
            self.mean + 2.0 * self.sd,
        )


class WeightBand(Enum):
    VERY_LOW = "VeryLow"
    LOW = "Low"
    NORMAL = "Normal"
    HIGH = "High"
    VERY_HIGH = "VeryHigh"


Key = tuple[int, Sex, Environment]


class ReferenceTable:
    """Immutable mapping of (age, sex, environment) to a ReferenceEntry."""

    def __init__(self, entries: Iterable[ReferenceEntry] = ()):
        self._entries: dict[Key, ReferenceEntry] = {}
        for entry in entries:
            key = (entry.age, entry.sex, entry.environment)
            if key in self._entries:
                raise TableError(
                    f"duplicate reference entry for"
                    f" ({entry.age},{entry.sex.value},{entry.environment.value})"
                )
            self._entries[key] = entry

    def lookup(self, age: int, sex: Sex, environment: Environment) -> Optional[ReferenceEntry]:
        """Exact-key lookup; None when the cell is not in the table."""
        return self._entries.get((age, sex, environment))

    def entries(self) -> list[ReferenceEntry]:
        return list(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)


def lookup(
    table: ReferenceTable, age: int, sex: Sex, environment: Environment
) -> Optional[ReferenceEntry]:
    """Exact-key lookup on a table; absence is a value, not an error."""
    return table.lookup(age, sex, environment)


def _parse_row(line: int, row: list[str]) -> ReferenceEntry:
    if len(row) != len(REFERENCE_HEADER):
        raise TableParseError(line, f"expected {len(REFERENCE_HEADER)} fields, got {len(row)}")
    age_text, sex_text, env_text, mean_text, sd_text = (field.strip() for field in row)
    try:
        age = int(age_text)
    except ValueError:
        raise TableParseError(line, f"age must be an integer, got {age_text!r}") from None
    if age < 0:
        raise TableParseError(line, f"age must be non-negative, got {age}")
    try:
        sex = Sex(sex_text.upper())
    except ValueError:
        raise TableParseError(line, f"sex must be M or F, got {sex_text!r}") from None
    try:
        environment = Environment(env_text.lower())
    except ValueError:
        raise TableParseError(
            line, f"environment must be urban or rural, got {env_text!r}"
        ) from None
    try:
        mean = float(mean_text)
        sd = float(sd_text)
    except ValueError:
        raise TableParseError(
            line, f"mean_kg/sd_kg must be decimal numbers, got {mean_text!r}/{sd_text!r}"
        ) from None
    try:
        return ReferenceEntry(age=age, sex=sex, environment=environment, mean=mean, sd=sd)
    except TableError as exc:
        raise TableParseError(line, str(exc)) from None


def load_reference_table(source: IO[str]) -> ReferenceTable:
    """Parse and validate a reference CSV stream into a ReferenceTable.

    The header line is required and must match the published column set
    exactly. Raises TableParseError with the offending line number, or
    TableError for duplicate keys.
    """
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise TableParseError(1, "missing header line") from None
    if tuple(field.strip() for field in header) != REFERENCE_HEADER:
        raise TableParseError(
            reader.line_num, f"header must be {','.join(REFERENCE_HEADER)}"
        )
    entries = []
    for row in reader:
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        entries.append(_parse_row(reader.line_num, row))
    return ReferenceTable(entries)


def load_reference_file(path: str) -> ReferenceTable:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        return load_reference_table(handle)


def load_seed_table() -> ReferenceTable:
    """Load the reference table packaged with the library."""
    seed = resources.files(__package__).joinpath("data/reference.csv")
    with seed.open("r", encoding="utf-8", newline="") as handle:
        return load_reference_table(handle)


def dump_reference_table(table: ReferenceTable, sink: IO[str]) -> int:
    """Write a table back out in the reference CSV format; returns row count."""
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(REFERENCE_HEADER)
    entries = sorted(
        table.entries(), key=lambda e: (e.age, e.sex.value, e.environment.value)
    )
    for entry in entries:
        writer.writerow(
            [entry.age, entry.sex.value, entry.environment.value,
             f"{entry.mean:g}", f"{entry.sd:g}"]
        )
    return len(entries)


def weight_band(weight: float, entry: ReferenceEntry) -> WeightBand:
    """Bin a measured weight against the entry's M+-d / M+-2d thresholds.

    Normal is the closed interval [M-d, M+d]; Low and High take the
    half-open remainders, so exact threshold weights bin deterministically.
    """
    if weight <= 0.0:
        raise ValueError(f"weight must be positive, got {weight:g}")
    minus2, minus1, plus1, plus2 = entry.thresholds()
    if weight < minus2:
        return WeightBand.VERY_LOW
    if weight < minus1:
        return WeightBand.LOW
    if weight <= plus1:
        return WeightBand.NORMAL
    if weight <= plus2:
        return WeightBand.HIGH
    return WeightBand.VERY_HIGH
