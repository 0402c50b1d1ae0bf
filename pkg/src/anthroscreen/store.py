"""Subject registry and append-only longitudinal session log.

The session log is a single human-auditable CSV file (the interchange
format and the on-disk format are the same thing); subject identity that
the session format cannot carry (name, environment) lives in a sibling
``<store>.subjects.csv`` file. Mutations are serialized through one
writer lock, readers see a consistent snapshot, and existing rows are
never rewritten.

Every stored evaluation is recomputed from its inputs on load and import;
a row whose derived columns disagree with recomputation beyond display
rounding is rejected rather than silently rewritten.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import logging
import os
import threading
from dataclasses import dataclass, replace
from pathlib import Path
from typing import IO, Optional

from .cnp import Cnp, CnpError, parse_cnp
from .core import (
    BodyMetrics,
    DomainError,
    EvaluationResult,
    Sex,
    SkinfoldSet,
    evaluate,
    format_bd,
    format_bmi,
    format_pat_percent,
)
from .reference import Environment

logger = logging.getLogger(__name__)

SESSION_HEADER = (
    "cnp",
    "date",
    "age",
    "height_m",
    "weight_kg",
    "chest_mm",
    "midaxillary_mm",
    "triceps_mm",
    "subscapular_mm",
    "abdomen_mm",
    "suprailiac_mm",
    "thigh_mm",
    "bmi",
    "bd",
    "pat_percent",
)

SUBJECTS_HEADER = ("cnp", "name", "sex", "birthdate", "environment")


class StoreError(Exception):
    """Base for registry/log failures."""


class UnknownSubjectError(StoreError):
    def __init__(self, cnp: str):
        super().__init__(f"no subject registered for CNP {cnp}")
        self.cnp = cnp


class ConsistencyError(StoreError):
    """Registration data contradicts what the CNP encodes or what is stored."""


class SessionCsvError(StoreError):
    """A session CSV row is malformed or fails recomputation; 1-based line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Subject:
    """One registered person; sex and birthdate always match the CNP."""

    cnp: Cnp
    sex: Sex
    birthdate: dt.date
    name: Optional[str] = None
    environment: Optional[Environment] = None

    def __post_init__(self):
        if self.sex != self.cnp.sex or self.birthdate != self.cnp.birthdate:
            raise ConsistencyError(
                f"subject fields (sex {self.sex.value}, born {self.birthdate})"
                f" contradict CNP {self.cnp.raw} (sex {self.cnp.sex.value},"
                f" born {self.cnp.birthdate})"
            )

    @classmethod
    def from_cnp(
        cls,
        cnp: Cnp | str,
        name: Optional[str] = None,
        environment: Optional[Environment] = None,
        sex: Optional[Sex] = None,
        birthdate: Optional[dt.date] = None,
    ) -> "Subject":
        """Build a subject from a CNP, deriving sex/birthdate.

        Explicitly supplied sex/birthdate are cross-checked against the
        code and rejected on mismatch.
        """
        if isinstance(cnp, str):
            cnp = parse_cnp(cnp)
        return cls(
            cnp=cnp,
            sex=sex if sex is not None else cnp.sex,
            birthdate=birthdate if birthdate is not None else cnp.birthdate,
            name=name,
            environment=environment,
        )


@dataclass(frozen=True)
class SessionRecord:
    """One dated evaluation with its inputs and stored derived values."""

    cnp: str
    session_date: dt.date
    age: int
    height_m: float
    weight_kg: float
    folds: SkinfoldSet
    evaluation: EvaluationResult


def age_at(birthdate: dt.date, on: dt.date) -> int:
    """Completed whole years between birthdate and a later date."""
    years = on.year - birthdate.year
    if (on.month, on.day) < (birthdate.month, birthdate.day):
        years -= 1
    return years


def _session_row(record: SessionRecord) -> list[str]:
    ev = record.evaluation
    return [
        record.cnp,
        record.session_date.isoformat(),
        str(record.age),
        repr(record.height_m),
        repr(record.weight_kg),
        *(repr(v) for v in record.folds.values()),
        format_bmi(ev.bmi),
        format_bd(ev.body_density) if ev.pat_supported else "",
        format_pat_percent(ev.pat) if ev.pat_supported else "",
    ]


def _parse_session_row(line: int, row: list[str]) -> SessionRecord:
    if len(row) != len(SESSION_HEADER):
        raise SessionCsvError(line, f"expected {len(SESSION_HEADER)} fields, got {len(row)}")
    (cnp_text, date_text, age_text, height_text, weight_text,
     *fold_texts, bmi_text, bd_text, pat_text) = (field.strip() for field in row)
    try:
        cnp = parse_cnp(cnp_text)
    except CnpError as exc:
        raise SessionCsvError(line, str(exc)) from None
    try:
        session_date = dt.date.fromisoformat(date_text)
    except ValueError:
        raise SessionCsvError(line, f"date must be ISO YYYY-MM-DD, got {date_text!r}") from None
    if session_date < cnp.birthdate:
        raise SessionCsvError(line, f"session date {date_text} predates birthdate {cnp.birthdate}")
    age = age_at(cnp.birthdate, session_date)
    try:
        reported_age = int(age_text)
    except ValueError:
        raise SessionCsvError(line, f"age must be an integer, got {age_text!r}") from None
    if reported_age != age:
        logger.warning(
            "line %d: age column %d disagrees with CNP-derived age %d; using %d",
            line, reported_age, age, age,
        )
    try:
        height = float(height_text)
        weight = float(weight_text)
        folds = SkinfoldSet(*(float(text) for text in fold_texts))
        metrics = BodyMetrics(height=height, weight=weight, age=age)
    except (ValueError, DomainError) as exc:
        raise SessionCsvError(line, str(exc)) from None
    try:
        evaluation = evaluate(metrics, folds, cnp.sex)
    except DomainError as exc:
        raise SessionCsvError(line, str(exc)) from None

    # Derived columns must agree with recomputation at display rounding.
    expect_bmi = format_bmi(evaluation.bmi)
    if bmi_text != expect_bmi:
        raise SessionCsvError(
            line, f"stored bmi {bmi_text!r} does not match recomputed {expect_bmi}"
        )
    if evaluation.pat_supported:
        expect_bd = format_bd(evaluation.body_density)
        expect_pat = format_pat_percent(evaluation.pat)
    else:
        expect_bd = ""
        expect_pat = ""
    if bd_text != expect_bd:
        raise SessionCsvError(
            line, f"stored bd {bd_text!r} does not match recomputed {expect_bd!r}"
        )
    if pat_text != expect_pat:
        raise SessionCsvError(
            line, f"stored pat_percent {pat_text!r} does not match recomputed {expect_pat!r}"
        )
    return SessionRecord(
        cnp=cnp.raw,
        session_date=session_date,
        age=age,
        height_m=height,
        weight_kg=weight,
        folds=folds,
        evaluation=evaluation,
    )


def _read_sessions(source: IO[str], *, start_line: int = 1) -> list[SessionRecord]:
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise SessionCsvError(start_line, "missing header line") from None
    if tuple(field.strip() for field in header) != SESSION_HEADER:
        raise SessionCsvError(reader.line_num, f"header must be {','.join(SESSION_HEADER)}")
    records = []
    for row in reader:
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        records.append(_parse_session_row(reader.line_num, row))
    return records


class RegistryStore:
    """CNP-keyed subject registry plus the append-only session log.

    Single-writer, multiple-reader: all mutations take the internal lock
    and are flushed to disk before returning; readers get snapshots.
    """

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self.subjects_path = self.path.with_name(self.path.stem + ".subjects" + self.path.suffix)
        self._lock = threading.RLock()
        self._subjects: dict[str, Subject] = {}
        self._sessions: dict[str, list[SessionRecord]] = {}
        self._order: list[SessionRecord] = []
        self._load()

    # -- loading ---------------------------------------------------------

    def _load(self) -> None:
        if self.subjects_path.exists():
            with open(self.subjects_path, "r", encoding="utf-8", newline="") as handle:
                self._load_subjects(handle)
        if self.path.exists():
            with open(self.path, "r", encoding="utf-8", newline="") as handle:
                for record in _read_sessions(handle):
                    self._remember(record)

    def _load_subjects(self, source: IO[str]) -> None:
        reader = csv.reader(source)
        try:
            header = next(reader)
        except StopIteration:
            return
        if tuple(field.strip() for field in header) != SUBJECTS_HEADER:
            raise SessionCsvError(reader.line_num, f"subjects header must be {','.join(SUBJECTS_HEADER)}")
        for row in reader:
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(SUBJECTS_HEADER):
                raise SessionCsvError(
                    reader.line_num, f"expected {len(SUBJECTS_HEADER)} fields, got {len(row)}"
                )
            cnp_text, name, sex_text, birth_text, env_text = (field.strip() for field in row)
            try:
                subject = Subject.from_cnp(
                    cnp_text,
                    name=name or None,
                    environment=Environment(env_text) if env_text else None,
                    sex=Sex(sex_text) if sex_text else None,
                    birthdate=dt.date.fromisoformat(birth_text) if birth_text else None,
                )
            except (CnpError, ValueError, ConsistencyError) as exc:
                raise SessionCsvError(reader.line_num, str(exc)) from exc
            if subject.cnp.raw in self._subjects:
                raise SessionCsvError(reader.line_num, f"duplicate subject {subject.cnp.raw}")
            self._subjects[subject.cnp.raw] = subject

    def _remember(self, record: SessionRecord) -> None:
        if record.cnp not in self._subjects:
            # Session rows are self-identifying; a subject absent from the
            # registry file is carried with name/environment unset.
            self._subjects[record.cnp] = Subject.from_cnp(record.cnp)
        self._sessions.setdefault(record.cnp, []).append(record)
        self._order.append(record)

    # -- persistence -----------------------------------------------------

    def _append_rows(self, records: list[SessionRecord]) -> None:
        fresh = not self.path.exists()
        with open(self.path, "a", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            if fresh:
                writer.writerow(SESSION_HEADER)
            for record in records:
                writer.writerow(_session_row(record))
            handle.flush()
            os.fsync(handle.fileno())

    def _write_subjects(self) -> None:
        tmp = self.subjects_path.with_suffix(self.subjects_path.suffix + ".tmp")
        with open(tmp, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(SUBJECTS_HEADER)
            for subject in self._subjects.values():
                writer.writerow([
                    subject.cnp.raw,
                    subject.name or "",
                    subject.sex.value,
                    subject.birthdate.isoformat(),
                    subject.environment.value if subject.environment else "",
                ])
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp, self.subjects_path)

    # -- registry --------------------------------------------------------

    def register_subject(self, subject: Subject) -> Subject:
        """Idempotent upsert by CNP.

        Unset name/environment may be filled by a later registration; a
        conflicting non-empty field raises ConsistencyError.
        """
        with self._lock:
            existing = self._subjects.get(subject.cnp.raw)
            if existing is None:
                merged = subject
            else:
                merged = self._merge(existing, subject)
                if merged == existing:
                    return existing
            self._subjects[subject.cnp.raw] = merged
            self._write_subjects()
            return merged

    @staticmethod
    def _merge(existing: Subject, incoming: Subject) -> Subject:
        def pick(field: str, old, new):
            if old is None:
                return new
            if new is not None and new != old:
                raise ConsistencyError(
                    f"subject {existing.cnp.raw} already registered with"
                    f" {field}={old!r}, re-registration says {new!r}"
                )
            return old

        return replace(
            existing,
            name=pick("name", existing.name, incoming.name),
            environment=pick("environment", existing.environment, incoming.environment),
        )

    def subject(self, cnp: str) -> Subject:
        with self._lock:
            try:
                return self._subjects[cnp]
            except KeyError:
                raise UnknownSubjectError(cnp) from None

    def subjects(self) -> list[Subject]:
        with self._lock:
            return list(self._subjects.values())

    # -- session log -----------------------------------------------------

    def record_session(
        self,
        cnp: str,
        session_date: dt.date,
        height_m: float,
        weight_kg: float,
        folds: SkinfoldSet,
        reported_age: Optional[int] = None,
    ) -> SessionRecord:
        """Evaluate and durably append one measurement session.

        The age is computed from the CNP birthdate and the session date;
        a different operator-typed age is only warned about.
        """
        with self._lock:
            subject = self.subject(cnp)
            if session_date < subject.birthdate:
                raise DomainError(
                    "date",
                    f"session date {session_date} predates birthdate {subject.birthdate}",
                )
            age = age_at(subject.birthdate, session_date)
            if reported_age is not None and reported_age != age:
                logger.warning(
                    "typed age %d disagrees with CNP-derived age %d for %s; recording %d",
                    reported_age, age, cnp, age,
                )
            metrics = BodyMetrics(height=height_m, weight=weight_kg, age=age)
            evaluation = evaluate(metrics, folds, subject.sex)
            record = SessionRecord(
                cnp=cnp,
                session_date=session_date,
                age=age,
                height_m=metrics.height,
                weight_kg=metrics.weight,
                folds=folds,
                evaluation=evaluation,
            )
            self._append_rows([record])
            self._sessions.setdefault(cnp, []).append(record)
            self._order.append(record)
            return record

    def get_history(self, cnp: str) -> list[SessionRecord]:
        """All sessions for one subject, in insertion order."""
        with self._lock:
            self.subject(cnp)
            return list(self._sessions.get(cnp, []))

    def flag_list(self) -> list[tuple[Subject, SessionRecord]]:
        """Subjects whose latest session is overweight or obese, BMI descending."""
        with self._lock:
            flagged = []
            for raw, sessions in self._sessions.items():
                if not sessions:
                    continue
                latest = sessions[-1]
                if latest.evaluation.bmi_class.overweight:
                    flagged.append((self._subjects[raw], latest))
        flagged.sort(key=lambda pair: pair[1].evaluation.bmi, reverse=True)
        return flagged

    # -- interchange -----------------------------------------------------

    def export_csv(self, sink: IO[str]) -> int:
        """Write every session in insertion order; returns the row count."""
        with self._lock:
            records = list(self._order)
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(SESSION_HEADER)
        for record in records:
            writer.writerow(_session_row(record))
        return len(records)

    def import_csv(self, source: IO[str]) -> int:
        """Validate and append sessions from a CSV stream; returns the count.

        The whole file is validated (including recomputation of the derived
        columns) before anything is appended, so a bad row imports nothing.
        Unknown subjects are registered from their CNP with name and
        environment unset.
        """
        records = _read_sessions(source)
        with self._lock:
            new_subjects = False
            for record in records:
                if record.cnp not in self._subjects:
                    self._subjects[record.cnp] = Subject.from_cnp(record.cnp)
                    new_subjects = True
            self._append_rows(records)
            for record in records:
                self._sessions.setdefault(record.cnp, []).append(record)
                self._order.append(record)
            if new_subjects:
                self._write_subjects()
        return len(records)

    # -- lifecycle -------------------------------------------------------

    def close(self) -> None:
        """No file handles are held open; provided for contract symmetry."""

    def __enter__(self) -> "RegistryStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def export_csv_string(store: RegistryStore) -> str:
    buffer = io.StringIO()
    store.export_csv(buffer)
    return buffer.getvalue()
