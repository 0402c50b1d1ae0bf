"""Registry and append-only session log: persistence, roundtrips, flags."""

import datetime as dt
import io
import logging
import random
import threading

import pytest

from anthroscreen import (
    ConsistencyError,
    DomainError,
    Environment,
    RegistryStore,
    SessionCsvError,
    Sex,
    SkinfoldSet,
    Subject,
    UnknownSubjectError,
    age_at,
)

from conftest import (
    WORKED_CNP,
    WORKED_DATE,
    WORKED_FOLDS,
    make_cnp,
    random_birthdate,
    random_folds,
)


@pytest.fixture
def store(tmp_path):
    with RegistryStore(tmp_path / "screen.csv") as s:
        yield s


@pytest.fixture
def worked_subject(store):
    subject = Subject.from_cnp(WORKED_CNP, environment=Environment.URBAN)
    store.register_subject(subject)
    return subject


def record_worked(store, date=WORKED_DATE, weight=73.0):
    return store.record_session(
        WORKED_CNP,
        session_date=date,
        height_m=1.70,
        weight_kg=weight,
        folds=WORKED_FOLDS,
    )


class TestRegister:
    def test_register_worked_subject(self, store, worked_subject):
        stored = store.subject(WORKED_CNP)
        assert stored.sex is Sex.MALE
        assert stored.birthdate == dt.date(1990, 4, 10)
        assert stored.environment is Environment.URBAN

    def test_idempotent(self, store, worked_subject):
        store.register_subject(worked_subject)
        assert len(store.subjects()) == 1

    def test_merge_fills_missing_fields(self, store):
        store.register_subject(Subject.from_cnp(WORKED_CNP, name="A. Pop"))
        store.register_subject(
            Subject.from_cnp(WORKED_CNP, environment=Environment.URBAN)
        )
        merged = store.subject(WORKED_CNP)
        assert merged.name == "A. Pop"
        assert merged.environment is Environment.URBAN

    def test_contradictory_sex_rejected(self, store, worked_subject):
        with pytest.raises(ConsistencyError):
            Subject.from_cnp(WORKED_CNP, sex=Sex.FEMALE)

    def test_contradictory_name_rejected(self, store):
        store.register_subject(Subject.from_cnp(WORKED_CNP, name="A. Pop"))
        with pytest.raises(ConsistencyError):
            store.register_subject(Subject.from_cnp(WORKED_CNP, name="B. Pop"))

    def test_unknown_subject_errors(self, store):
        with pytest.raises(UnknownSubjectError):
            store.subject("2900410354722")
        with pytest.raises(UnknownSubjectError):
            store.get_history("2900410354722")


class TestRecordSession:
    def test_worked_example_stored(self, store, worked_subject):
        record = record_worked(store)
        ev = record.evaluation
        assert record.age == 17
        assert f"{ev.bmi:.2f}" == "25.26"
        assert ev.pat_supported
        history = store.get_history(WORKED_CNP)
        assert history == [record]

    def test_duplicate_rows_kept(self, store, worked_subject):
        first = record_worked(store)
        second = record_worked(store)
        history = store.get_history(WORKED_CNP)
        assert len(history) == 2
        assert history[0] == history[1] == first == second

    def test_session_before_birth_rejected(self, store, worked_subject):
        with pytest.raises(DomainError) as exc:
            record_worked(store, date=dt.date(1989, 1, 1))
        assert exc.value.field == "date"

    def test_age_comes_from_cnp(self, store, worked_subject, caplog):
        with caplog.at_level(logging.WARNING):
            record = store.record_session(
                WORKED_CNP,
                session_date=WORKED_DATE,
                height_m=1.70,
                weight_kg=73.0,
                folds=WORKED_FOLDS,
                reported_age=16,
            )
        assert record.age == 17
        assert any("typed age" in message for message in caplog.messages)

    def test_fresh_subject_empty_history(self, store, worked_subject):
        assert store.get_history(WORKED_CNP) == []

    def test_randomized_appends_preserve_order(self, store, worked_subject):
        rng = random.Random(20260819)
        dates = []
        for i in range(25):
            date = WORKED_DATE + dt.timedelta(days=i)
            store.record_session(
                WORKED_CNP,
                session_date=date,
                height_m=round(rng.uniform(1.4, 1.9), 2),
                weight_kg=round(rng.uniform(40.0, 90.0), 1),
                folds=random_folds(rng),
            )
            dates.append(date)
        history = store.get_history(WORKED_CNP)
        assert [r.session_date for r in history] == dates

    def test_file_is_append_only(self, store, worked_subject):
        record_worked(store)
        before = store.path.read_bytes()
        record_worked(store, date=WORKED_DATE + dt.timedelta(days=1))
        after = store.path.read_bytes()
        assert after.startswith(before)
        assert len(after) > len(before)


class TestPersistence:
    def test_close_and_reopen(self, tmp_path):
        path = tmp_path / "screen.csv"
        with RegistryStore(path) as store:
            store.register_subject(
                Subject.from_cnp(WORKED_CNP, environment=Environment.URBAN)
            )
            record_worked(store)
            record_worked(store, date=WORKED_DATE + dt.timedelta(days=30), weight=74.5)
            expected = store.get_history(WORKED_CNP)
        with RegistryStore(path) as reopened:
            assert reopened.get_history(WORKED_CNP) == expected
            assert reopened.subject(WORKED_CNP).environment is Environment.URBAN

    def test_export_import_roundtrip(self, tmp_path, store, worked_subject):
        record_worked(store)
        record_worked(store)
        sink = io.StringIO()
        assert store.export_csv(sink) == 2

        with RegistryStore(tmp_path / "other.csv") as fresh:
            assert fresh.import_csv(io.StringIO(sink.getvalue())) == 2
            again = io.StringIO()
            fresh.export_csv(again)
            assert again.getvalue() == sink.getvalue()
            # unknown subjects are registered from the identifier alone
            assert fresh.subject(WORKED_CNP).sex is Sex.MALE
            assert fresh.subject(WORKED_CNP).environment is None

    def test_import_rejects_tampered_derived_value(self, tmp_path, store, worked_subject):
        record_worked(store)
        sink = io.StringIO()
        store.export_csv(sink)
        tampered = sink.getvalue().replace("25.26", "99.99")
        with RegistryStore(tmp_path / "other.csv") as fresh:
            with pytest.raises(SessionCsvError) as exc:
                fresh.import_csv(io.StringIO(tampered))
            assert exc.value.line == 2
            # a failed import leaves nothing behind
            assert len(fresh.subjects()) == 0

    def test_import_rejects_malformed_line(self, tmp_path):
        text = (
            "cnp,date,age,height_m,weight_kg,chest_mm,midaxillary_mm,triceps_mm,"
            "subscapular_mm,abdomen_mm,suprailiac_mm,thigh_mm,bmi,bd,pat_percent\n"
            "not,enough,fields\n"
        )
        with RegistryStore(tmp_path / "x.csv") as fresh:
            with pytest.raises(SessionCsvError) as exc:
                fresh.import_csv(io.StringIO(text))
            assert exc.value.line == 2

    def test_import_rejects_bad_header(self, tmp_path):
        with RegistryStore(tmp_path / "x.csv") as fresh:
            with pytest.raises(SessionCsvError) as exc:
                fresh.import_csv(io.StringIO("a,b,c\n"))
            assert exc.value.line == 1

    def test_reopen_rejects_tampered_file(self, tmp_path):
        path = tmp_path / "screen.csv"
        with RegistryStore(path) as store:
            store.register_subject(Subject.from_cnp(WORKED_CNP))
            record_worked(store)
        text = path.read_text().replace("25.26", "30.00")
        path.write_text(text)
        with pytest.raises(SessionCsvError):
            RegistryStore(path)


class TestFlags:
    def test_worked_subject_flagged(self, store, worked_subject):
        record_worked(store)
        flagged = store.flag_list()
        assert len(flagged) == 1
        subject, record = flagged[0]
        assert subject.cnp.raw == WORKED_CNP
        assert record.evaluation.bmi_class.overweight

    def test_empty_store(self, store):
        assert store.flag_list() == []

    def test_latest_session_governs(self, store, worked_subject):
        # BMI 26.0 first, then 22.0: the newer normal reading clears the flag.
        record_worked(store, weight=75.14)
        record_worked(store, date=WORKED_DATE + dt.timedelta(days=10), weight=63.58)
        assert store.flag_list() == []

    def test_mixed_cohort(self, store, worked_subject):
        rng = random.Random(7)
        other_cnp = make_cnp(rng, Sex.FEMALE, dt.date(1991, 6, 15))
        store.register_subject(Subject.from_cnp(other_cnp))
        record_worked(store)  # BMI 25.26, flagged
        store.record_session(
            other_cnp,
            session_date=WORKED_DATE,
            height_m=1.60,
            weight_kg=51.2,  # BMI 20.0
            folds=random_folds(rng),
        )
        flagged = store.flag_list()
        assert [s.cnp.raw for s, _ in flagged] == [WORKED_CNP]

    def test_sorted_by_bmi_descending(self, store):
        rng = random.Random(11)
        weights = [80.0, 95.0, 87.5]
        cnps = []
        for i, weight in enumerate(weights):
            cnp = make_cnp(rng, Sex.MALE, dt.date(1990, 1, 10 + i))
            store.register_subject(Subject.from_cnp(cnp))
            store.record_session(
                cnp,
                session_date=WORKED_DATE,
                height_m=1.70,
                weight_kg=weight,
                folds=random_folds(rng),
            )
            cnps.append(cnp)
        flagged = store.flag_list()
        bmis = [r.evaluation.bmi for _, r in flagged]
        assert bmis == sorted(bmis, reverse=True)
        assert len(flagged) == 3


class TestConcurrency:
    def test_parallel_appends_lose_nothing(self, store, worked_subject):
        errors = []

        def work(offset: int):
            try:
                for i in range(10):
                    record_worked(
                        store, date=WORKED_DATE + dt.timedelta(days=offset * 10 + i)
                    )
            except Exception as exc:  # pragma: no cover
                errors.append(exc)

        threads = [threading.Thread(target=work, args=(k,)) for k in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert errors == []
        assert len(store.get_history(WORKED_CNP)) == 40


class TestAgeAt:
    def test_birthday_not_yet_reached(self):
        assert age_at(dt.date(1990, 4, 10), dt.date(2007, 4, 9)) == 16

    def test_birthday_reached(self):
        assert age_at(dt.date(1990, 4, 10), dt.date(2007, 4, 10)) == 17

    def test_leap_birthday(self):
        assert age_at(dt.date(2000, 2, 29), dt.date(2009, 2, 28)) == 8
        assert age_at(dt.date(2000, 2, 29), dt.date(2009, 3, 1)) == 9
