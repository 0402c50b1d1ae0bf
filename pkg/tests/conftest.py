"""Shared fixtures, randomized-input helpers, and the acceptance report hook."""

import datetime as dt
import random

import pytest

from anthroscreen import (
    BodyMetrics,
    Environment,
    ReferenceEntry,
    Sex,
    SkinfoldSet,
    checksum_digit,
)

# The canonical worked example used throughout the suite: a 17-year-old
# urban male measured on 2007-05-20.
WORKED_CNP = "1900410354721"
WORKED_DATE = dt.date(2007, 5, 20)
WORKED_HEIGHT = 1.70
WORKED_WEIGHT = 73.0
WORKED_AGE = 17
WORKED_FOLDS = SkinfoldSet(
    chest=12.9,
    midaxillary=15.2,
    triceps=10.8,
    subscapular=17.3,
    abdomen=18.7,
    suprailiac=15.6,
    thigh=10.5,
)


@pytest.fixture
def worked_metrics() -> BodyMetrics:
    return BodyMetrics(height=WORKED_HEIGHT, weight=WORKED_WEIGHT, age=WORKED_AGE)


@pytest.fixture
def worked_folds() -> SkinfoldSet:
    return WORKED_FOLDS


@pytest.fixture
def reference_entry() -> ReferenceEntry:
    return ReferenceEntry(
        age=17,
        sex=Sex.MALE,
        environment=Environment.URBAN,
        mean=63.473,
        sd=9.035,
    )


def make_cnp(rng: random.Random, sex: Sex, birthdate: dt.date) -> str:
    """Build a syntactically valid CNP with a correct control digit."""
    if birthdate.year >= 2000:
        first = "5" if sex is Sex.MALE else "6"
    elif birthdate.year >= 1900:
        first = "1" if sex is Sex.MALE else "2"
    else:
        first = "3" if sex is Sex.MALE else "4"
    body = first + birthdate.strftime("%y%m%d")
    body += "".join(str(rng.randrange(10)) for _ in range(5))
    return body + str(checksum_digit(body))


def random_birthdate(rng: random.Random, age: int, on: dt.date) -> dt.date:
    """A birthdate that makes the subject exactly `age` years old on `on`."""
    # Stay clear of Feb 29 and of the anniversary edge itself.
    month = rng.randrange(1, 13)
    day = rng.randrange(1, 29)
    year = on.year - age
    candidate = dt.date(year, month, day)
    if candidate > on.replace(year=year):
        year -= 1
        candidate = dt.date(year, month, day)
    return candidate


def random_folds(rng: random.Random) -> SkinfoldSet:
    """Skinfolds thick enough to keep the adipose estimate non-negative
    for every supported age and both sexes."""
    return SkinfoldSet(*(round(rng.uniform(10.0, 30.0), 1) for _ in range(7)))


def random_session_inputs(rng: random.Random) -> tuple[float, float, SkinfoldSet]:
    height = round(rng.uniform(1.00, 2.00), 2)
    weight = round(rng.uniform(20.0, 120.0), 1)
    return height, weight, random_folds(rng)


# ---------------------------------------------------------------------------
# Acceptance reporting: tests marked @pytest.mark.criterion("<name>") each
# contribute one PASS/FAIL line to the terminal summary.

_CRITERIA_ORDER = [
    "worked-example",
    "reference-bands",
    "classification-boundaries",
    "monotonicity-mass-conservation",
    "child-band-sex-equality",
    "persistence-roundtrip",
    "cli-golden-transcript",
    "service-contract",
]
_criteria_results: dict[str, bool] = {}


def pytest_collection_modifyitems(config, items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            _criteria_results.setdefault(marker.args[0], False)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args[0]


def pytest_runtest_logreport(report):
    name = getattr(report, "criterion", None)
    if name is None:
        return
    if report.when == "call":
        _criteria_results[name] = report.passed
    elif report.failed:
        _criteria_results[name] = False


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria_results:
        return
    terminalreporter.section("acceptance criteria")
    known = [n for n in _CRITERIA_ORDER if n in _criteria_results]
    extra = sorted(set(_criteria_results) - set(_CRITERIA_ORDER))
    for name in known + extra:
        verdict = "PASS" if _criteria_results[name] else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
