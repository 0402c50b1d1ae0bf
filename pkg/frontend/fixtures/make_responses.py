"""Regenerate tests/fixtures/*.json from the real service.

The frontend tests intercept service responses; these files ARE service
responses, captured verbatim, so the interception stays honest. Run from
the frontend directory with the Python package installed:

    python fixtures/make_responses.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from anthroscreen.reference import load_seed_table
from anthroscreen.service import create_app
from anthroscreen.store import RegistryStore

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

WORKED_CNP = "1900410354721"
AGE20_CNP = "1870510035216"
NORMAL_CNP = "1900410354728"
OBESE_CNP = "2900410354721"

WORKED_BODY = {
    "date": "2007-05-20",
    "age": 17,
    "height_m": 1.70,
    "weight_kg": 73.0,
    "chest_mm": 12.9,
    "midaxillary_mm": 15.2,
    "triceps_mm": 10.8,
    "subscapular_mm": 17.3,
    "abdomen_mm": 18.7,
    "suprailiac_mm": 15.6,
    "thigh_mm": 10.5,
}


def fresh_client(tmpdir: Path, name: str) -> TestClient:
    store = RegistryStore(tmpdir / f"{name}.csv")
    return TestClient(create_app(store, load_seed_table()))


def dump(name: str, payload) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def main() -> None:
    import tempfile

    with tempfile.TemporaryDirectory() as raw:
        tmpdir = Path(raw)

        # worked session, subject registered with environment so the
        # response carries a weight band
        client = fresh_client(tmpdir, "worked")
        client.post("/subjects", json={"cnp": WORKED_CNP, "environment": "urban"})
        response = client.post(f"/subjects/{WORKED_CNP}/sessions", json=WORKED_BODY)
        assert response.status_code == 200, response.text
        dump("worked_session", response.json())

        # same subject, two identical recordings -> flat trend
        client.post(f"/subjects/{WORKED_CNP}/sessions", json=WORKED_BODY)
        history = client.get(f"/subjects/{WORKED_CNP}/history")
        assert history.status_code == 200
        dump("history_flat", history.json())

        # subject outside the adipose regression span: BMI only
        client20 = fresh_client(tmpdir, "age20")
        client20.post("/subjects", json={"cnp": AGE20_CNP})
        body20 = dict(WORKED_BODY, age=20, height_m=1.80, weight_kg=82.0)
        response = client20.post(f"/subjects/{AGE20_CNP}/sessions", json=body20)
        assert response.status_code == 200, response.text
        assert response.json()["pat_supported"] is False
        dump("age20_session", response.json())

        # single session -> one-point trend
        single = fresh_client(tmpdir, "single")
        single.post("/subjects", json={"cnp": WORKED_CNP, "environment": "urban"})
        single.post(f"/subjects/{WORKED_CNP}/sessions", json=WORKED_BODY)
        dump("history_single", single.get(f"/subjects/{WORKED_CNP}/history").json())

        # five sessions with decreasing weight -> decreasing BMI series
        trend = fresh_client(tmpdir, "trend")
        trend.post("/subjects", json={"cnp": WORKED_CNP, "environment": "urban"})
        for i, weight in enumerate([80.0, 77.5, 75.0, 72.5, 70.0]):
            body = dict(
                WORKED_BODY,
                date=f"2007-0{5 + i}-20",
                weight_kg=weight,
            )
            response = trend.post(f"/subjects/{WORKED_CNP}/sessions", json=body)
            assert response.status_code == 200, response.text
        dump("history_decreasing", trend.get(f"/subjects/{WORKED_CNP}/history").json())

        # empty history: registered subject, no sessions yet
        empty = fresh_client(tmpdir, "empty")
        empty.post("/subjects", json={"cnp": WORKED_CNP})
        dump("history_empty", empty.get(f"/subjects/{WORKED_CNP}/history").json())

        # mixed cohort: one pre-obese, one obese, one normal-range subject;
        # /flags returns only the first two, highest BMI first
        cohort = fresh_client(tmpdir, "cohort")
        for cnp in (WORKED_CNP, NORMAL_CNP, OBESE_CNP):
            cohort.post("/subjects", json={"cnp": cnp, "environment": "urban"})
        cohort.post(f"/subjects/{WORKED_CNP}/sessions", json=WORKED_BODY)
        cohort.post(
            f"/subjects/{NORMAL_CNP}/sessions", json=dict(WORKED_BODY, weight_kg=60.0)
        )
        cohort.post(
            f"/subjects/{OBESE_CNP}/sessions",
            json=dict(WORKED_BODY, weight_kg=90.0, chest_mm=25.0, abdomen_mm=30.0),
        )
        flags = cohort.get("/flags")
        assert flags.status_code == 200
        payload = flags.json()
        assert [e["cnp"] for e in payload] == [OBESE_CNP, WORKED_CNP], payload
        dump("flags_mixed", payload)


if __name__ == "__main__":
    main()
