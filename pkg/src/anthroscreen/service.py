"""JSON HTTP service over the registry store and reference table.

Every numeric the UI shows comes back both at full precision and as a
pre-rounded display string (``bmi_display``, ``bd_display``,
``pat_display``), so clients never reimplement rounding. All 4xx
responses carry a machine-readable error body: ``{code, message, field}``.
"""

from __future__ import annotations

import datetime as dt
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from . import __version__
from .cnp import CnpError, parse_cnp
from .core import (
    DomainError,
    Sex,
    SkinfoldSet,
    SKINFOLD_SITES,
    format_bd,
    format_bmi,
    format_pat_percent,
    parse_sex,
)
from .reference import Environment, ReferenceTable, weight_band
from .store import (
    ConsistencyError,
    RegistryStore,
    SessionRecord,
    Subject,
    UnknownSubjectError,
)


class SubjectIn(BaseModel):
    cnp: str
    name: Optional[str] = None
    sex: Optional[str] = None
    birthdate: Optional[dt.date] = None
    environment: Optional[str] = None


class SessionIn(BaseModel):
    date: dt.date
    age: Optional[int] = None
    height_m: float
    weight_kg: float
    chest_mm: float
    midaxillary_mm: float
    triceps_mm: float
    subscapular_mm: float
    abdomen_mm: float
    suprailiac_mm: float
    thigh_mm: float


def _api_error(status: int, code: str, message: str, field: Optional[str] = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "field": field},
    )


def _subject_json(subject: Subject) -> dict:
    return {
        "cnp": subject.cnp.raw,
        "name": subject.name,
        "sex": subject.sex.value,
        "birthdate": subject.birthdate.isoformat(),
        "environment": subject.environment.value if subject.environment else None,
        "checksum_ok": subject.cnp.checksum_ok,
    }


def _classification_json(record: SessionRecord) -> dict:
    cls = record.evaluation.bmi_class
    return {
        "principal": cls.principal.value,
        "additional": cls.additional.value,
        "principal_label": cls.principal.label,
        "additional_label": cls.additional.label,
        "underweight": cls.underweight,
        "overweight": cls.overweight,
        "obese": cls.obese,
    }


def _session_json(record: SessionRecord, band) -> dict:
    ev = record.evaluation
    payload = {
        "cnp": record.cnp,
        "date": record.session_date.isoformat(),
        "age": record.age,
        "height_m": record.height_m,
        "weight_kg": record.weight_kg,
        **{f"{site}_mm": getattr(record.folds, site) for site in SKINFOLD_SITES},
        "fold_sum_mm": ev.fold_sum,
        "bmi": ev.bmi,
        "bmi_display": format_bmi(ev.bmi),
        "pat_supported": ev.pat_supported,
        "bd": ev.body_density,
        "bd_display": format_bd(ev.body_density) if ev.pat_supported else None,
        "pat": ev.pat,
        "pat_percent": ev.pat * 100.0 if ev.pat_supported else None,
        "pat_display": format_pat_percent(ev.pat) if ev.pat_supported else None,
        "abm_kg": ev.abm,
        "classification": _classification_json(record),
        "weight_band": band.value if band is not None else None,
    }
    return payload


def create_app(
    store: RegistryStore,
    reference: ReferenceTable,
    ui_origin: Optional[str] = None,
    ui_dir: Optional[str] = None,
) -> FastAPI:
    """Build the service over one store and one reference table."""
    app = FastAPI(title="anthroscreen service", version=__version__)

    if ui_origin:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=[ui_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def _on_request_validation(request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        loc = [str(part) for part in first.get("loc", []) if part != "body"]
        return _api_error(
            400, "validation_error", first.get("msg", "invalid request body"),
            field=".".join(loc) or None,
        )

    @app.exception_handler(DomainError)
    async def _on_domain_error(request: Request, exc: DomainError):
        return _api_error(400, "domain_error", str(exc), field=exc.field)

    @app.exception_handler(CnpError)
    async def _on_cnp_error(request: Request, exc: CnpError):
        return _api_error(400, "cnp_error", str(exc), field="cnp")

    @app.exception_handler(UnknownSubjectError)
    async def _on_unknown_subject(request: Request, exc: UnknownSubjectError):
        return _api_error(404, "unknown_subject", str(exc), field="cnp")

    @app.exception_handler(ConsistencyError)
    async def _on_consistency(request: Request, exc: ConsistencyError):
        return _api_error(409, "consistency_conflict", str(exc))

    @app.exception_handler(OSError)
    async def _on_storage(request: Request, exc: OSError):
        return _api_error(500, "storage_error", str(exc))

    def _band_for(record: SessionRecord, subject: Subject):
        if subject.environment is None:
            return None
        entry = reference.lookup(record.age, subject.sex, subject.environment)
        if entry is None:
            return None
        return weight_band(record.weight_kg, entry)

    @app.get("/healthz", response_class=PlainTextResponse)
    def healthz() -> str:
        return "ok"

    @app.post("/subjects")
    def create_subject(body: SubjectIn):
        sex = parse_sex(body.sex) if body.sex is not None else None
        if body.environment is not None:
            try:
                environment = Environment(body.environment.lower())
            except ValueError:
                raise DomainError(
                    "environment",
                    f"environment must be urban or rural, got {body.environment!r}",
                ) from None
        else:
            environment = None
        subject = store.register_subject(
            Subject.from_cnp(
                body.cnp, name=body.name, environment=environment,
                sex=sex, birthdate=body.birthdate,
            )
        )
        payload = _subject_json(subject)
        payload["warnings"] = (
            [] if subject.cnp.checksum_ok else ["CNP fails the control-digit check"]
        )
        return payload

    @app.post("/subjects/{cnp}/sessions")
    def record_session(cnp: str, body: SessionIn):
        folds = SkinfoldSet(**{site: getattr(body, f"{site}_mm") for site in SKINFOLD_SITES})
        record = store.record_session(
            cnp, body.date, body.height_m, body.weight_kg, folds,
            reported_age=body.age,
        )
        subject = store.subject(cnp)
        payload = _session_json(record, _band_for(record, subject))
        warnings = []
        if body.age is not None and body.age != record.age:
            warnings.append(
                f"typed age {body.age} disagrees with CNP-derived age {record.age};"
                f" recorded {record.age}"
            )
        if not subject.cnp.checksum_ok:
            warnings.append("CNP fails the control-digit check")
        payload["warnings"] = warnings
        return payload

    @app.get("/subjects/{cnp}/history")
    def history(cnp: str, limit: Optional[int] = Query(default=None, ge=1)):
        subject = store.subject(cnp)
        records = store.get_history(cnp)
        if limit is not None:
            records = records[-limit:]
        return {
            "subject": _subject_json(subject),
            "sessions": [
                _session_json(record, _band_for(record, subject)) for record in records
            ],
        }

    @app.get("/subjects/{cnp}/latest")
    def latest(cnp: str):
        subject = store.subject(cnp)
        records = store.get_history(cnp)
        if not records:
            return _api_error(404, "no_sessions", f"no sessions recorded for {cnp}")
        return _session_json(records[-1], _band_for(records[-1], subject))

    @app.get("/flags")
    def flags(limit: Optional[int] = Query(default=None, ge=1)):
        flagged = store.flag_list()
        if limit is not None:
            flagged = flagged[:limit]
        out = []
        for subject, record in flagged:
            entry = _session_json(record, _band_for(record, subject))
            entry["name"] = subject.name
            entry["environment"] = (
                subject.environment.value if subject.environment else None
            )
            out.append(entry)
        return out

    @app.get("/reference")
    def reference_cell(age: int, sex: str, env: str):
        try:
            environment = Environment(env.lower())
        except ValueError:
            raise DomainError(
                "env", f"env must be urban or rural, got {env!r}"
            ) from None
        entry = reference.lookup(age, parse_sex(sex), environment)
        if entry is None:
            return _api_error(
                404, "reference_cell_missing",
                f"no reference entry for age={age} sex={sex} env={env}",
            )
        minus2, minus1, plus1, plus2 = entry.thresholds()
        return {
            "age": entry.age,
            "sex": entry.sex.value,
            "environment": entry.environment.value,
            "mean_kg": entry.mean,
            "sd_kg": entry.sd,
            "m_minus_2d": minus2,
            "m_minus_d": minus1,
            "m_plus_d": plus1,
            "m_plus_2d": plus2,
        }

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
