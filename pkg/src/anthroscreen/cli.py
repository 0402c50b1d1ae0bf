"""Operator-facing command line: record sessions, browse history, triage flags.

``record`` reproduces the console workflow (prompted entry in the classic
order, boxed evaluation report); every prompt doubles as a flag so the
whole flow is scriptable. Prompt and report labels ship in English and
Romanian (``--lang``).

Exit codes: 0 success, 1 validation error, 2 storage/IO error.
"""

from __future__ import annotations

import argparse
import datetime as dt
import os
import sys
from typing import Optional

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
from .reference import (
    Environment,
    ReferenceTable,
    TableError,
    WeightBand,
    load_reference_file,
    load_seed_table,
    lookup,
    weight_band,
)
from .store import (
    ConsistencyError,
    RegistryStore,
    SessionRecord,
    StoreError,
    Subject,
    UnknownSubjectError,
)

STORE_ENV_VAR = "ANTHROSCREEN_STORE"
DEFAULT_STORE = "./screening.csv"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_STORAGE = 2

LABELS = {
    "en": {
        "prompt_cnp": "Subject CNP: ",
        "prompt_age": "Age (years): ",
        "prompt_height": "Height (m): ",
        "prompt_weight": "Weight (kg): ",
        "prompt_sex": "Sex (M/F): ",
        "prompt_folds": "Skinfold measurements (mm):",
        "fold_prompts": {
            "chest": "-chest: ",
            "midaxillary": "-midaxillary: ",
            "triceps": "-triceps: ",
            "subscapular": "-subscapular: ",
            "abdomen": "-abdomen: ",
            "suprailiac": "-suprailiac: ",
            "thigh": "-thigh: ",
        },
        "report_subject": "Subject",
        "report_age": "Age: {age} years",
        "report_height": "Height: {height} m",
        "report_weight": "Weight: {weight} kg",
        "report_sex": "Sex: {sex}",
        "report_folds": "Skinfolds (mm):",
        "fold_names": {site: site for site in SKINFOLD_SITES},
        "report_bmi": "Body mass index = {bmi}",
        "report_bd": "Body density = {bd}",
        "report_pat": "Adipose tissue = {pat}%",
        "report_bd_na": "Body density = n/a",
        "report_pat_na": "Adipose tissue = n/a (age outside 8-18)",
        "report_class": "Classification: {label}",
        "report_band": "Weight band: {band}",
        "band_unavailable": "band unavailable",
        "no_flags": "no flagged subjects",
    },
    "ro": {
        "prompt_cnp": "Introduceti CNP subiectului: ",
        "prompt_age": "Introduceti varsta subiectului: ",
        "prompt_height": "Introduceti talia subiectului: ",
        "prompt_weight": "Introduceti greutatea subiectului: ",
        "prompt_sex": "Introduceti sexul subiectului (F/M): ",
        "prompt_folds": "Introduceti dimensiunile pliurilor cutanate:",
        "fold_prompts": {
            "chest": "-torace: ",
            "midaxillary": "-linia axilara mijlocie: ",
            "triceps": "-triceps: ",
            "subscapular": "-subcapular: ",
            "abdomen": "-abdomen: ",
            "suprailiac": "-suprailiac: ",
            "thigh": "-coapsa: ",
        },
        "report_subject": "Subiect",
        "report_age": "Varsta: {age} ani",
        "report_height": "Talie: {height} m",
        "report_weight": "Greutate: {weight} kg",
        "report_sex": "Sex: {sex}",
        "report_folds": "Pliuri subcutanate (mm):",
        "fold_names": {
            "chest": "torace",
            "midaxillary": "axilara mijlocie",
            "triceps": "triceps",
            "subscapular": "subcapular",
            "abdomen": "abdomen",
            "suprailiac": "suprailiac",
            "thigh": "coapsa",
        },
        "report_bmi": "Indicele de masa corporala={bmi}",
        "report_bd": "Densitatea corporala={bd}",
        "report_pat": "% Tesut adipos={pat}%",
        "report_bd_na": "Densitatea corporala=n/a",
        "report_pat_na": "% Tesut adipos=n/a (varsta in afara 8-18)",
        "report_class": "Clasificare: {label}",
        "report_band": "Banda de greutate: {band}",
        "band_unavailable": "banda indisponibila",
        "no_flags": "niciun subiect semnalat",
    },
}

BAND_LABELS = {
    WeightBand.VERY_LOW: "Very low",
    WeightBand.LOW: "Low",
    WeightBand.NORMAL: "Normal",
    WeightBand.HIGH: "High",
    WeightBand.VERY_HIGH: "Very high",
}

HISTORY_COLUMNS = {
    "en": ("date", "age", "height", "weight", "chest", "midax", "tricep",
           "subscap", "abdom", "suprail", "thigh", "bmi", "bd", "pat"),
    "ro": ("data", "A", "Inal", "Gre", "P.Tor", "P.LAM", "P.Tri",
           "P.Sub", "P.Abd", "P.Sup", "P.Coa", "IMC", "DC", "Pr"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anthroscreen",
        description="Juvenile body-composition screening over a longitudinal record store.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--store",
        default=None,
        help=f"session log path (default: ${STORE_ENV_VAR} or {DEFAULT_STORE})",
    )
    parser.add_argument(
        "--reference",
        default=None,
        help="reference-table CSV path (default: packaged seed table)",
    )
    parser.add_argument(
        "--env",
        choices=["urban", "rural"],
        default=None,
        help="subject environment used at first registration",
    )
    parser.add_argument("--lang", choices=["en", "ro"], default="en", help="prompt/report language")

    commands = parser.add_subparsers(dest="command", required=True)

    record = commands.add_parser("record", help="enter one measurement session and print the report")
    record.add_argument("--cnp", help="subject personal numeric code (13 digits)")
    record.add_argument("--name", help="subject name (stored at first registration)")
    record.add_argument("--date", help="session date YYYY-MM-DD (default: today)")
    record.add_argument("--age", type=int, help="operator-typed age; checked against the CNP")
    record.add_argument("--height", type=float, help="standing height in meters")
    record.add_argument("--weight", type=float, help="weight in kilograms")
    record.add_argument("--sex", help="M or F; checked against the CNP")
    for site in SKINFOLD_SITES:
        record.add_argument(f"--{site}", type=float, help=f"{site} skinfold in mm")

    history = commands.add_parser("history", help="print all sessions for one subject")
    history.add_argument("cnp")

    commands.add_parser("flags", help="list subjects whose latest session is overweight or obese")

    imp = commands.add_parser("import", help="append sessions from a CSV file")
    imp.add_argument("path")

    exp = commands.add_parser("export", help="write all sessions to a CSV file")
    exp.add_argument("path")

    serve = commands.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--bind", default="127.0.0.1:8080", help="host:port to listen on")
    serve.add_argument("--ui-origin", default=None, help="origin allowed for CORS")
    serve.add_argument("--serve-ui", default=None, metavar="DIR",
                       help="also serve a built UI directory at /ui")

    return parser


def _store_path(args) -> str:
    return args.store or os.environ.get(STORE_ENV_VAR) or DEFAULT_STORE


def _load_reference(args) -> ReferenceTable:
    if args.reference:
        return load_reference_file(args.reference)
    return load_seed_table()


def _prompt(label: str) -> str:
    sys.stdout.write(label)
    sys.stdout.flush()
    line = sys.stdin.readline()
    if not line:
        raise DomainError("input", "unexpected end of input")
    return line.strip()


def _ask(value, label: str, parse, field: str):
    text = _prompt(label) if value is None else value
    if isinstance(text, str):
        try:
            return parse(text)
        except DomainError:
            raise
        except ValueError:
            raise DomainError(field, f"cannot interpret {field} value {text!r}") from None
    return text


def _format_weight(weight: float) -> str:
    return f"{weight:g}"


def _boxed(lines: list[str]) -> str:
    width = max(len(line) for line in lines)
    out = ["*" * (width + 4)]
    for line in lines:
        out.append("* " + line.ljust(width) + " *")
    out.append("*" * (width + 4))
    return "\n".join(out)


def render_report(
    record: SessionRecord,
    subject: Subject,
    band: Optional[WeightBand],
    lang: str = "en",
) -> str:
    """The boxed per-session evaluation report."""
    L = LABELS[lang]
    ev = record.evaluation
    gutter = 26

    lines = [f"{L['report_subject']}: {record.cnp}"]
    lines.append(
        L["report_age"].format(age=record.age).ljust(gutter)
        + L["report_height"].format(height=f"{record.height_m:.2f}")
    )
    lines.append(
        L["report_weight"].format(weight=_format_weight(record.weight_kg)).ljust(gutter)
        + L["report_sex"].format(sex=subject.sex.value)
    )
    lines.append(L["report_folds"])
    names = L["fold_names"]
    fold_cells = [
        f"{names[site]}: {getattr(record.folds, site):.2f}" for site in SKINFOLD_SITES
    ]
    for i in range(0, len(fold_cells), 2):
        pair = fold_cells[i : i + 2]
        if len(pair) == 2:
            lines.append("  " + pair[0].ljust(gutter - 2) + pair[1])
        else:
            lines.append("  " + pair[0])
    lines.append(L["report_bmi"].format(bmi=format_bmi(ev.bmi)))
    if ev.pat_supported:
        lines.append(L["report_bd"].format(bd=format_bd(ev.body_density)))
        lines.append(L["report_pat"].format(pat=format_pat_percent(ev.pat)))
    else:
        lines.append(L["report_bd_na"])
        lines.append(L["report_pat_na"])
    lines.append(L["report_class"].format(label=ev.bmi_class.additional.label))
    band_text = BAND_LABELS[band] if band is not None else L["band_unavailable"]
    lines.append(L["report_band"].format(band=band_text))
    return _boxed(lines)


def _band_for(record: SessionRecord, subject: Subject, table: ReferenceTable):
    if subject.environment is None:
        return None
    entry = lookup(table, record.age, subject.sex, subject.environment)
    if entry is None:
        return None
    return weight_band(record.weight_kg, entry)


def cmd_record(args) -> int:
    L = LABELS[args.lang]
    prompted = args.cnp is None or args.age is None or args.height is None \
        or args.weight is None or args.sex is None \
        or any(getattr(args, site) is None for site in SKINFOLD_SITES)
    cnp_raw = _ask(args.cnp, L["prompt_cnp"], str, "cnp")
    cnp = parse_cnp(cnp_raw)
    typed_age = _ask(args.age, L["prompt_age"], int, "age")
    height = _ask(args.height, L["prompt_height"], float, "height")
    weight = _ask(args.weight, L["prompt_weight"], float, "weight")
    typed_sex = _ask(args.sex, L["prompt_sex"], parse_sex, "sex")

    fold_values = {}
    missing = [site for site in SKINFOLD_SITES if getattr(args, site) is None]
    if missing:
        print(L["prompt_folds"])
    for site in SKINFOLD_SITES:
        fold_values[site] = _ask(
            getattr(args, site), L["fold_prompts"][site], float, site
        )
    folds = SkinfoldSet(**fold_values)

    session_date = dt.date.fromisoformat(args.date) if args.date else dt.date.today()
    environment = Environment(args.env) if args.env else None

    store = RegistryStore(_store_path(args))
    subject = store.register_subject(
        Subject.from_cnp(cnp, name=args.name, environment=environment, sex=typed_sex)
    )
    if not cnp.checksum_ok:
        print(f"warning: CNP {cnp.raw} fails the control-digit check", file=sys.stderr)
    record = store.record_session(
        cnp.raw, session_date, height, weight, folds, reported_age=typed_age
    )
    if typed_age != record.age:
        print(
            f"warning: typed age {typed_age} disagrees with CNP-derived age"
            f" {record.age}; recorded {record.age}",
            file=sys.stderr,
        )
    band = _band_for(record, subject, _load_reference(args))
    if prompted:
        print()
    print(render_report(record, subject, band, args.lang))
    return EXIT_OK


def _history_row(record: SessionRecord) -> list[str]:
    ev = record.evaluation
    return [
        record.session_date.isoformat(),
        str(record.age),
        f"{record.height_m:.2f}",
        _format_weight(record.weight_kg),
        *(f"{v:.2f}" for v in record.folds.values()),
        format_bmi(ev.bmi),
        format_bd(ev.body_density) if ev.pat_supported else "-",
        format_pat_percent(ev.pat) if ev.pat_supported else "-",
    ]


def cmd_history(args) -> int:
    L = LABELS[args.lang]
    store = RegistryStore(_store_path(args))
    records = store.get_history(args.cnp)
    print(f"{L['report_subject']}: {args.cnp}")
    header = HISTORY_COLUMNS[args.lang]
    rows = [_history_row(record) for record in records]
    widths = [
        max(len(header[i]), *(len(row[i]) for row in rows)) if rows else len(header[i])
        for i in range(len(header))
    ]
    print(" ".join(name.ljust(widths[i]) for i, name in enumerate(header)).rstrip())
    print("=" * (sum(widths) + len(widths) - 1))
    for row in rows:
        print(" ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return EXIT_OK


def cmd_flags(args) -> int:
    L = LABELS[args.lang]
    store = RegistryStore(_store_path(args))
    table = _load_reference(args)
    flagged = store.flag_list()
    if not flagged:
        print(L["no_flags"])
        return EXIT_OK
    header = ("cnp", "name", "bmi", "class", "band")
    rows = []
    for subject, record in flagged:
        band = _band_for(record, subject, table)
        rows.append([
            record.cnp,
            subject.name or "-",
            format_bmi(record.evaluation.bmi),
            record.evaluation.bmi_class.principal.label,
            BAND_LABELS[band] if band is not None else L["band_unavailable"],
        ])
    widths = [
        max(len(header[i]), *(len(row[i]) for row in rows)) for i in range(len(header))
    ]
    print(" ".join(name.ljust(widths[i]) for i, name in enumerate(header)).rstrip())
    for row in rows:
        print(" ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return EXIT_OK


def cmd_import(args) -> int:
    store = RegistryStore(_store_path(args))
    with open(args.path, "r", encoding="utf-8", newline="") as handle:
        count = store.import_csv(handle)
    print(f"imported {count} session(s) from {args.path}")
    return EXIT_OK


def cmd_export(args) -> int:
    store = RegistryStore(_store_path(args))
    with open(args.path, "w", encoding="utf-8", newline="") as handle:
        count = store.export_csv(handle)
    print(f"exported {count} session(s) to {args.path}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host, _, port_text = args.bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise DomainError("bind", f"--bind must be host:port, got {args.bind!r}")
    store = RegistryStore(_store_path(args))
    table = _load_reference(args)
    app = create_app(store, table, ui_origin=args.ui_origin, ui_dir=args.serve_ui)
    uvicorn.run(app, host=host, port=int(port_text))
    return EXIT_OK


COMMANDS = {
    "record": cmd_record,
    "history": cmd_history,
    "flags": cmd_flags,
    "import": cmd_import,
    "export": cmd_export,
    "serve": cmd_serve,
}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (DomainError, CnpError) as exc:
        field = getattr(exc, "field", None)
        prefix = f"{field}: " if field else ""
        print(f"error: {prefix}{exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConsistencyError, UnknownSubjectError, TableError, StoreError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"storage error: {exc}", file=sys.stderr)
        return EXIT_STORAGE


if __name__ == "__main__":
    sys.exit(main())
