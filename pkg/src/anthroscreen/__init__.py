"""Juvenile body-composition screening suite.

Formula core (BMI, seven-site skinfold body density, adipose fraction,
active body mass, BMI classes), growth-reference weight bands, a
CNP-keyed longitudinal record store, a CLI and a JSON HTTP service.
"""

__version__ = "0.1.0"

from .cnp import Cnp, CnpError, checksum_digit, parse_cnp
from .core import (
    AdditionalClass,
    BmiClass,
    BodyMetrics,
    DomainError,
    EvaluationResult,
    PrincipalClass,
    Sex,
    SkinfoldSet,
    SKINFOLD_SITES,
    UnsupportedAgeError,
    active_body_mass,
    body_density,
    classify_bmi,
    compute_bmi,
    evaluate,
    format_bd,
    format_bmi,
    format_pat_percent,
    parse_sex,
    pat_fraction,
    round_half_up,
    sum_folds,
)
from .reference import (
    Environment,
    ReferenceEntry,
    ReferenceTable,
    TableError,
    TableParseError,
    WeightBand,
    dump_reference_table,
    load_reference_file,
    load_reference_table,
    load_seed_table,
    lookup,
    weight_band,
)
from .store import (
    ConsistencyError,
    RegistryStore,
    SessionRecord,
    SessionCsvError,
    StoreError,
    Subject,
    UnknownSubjectError,
    age_at,
)

__all__ = [
    "__version__",
    "AdditionalClass",
    "BmiClass",
    "BodyMetrics",
    "Cnp",
    "CnpError",
    "ConsistencyError",
    "DomainError",
    "Environment",
    "EvaluationResult",
    "PrincipalClass",
    "ReferenceEntry",
    "ReferenceTable",
    "RegistryStore",
    "SessionCsvError",
    "SessionRecord",
    "Sex",
    "SkinfoldSet",
    "SKINFOLD_SITES",
    "StoreError",
    "Subject",
    "TableError",
    "TableParseError",
    "UnknownSubjectError",
    "UnsupportedAgeError",
    "WeightBand",
    "active_body_mass",
    "age_at",
    "body_density",
    "checksum_digit",
    "classify_bmi",
    "compute_bmi",
    "dump_reference_table",
    "evaluate",
    "format_bd",
    "format_bmi",
    "format_pat_percent",
    "load_reference_file",
    "load_reference_table",
    "load_seed_table",
    "lookup",
    "parse_cnp",
    "parse_sex",
    "pat_fraction",
    "round_half_up",
    "sum_folds",
    "weight_band",
]
