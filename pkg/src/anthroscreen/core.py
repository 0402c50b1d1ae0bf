"""Body-composition formulas and BMI classification.

Pure, deterministic computation: BMI, seven-site skinfold body density,
adipose-tissue fraction, active (fat-free) body mass, and the WHO BMI
classes with their umbrella flags. No I/O, no state; every function is
safe to call from any thread.

Internal computation is full precision; rounding happens only in the
``format_*`` display helpers (round half up at the stated decimal place).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from typing import Optional

# Accepted input ranges. Height/weight/fold bounds are exclusive below
# (a zero measurement is an instrument error, not a value).
HEIGHT_RANGE_M = (0.5, 2.5)
WEIGHT_RANGE_KG = (5.0, 300.0)
AGE_RANGE_YEARS = (5, 25)
FOLD_MAX_MM = 100.0
FOLD_SUM_MAX_MM = 300.0

# The density and fat-fraction regressions are calibrated for this age span.
PAT_AGE_MIN = 8
PAT_AGE_MAX = 18


class DomainError(ValueError):
    """An input falls outside the domain an operation is defined on."""

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field


class UnsupportedAgeError(DomainError):
    """Adipose-tissue estimation is only calibrated for ages 8 to 18."""

    def __init__(self, age: int):
        super().__init__(
            "age",
            f"adipose-tissue estimation is unsupported for age {age}"
            f" (calibrated for {PAT_AGE_MIN}-{PAT_AGE_MAX})",
        )
        self.age = age


class Sex(Enum):
    MALE = "M"
    FEMALE = "F"


_SEX_ALIASES = {
    "m": Sex.MALE,
    "male": Sex.MALE,
    "masculin": Sex.MALE,
    "b": Sex.MALE,
    "baiat": Sex.MALE,
    "f": Sex.FEMALE,
    "female": Sex.FEMALE,
    "feminin": Sex.FEMALE,
    "fata": Sex.FEMALE,
}


def parse_sex(text: str) -> Sex:
    """Parse a sex marker, accepting M/F and their Romanian synonyms."""
    try:
        return _SEX_ALIASES[text.strip().lower()]
    except KeyError:
        raise DomainError("sex", f"cannot interpret sex marker {text!r} (use M or F)") from None


def _require_finite(field: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(field, f"{field} must be a finite number, got {value!r}")
    return value


# Caliper sites, in measurement order.
SKINFOLD_SITES = (
    "chest",
    "midaxillary",
    "triceps",
    "subscapular",
    "abdomen",
    "suprailiac",
    "thigh",
)


@dataclass(frozen=True)
class SkinfoldSet:
    """The seven caliper measurements, in millimeters."""

    chest: float
    midaxillary: float
    triceps: float
    subscapular: float
    abdomen: float
    suprailiac: float
    thigh: float

    def __post_init__(self):
        for site in SKINFOLD_SITES:
            value = _require_finite(site, getattr(self, site))
            if not 0.0 < value <= FOLD_MAX_MM:
                raise DomainError(
                    site, f"{site} fold must be in (0, {FOLD_MAX_MM:g}] mm, got {value:g}"
                )
            object.__setattr__(self, site, value)

    def values(self) -> tuple[float, ...]:
        return tuple(getattr(self, site) for site in SKINFOLD_SITES)


@dataclass(frozen=True)
class BodyMetrics:
    """Standing height (m), weight (kg) and age in whole years."""

    height: float
    weight: float
    age: int

    def __post_init__(self):
        height = _require_finite("height", self.height)
        if not HEIGHT_RANGE_M[0] < height < HEIGHT_RANGE_M[1]:
            raise DomainError("height", f"height must be in (0.5, 2.5) m, got {height:g}")
        weight = _require_finite("weight", self.weight)
        if not WEIGHT_RANGE_KG[0] < weight < WEIGHT_RANGE_KG[1]:
            raise DomainError("weight", f"weight must be in (5, 300) kg, got {weight:g}")
        if not isinstance(self.age, int) or isinstance(self.age, bool):
            raise DomainError("age", f"age must be a whole number of years, got {self.age!r}")
        if not AGE_RANGE_YEARS[0] <= self.age <= AGE_RANGE_YEARS[1]:
            raise DomainError("age", f"age must be in [5, 25] years, got {self.age}")
        object.__setattr__(self, "height", height)
        object.__setattr__(self, "weight", weight)


class PrincipalClass(Enum):
    SEVERE_THINNESS = "SevereThinness"
    MODERATE_THINNESS = "ModerateThinness"
    MILD_THINNESS = "MildThinness"
    NORMAL_RANGE = "NormalRange"
    PRE_OBESE = "PreObese"
    OBESE_I = "ObeseI"
    OBESE_II = "ObeseII"
    OBESE_III = "ObeseIII"

    @property
    def label(self) -> str:
        return _PRINCIPAL_LABELS[self]


class AdditionalClass(Enum):
    SEVERE_THINNESS = "SevereThinness"
    MODERATE_THINNESS = "ModerateThinness"
    MILD_THINNESS = "MildThinness"
    NORMAL_LOWER = "NormalLower"
    NORMAL_UPPER = "NormalUpper"
    PRE_OBESE_LOWER = "PreObeseLower"
    PRE_OBESE_UPPER = "PreObeseUpper"
    OBESE_I_LOWER = "ObeseILower"
    OBESE_I_UPPER = "ObeseIUpper"
    OBESE_II_LOWER = "ObeseIILower"
    OBESE_II_UPPER = "ObeseIIUpper"
    OBESE_III = "ObeseIII"

    @property
    def label(self) -> str:
        return _ADDITIONAL_LABELS[self]


_PRINCIPAL_LABELS = {
    PrincipalClass.SEVERE_THINNESS: "Severe thinness",
    PrincipalClass.MODERATE_THINNESS: "Moderate thinness",
    PrincipalClass.MILD_THINNESS: "Mild thinness",
    PrincipalClass.NORMAL_RANGE: "Normal range",
    PrincipalClass.PRE_OBESE: "Pre-obese",
    PrincipalClass.OBESE_I: "Obese class I",
    PrincipalClass.OBESE_II: "Obese class II",
    PrincipalClass.OBESE_III: "Obese class III",
}

_ADDITIONAL_LABELS = {
    AdditionalClass.SEVERE_THINNESS: "Severe thinness",
    AdditionalClass.MODERATE_THINNESS: "Moderate thinness",
    AdditionalClass.MILD_THINNESS: "Mild thinness",
    AdditionalClass.NORMAL_LOWER: "Normal range (lower)",
    AdditionalClass.NORMAL_UPPER: "Normal range (upper)",
    AdditionalClass.PRE_OBESE_LOWER: "Pre-obese (lower)",
    AdditionalClass.PRE_OBESE_UPPER: "Pre-obese (upper)",
    AdditionalClass.OBESE_I_LOWER: "Obese class I (lower)",
    AdditionalClass.OBESE_I_UPPER: "Obese class I (upper)",
    AdditionalClass.OBESE_II_LOWER: "Obese class II (lower)",
    AdditionalClass.OBESE_II_UPPER: "Obese class II (upper)",
    AdditionalClass.OBESE_III: "Obese class III",
}

# Half-open [lower, upper) intervals; a boundary value belongs to the
# interval it opens. Values below the first boundary take the first class.
_PRINCIPAL_BOUNDS = (16.0, 17.0, 18.5, 25.0, 30.0, 35.0, 40.0)
_PRINCIPAL_ORDER = (
    PrincipalClass.SEVERE_THINNESS,
    PrincipalClass.MODERATE_THINNESS,
    PrincipalClass.MILD_THINNESS,
    PrincipalClass.NORMAL_RANGE,
    PrincipalClass.PRE_OBESE,
    PrincipalClass.OBESE_I,
    PrincipalClass.OBESE_II,
    PrincipalClass.OBESE_III,
)
_ADDITIONAL_BOUNDS = (16.0, 17.0, 18.5, 23.0, 25.0, 27.5, 30.0, 32.5, 35.0, 37.5, 40.0)
_ADDITIONAL_ORDER = (
    AdditionalClass.SEVERE_THINNESS,
    AdditionalClass.MODERATE_THINNESS,
    AdditionalClass.MILD_THINNESS,
    AdditionalClass.NORMAL_LOWER,
    AdditionalClass.NORMAL_UPPER,
    AdditionalClass.PRE_OBESE_LOWER,
    AdditionalClass.PRE_OBESE_UPPER,
    AdditionalClass.OBESE_I_LOWER,
    AdditionalClass.OBESE_I_UPPER,
    AdditionalClass.OBESE_II_LOWER,
    AdditionalClass.OBESE_II_UPPER,
    AdditionalClass.OBESE_III,
)

UNDERWEIGHT_BELOW = 18.5
OVERWEIGHT_FROM = 25.0
OBESE_FROM = 30.0


@dataclass(frozen=True)
class BmiClass:
    """Principal and additional BMI class plus the umbrella flags."""

    principal: PrincipalClass
    additional: AdditionalClass
    underweight: bool
    overweight: bool
    obese: bool


@dataclass(frozen=True)
class EvaluationResult:
    """All derived quantities for one measurement session.

    ``pat_supported`` is False when the subject's age falls outside the
    calibrated 8-18 span; body_density, pat and abm are then unset while
    BMI and its classification are still present.
    """

    bmi: float
    fold_sum: float
    bmi_class: BmiClass
    pat_supported: bool
    body_density: Optional[float] = None
    pat: Optional[float] = None
    abm: Optional[float] = None


def compute_bmi(weight: float, height: float) -> float:
    """Body mass index: weight (kg) divided by squared height (m)."""
    weight = _require_finite("weight", weight)
    height = _require_finite("height", height)
    if not WEIGHT_RANGE_KG[0] < weight < WEIGHT_RANGE_KG[1]:
        raise DomainError("weight", f"weight must be in (5, 300) kg, got {weight:g}")
    if not HEIGHT_RANGE_M[0] < height < HEIGHT_RANGE_M[1]:
        raise DomainError("height", f"height must be in (0.5, 2.5) m, got {height:g}")
    return weight / (height * height)


def classify_bmi(bmi: float) -> BmiClass:
    """Classify a BMI value against the WHO principal and additional cut-offs.

    Intervals are half-open [lower, upper): a printed cut-off value such as
    25.00 belongs to the class it opens (Pre-obese), so every positive BMI
    maps to exactly one class with no gaps.
    """
    bmi = float(bmi)
    if not math.isfinite(bmi) or bmi <= 0.0:
        raise DomainError("bmi", f"bmi must be a finite positive number, got {bmi!r}")
    principal = _PRINCIPAL_ORDER[bisect_right(_PRINCIPAL_BOUNDS, bmi)]
    additional = _ADDITIONAL_ORDER[bisect_right(_ADDITIONAL_BOUNDS, bmi)]
    return BmiClass(
        principal=principal,
        additional=additional,
        underweight=bmi < UNDERWEIGHT_BELOW,
        overweight=bmi >= OVERWEIGHT_FROM,
        obese=bmi >= OBESE_FROM,
    )


def sum_folds(folds: SkinfoldSet) -> float:
    """Arithmetic sum of the seven skinfolds, in millimeters."""
    return math.fsum(folds.values())


# Seven-site body-density regression: intercept, linear and quadratic
# fold-sum terms, age term. Units g/cm^3.
_BD_COEFFS = {
    Sex.MALE: (1.112, -0.00043499, 0.00000055, -0.00028826),
    Sex.FEMALE: (1.0970, -0.00046971, 0.00000056, -0.00012828),
}

# Density-to-fat-fraction conversion, (numerator, subtrahend), keyed by
# (is 13-18 band, sex). The 8-12 band uses one coefficient pair for both
# sexes.
_PAT_COEFFS = {
    (False, Sex.MALE): (5.27, 4.85),
    (False, Sex.FEMALE): (5.27, 4.85),
    (True, Sex.MALE): (5.12, 4.69),
    (True, Sex.FEMALE): (5.19, 4.76),
}


def _check_pat_age(age: int) -> int:
    age = int(age)
    if not PAT_AGE_MIN <= age <= PAT_AGE_MAX:
        raise UnsupportedAgeError(age)
    return age


def body_density(fold_sum: float, age: int, sex: Sex) -> float:
    """Estimate body density (g/cm^3) from the seven-fold sum and age.

    Sex-specific quadratic regression in the fold sum; defined for fold
    sums in (0, 300] mm and ages 8 to 18.
    """
    fold_sum = _require_finite("fold_sum", fold_sum)
    if not 0.0 < fold_sum <= FOLD_SUM_MAX_MM:
        raise DomainError(
            "fold_sum", f"fold sum must be in (0, {FOLD_SUM_MAX_MM:g}] mm, got {fold_sum:g}"
        )
    age = _check_pat_age(age)
    intercept, linear, quadratic, per_year = _BD_COEFFS[sex]
    return intercept + linear * fold_sum + quadratic * fold_sum * fold_sum + per_year * age


def pat_fraction(bd: float, age: int, sex: Sex) -> float:
    """Adipose-tissue fraction of body mass from body density.

    Age 8-12 uses one formula for both sexes; 13-18 is sex-specific.
    Returns the raw regression value as a fraction (0.10 means 10%); for
    very lean subjects the regression can fall below zero.
    """
    bd = _require_finite("bd", bd)
    if not 0.9 < bd < 1.2:
        raise DomainError("bd", f"body density must be in (0.9, 1.2) g/cm3, got {bd:g}")
    age = _check_pat_age(age)
    numerator, subtrahend = _PAT_COEFFS[(age >= 13, sex)]
    return numerator / bd - subtrahend


def active_body_mass(weight: float, pat: float) -> float:
    """Fat-free mass in kg: weight times (1 - adipose fraction)."""
    weight = _require_finite("weight", weight)
    pat = _require_finite("pat", pat)
    if not 0.0 <= pat < 1.0:
        raise DomainError("pat", f"adipose fraction must be in [0, 1), got {pat:g}")
    return weight * (1.0 - pat)


def evaluate(metrics: BodyMetrics, folds: SkinfoldSet, sex: Sex) -> EvaluationResult:
    """Run the full per-session evaluation.

    Equivalent to composing compute_bmi, sum_folds, body_density,
    pat_fraction, active_body_mass and classify_bmi by hand. Ages outside
    8-18 yield a result with pat_supported=False (BMI and classification
    are still computed); a regression-negative adipose fraction raises a
    DomainError, like the hand-built pipeline would.
    """
    bmi = compute_bmi(metrics.weight, metrics.height)
    fold_sum = sum_folds(folds)
    bmi_class = classify_bmi(bmi)
    if not PAT_AGE_MIN <= metrics.age <= PAT_AGE_MAX:
        return EvaluationResult(
            bmi=bmi, fold_sum=fold_sum, bmi_class=bmi_class, pat_supported=False
        )
    bd = body_density(fold_sum, metrics.age, sex)
    pat = pat_fraction(bd, metrics.age, sex)
    if pat < 0.0:
        raise DomainError(
            "pat",
            f"estimated adipose fraction is negative ({pat:.4f}); the fold sum"
            f" {fold_sum:g} mm is below the regression's calibrated range",
        )
    abm = active_body_mass(metrics.weight, pat)
    return EvaluationResult(
        bmi=bmi,
        fold_sum=fold_sum,
        bmi_class=bmi_class,
        pat_supported=True,
        body_density=bd,
        pat=pat,
        abm=abm,
    )


def round_half_up(value: float, ndigits: int = 0) -> Decimal:
    """Round the shortest decimal form of ``value`` half up at ``ndigits``."""
    quantum = Decimal(1).scaleb(-ndigits)
    return Decimal(str(value)).quantize(quantum, rounding=ROUND_HALF_UP)


def format_bmi(bmi: float) -> str:
    """BMI for display: two decimals, round half up (25.2595 -> '25.26')."""
    return str(round_half_up(bmi, 2))


def format_bd(bd: float) -> str:
    """Body density for display: three decimals, round half up."""
    return str(round_half_up(bd, 3))


def format_pat_percent(pat: float) -> str:
    """Adipose fraction for display: whole percent (0.1005 -> '10')."""
    return str(round_half_up(pat * 100.0, 0))
