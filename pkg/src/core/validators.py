import math

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as gettext


def validate_finite(value, field_name):
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ValidationError(gettext(f'{field_name} must be a number, got {value!r}.'))
    if not math.isfinite(number):
        raise ValidationError(gettext(f'{field_name} must be finite, got {value!r}.'))
    return number


def validate_nonnegative(value, field_name):
    number = validate_finite(value, field_name)
    if number < 0:
        raise ValidationError(gettext(f'{field_name} ≥ 0 violated: got {number!r}.'))
    return number


def validate_positive(value, field_name):
    number = validate_finite(value, field_name)
    if number <= 0:
        raise ValidationError(gettext(f'{field_name} > 0 violated: got {number!r}.'))
    return number


def validate_probability(value, field_name):
    number = validate_finite(value, field_name)
    if not 0.0 <= number <= 1.0:
        raise ValidationError(gettext(f'{field_name} ∈ [0,1] violated: got {number!r}.'))
    return number


def validate_switch(value, field_name):
    number = validate_finite(value, field_name)
    if number not in (0.0, 1.0):
        raise ValidationError(gettext(f'{field_name} ∈ {{0,1}} violated: got {number!r}.'))
    return int(number)


def validate_relaxation(value, field_name):
    number = validate_finite(value, field_name)
    if not 0.0 < number <= 1.0:
        raise ValidationError(gettext(f'{field_name} ∈ (0,1] violated: got {number!r}.'))
    return number


def validate_positive_int(value, field_name):
    number = validate_finite(value, field_name)
    if number != int(number) or number < 1:
        raise ValidationError(gettext(f'{field_name} must be a positive integer, got {value!r}.'))
    return int(number)
