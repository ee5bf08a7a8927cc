from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as gettext

from dynamics import PARAM_NAMES, COMPARTMENTS
from .presets import PRESET_NAMES

CONFIG_SCHEMA = {
    'scenario': ('label', 'base'),
    'params': PARAM_NAMES,
    'init': COMPARTMENTS,
    'grid': ('t0', 'tf', 'h', 'n_steps'),
    'control': ('pi1', 'pi2', 'pi3', 'a', 'b_w', 'c_w', 'relaxation', 'tol', 'max_iter'),
    'sweep': ('parameter', 'values'),
}


def validate_section(section):
    if section not in CONFIG_SCHEMA:
        raise ValidationError(gettext(
            f'Unknown section [{section}]. Allowed sections: {", ".join(CONFIG_SCHEMA)}.'
        ))


def validate_config_key(section, key):
    validate_section(section)
    if key not in CONFIG_SCHEMA[section]:
        raise ValidationError(gettext(
            f'Unknown key {section}.{key}. Allowed keys in [{section}]: {", ".join(CONFIG_SCHEMA[section])}.'
        ))


def validate_preset_name(value):
    if value not in PRESET_NAMES:
        raise ValidationError(gettext(
            f'Unknown preset {value!r}. Available presets: {", ".join(PRESET_NAMES)}.'
        ))


def validate_label(value):
    if not value or not str(value).strip():
        raise ValidationError(gettext('Scenario label must be nonempty.'))
    if any(sep in str(value) for sep in ('/', '\\')):
        raise ValidationError(gettext('Scenario label must not contain path separators.'))


def validate_sweep_parameter(value):
    if value not in PARAM_NAMES:
        raise ValidationError(gettext(
            f'Sweep parameter must be one of {", ".join(PARAM_NAMES)}, got {value!r}.'
        ))


def validate_sweep_values(values):
    if len(values) < 1:
        raise ValidationError(gettext('A sweep needs at least one value.'))


def parse_override(text):
    """Split a ``section.key=value`` override."""
    if '=' not in text:
        raise ValidationError(gettext(f'Override {text!r} must look like section.key=value.'))
    path, value = text.split('=', 1)
    if '.' not in path:
        raise ValidationError(gettext(f'Override path {path!r} must look like section.key.'))
    section, key = path.strip().split('.', 1)
    validate_config_key(section, key)
    return section, key, value.strip()
