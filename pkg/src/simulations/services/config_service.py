import configparser
import copy
import logging
import re
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError

from core.exceptions import ConfigParseException, ParameterValidationException
from core.validators import (
    validate_finite,
    validate_nonnegative,
    validate_positive,
    validate_positive_int,
)
from dynamics import PARAM_NAMES, COMPARTMENTS, ControlSwitches, ModelParams, State
from integrator import Grid
from optimal_control import ControlWeights, FbsConfig
from ..presets import PRESETS
from ..types import ScenarioConfig, SweepSpec, default_init
from ..validators import (
    CONFIG_SCHEMA,
    parse_override,
    validate_config_key,
    validate_preset_name,
)

logger = logging.getLogger(__name__)

SECTION_RE = re.compile(r'^\s*\[([^\]]+)\]')
KEY_RE = re.compile(r'^\s*([^=:\s\[#;][^=:]*?)\s*[=:]')


def _field_error(e, field_name):
    return ParameterValidationException('; '.join(str(m) for m in e.messages), field=field_name)


def _checked(validator, raw, section, key):
    field_name = f"{section}.{key}"
    try:
        return validator(raw, field_name)
    except ValidationError as e:
        raise _field_error(e, field_name)


def _line_of(text, section, key=None):
    current = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        header = SECTION_RE.match(line)
        if header:
            current = header.group(1).strip()
            if key is None and current == section:
                return lineno
            continue
        match = KEY_RE.match(line)
        if key is not None and current == section and match and match.group(1).strip() == key:
            return lineno
    return None


def parse_values(text):
    items = [item for item in re.split(r'[,\s]+', str(text).strip()) if item]
    return tuple(_checked(validate_finite, item, 'sweep', 'values') for item in items)


class ScenarioConfigService:
    """
    Builds a validated ScenarioConfig from a builtin preset, an INI scenario
    file and command-line overrides, in that order of precedence.
    """

    @classmethod
    def load_config(cls, path=None, preset=None, overrides=(), controlled=False, steps=None, horizon=None):
        if path is None and preset is None:
            raise ParameterValidationException('either a scenario file or a preset is required', field='scenario')
        if path is not None and preset is not None:
            raise ParameterValidationException('give a scenario file or a preset, not both', field='scenario')

        if preset is not None:
            raw = cls.preset_sections(preset)
            name_hint = preset
        else:
            raw = cls.read_ini(path)
            name_hint = Path(path).stem

        cls.apply_overrides(raw, overrides)
        if steps is not None:
            grid = raw.setdefault('grid', {})
            grid.pop('h', None)
            grid['n_steps'] = str(steps)
        if horizon is not None:
            raw.setdefault('grid', {})['tf'] = str(horizon)

        cfg = cls.build(raw, controlled=controlled, name_hint=name_hint)
        logger.debug(f"loaded scenario {cfg.label!r}: {cfg.to_dict()}")
        return cfg

    @classmethod
    def preset_sections(cls, name):
        try:
            validate_preset_name(name)
        except ValidationError as e:
            raise _field_error(e, 'scenario.base')
        raw = copy.deepcopy(PRESETS[name])
        raw['scenario']['base'] = name
        return raw

    @classmethod
    def read_ini(cls, path):
        try:
            text = Path(path).read_text(encoding='utf-8')
        except OSError as e:
            raise ConfigParseException(f"cannot read scenario file {path}: {e.strerror or e}")
        return cls.parse_ini(text, source=str(path))

    @classmethod
    def parse_ini(cls, text, source='<string>'):
        parser = configparser.ConfigParser(interpolation=None, default_section='__defaults__')
        parser.optionxform = str
        try:
            parser.read_string(text, source=source)
        except configparser.Error as e:
            lineno = getattr(e, 'lineno', None)
            if lineno is None and getattr(e, 'errors', None):
                lineno = e.errors[0][0]
            raise ConfigParseException(e.message.splitlines()[0], lineno=lineno)

        if parser.defaults():
            raise ConfigParseException('keys outside a section are not allowed', lineno=1)

        file_sections = {}
        for section in parser.sections():
            for key, value in parser.items(section):
                try:
                    validate_config_key(section, key)
                except ValidationError as e:
                    lineno = _line_of(text, section, key) if section in CONFIG_SCHEMA else _line_of(text, section)
                    raise ConfigParseException('; '.join(str(m) for m in e.messages), lineno=lineno)
                file_sections.setdefault(section, {})[key] = value
            if section not in CONFIG_SCHEMA:
                raise ConfigParseException(f"Unknown section [{section}].", lineno=_line_of(text, section))

        base = file_sections.get('scenario', {}).get('base')
        raw = cls.preset_sections(base) if base else {}
        if base:
            raw['scenario'].pop('label', None)
        for section, values in file_sections.items():
            raw.setdefault(section, {}).update(values)
        return raw

    @classmethod
    def apply_overrides(cls, raw, overrides):
        for text in overrides or ():
            try:
                section, key, value = parse_override(text)
            except ValidationError as e:
                raise ParameterValidationException('; '.join(str(m) for m in e.messages), field='--set')
            raw.setdefault(section, {})[key] = value
        return raw

    @classmethod
    def build(cls, raw, controlled=False, name_hint=None):
        defaults = settings.SEIZ_DEFAULTS
        scenario = raw.get('scenario', {})

        params_raw = raw.get('params', {})
        missing = [name for name in PARAM_NAMES if name not in params_raw]
        if missing:
            raise ParameterValidationException(f"missing rate constant(s): {', '.join(missing)}", field='params')
        params = ModelParams(**{name: params_raw[name] for name in PARAM_NAMES})

        init_raw = raw.get('init', {})
        seed = default_init(params)
        init = State(*(
            _checked(validate_nonnegative, init_raw[name], 'init', name) if name in init_raw else getattr(seed, name)
            for name in COMPARTMENTS
        ))

        grid = cls.build_grid(raw.get('grid', {}), controlled)

        control = raw.get('control', {})
        default_switch = 1 if controlled else 0
        switches = ControlSwitches.validated(*(
            control.get(name, default_switch) for name in ControlSwitches._fields
        ))
        weights = ControlWeights(
            control.get('a', defaults['weight_a']),
            control.get('b_w', defaults['weight_b']),
            control.get('c_w', defaults['weight_c']),
        )
        fbs = FbsConfig(
            control.get('relaxation', defaults['relaxation']),
            control.get('tol', defaults['tol']),
            control.get('max_iter', defaults['max_iter']),
        )

        sweep = None
        sweep_raw = raw.get('sweep', {})
        if sweep_raw:
            if 'parameter' not in sweep_raw or 'values' not in sweep_raw:
                raise ParameterValidationException('[sweep] needs both parameter and values', field='sweep')
            sweep = (sweep_raw['parameter'].strip(), parse_values(sweep_raw['values']))

        return ScenarioConfig(
            label=scenario.get('label') or name_hint or 'scenario',
            params=params,
            init=init,
            grid=grid,
            switches=switches,
            weights=weights,
            fbs=fbs,
            base=scenario.get('base'),
            init_defaulted=not init_raw,
            sweep=sweep,
        )

    @classmethod
    def build_grid(cls, grid_raw, controlled):
        defaults = settings.SEIZ_DEFAULTS
        t0 = _checked(validate_finite, grid_raw.get('t0', 0.0), 'grid', 't0')
        default_tf = defaults['tf_controlled'] if controlled else defaults['tf_uncontrolled']
        tf = _checked(validate_finite, grid_raw.get('tf', default_tf), 'grid', 'tf')
        if 'n_steps' in grid_raw and 'h' in grid_raw:
            raise ParameterValidationException('grid takes h or n_steps, not both', field='grid')
        if 'n_steps' in grid_raw:
            return Grid(t0, tf, _checked(validate_positive_int, grid_raw['n_steps'], 'grid', 'n_steps'))
        h = _checked(validate_positive, grid_raw.get('h', defaults['h']), 'grid', 'h')
        return Grid.from_step(t0, tf, h)

    @classmethod
    def build_sweep_spec(cls, cfg, parameter=None, values=None):
        """Sweep over one rate constant; command-line flags win over the [sweep] section."""
        if parameter is None and cfg.sweep is not None:
            parameter = cfg.sweep[0]
        if values is None and cfg.sweep is not None:
            values = cfg.sweep[1]
        if parameter is None or values is None:
            raise ParameterValidationException('a sweep needs a parameter and a list of values', field='sweep')
        if isinstance(values, str):
            values = parse_values(values)
        return SweepSpec(parameter=parameter, values=tuple(float(v) for v in values), base=cfg)
