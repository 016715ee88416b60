import json
import typing as t
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from pathlib import Path

import importlib_resources

from ipa_engine.arfit import OrderRule
from ipa_engine.arfit import SelectionCriterion
from ipa_engine.const import PRESETS_ANCHOR
from ipa_engine.const import PRESETS_DIR
from ipa_engine.const import SCHEMA_RESOURCE
from ipa_engine.errors import ConfigError
from ipa_engine.errors import IpaError
from ipa_engine.isa import ClusterRuleKind
from ipa_engine.isa import DimRuleKind
from ipa_engine.isa import EstimatorKind
from ipa_engine.logs import logger_cli as logger
from ipa_engine.pipeline import PipelineConfig
from ipa_engine.seeding import Seed
from ipa_engine.synth import MixingKind
from ipa_engine.synth import SourceFamily
from ipa_engine.synth import SourceSpec
from ipa_engine.synth import SystemSpec
from ipa_engine.synth import UndercompletenessError
from ipa_engine.tsmodel import ComponentLayout

__all__ = [
    'ConfigSchemaError',
    'MatrixOptions',
    'RunConfig',
    'list_presets',
    'load_preset',
    'merge_config',
    'parse_run_config',
    'resolve_run_config',
    'schema_text',
    'with_matrix_defaults',
]

_MISSING = object()


class ConfigSchemaError(ConfigError):
    """
    Invalid run configuration; ``path`` is the dotted location of the offending field
    """

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f'{path or "<root>"}: {message}')
        self.path = path


def _join(path: str, key: t.Union[str, int]) -> str:
    if isinstance(key, int):
        return f'{path}[{key}]'
    return f'{path}.{key}' if path else key


def _section(value: t.Any, path: str, allowed: t.Iterable[str]) -> t.Dict[str, t.Any]:
    if not isinstance(value, dict):
        raise ConfigSchemaError(path, f'expected an object, got {type(value).__name__}')

    unknown = sorted(set(value) - set(allowed))
    if unknown:
        raise ConfigSchemaError(_join(path, unknown[0]), f'unknown field, allowed: {sorted(allowed)}')

    return value


def _integer(
    section: t.Dict[str, t.Any],
    key: str,
    path: str,
    minimum: int = 0,
    default: t.Any = _MISSING,
) -> t.Any:
    if key not in section or section[key] is None:
        if default is _MISSING:
            raise ConfigSchemaError(_join(path, key), 'required field is missing')
        return default

    value = section[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigSchemaError(_join(path, key), f'expected an integer, got {value!r}')

    if value < minimum:
        raise ConfigSchemaError(_join(path, key), f'must be at least {minimum}, got {value}')

    return value


def _number(section: t.Dict[str, t.Any], key: str, path: str, default: t.Any = _MISSING) -> t.Any:
    if key not in section:
        if default is _MISSING:
            raise ConfigSchemaError(_join(path, key), 'required field is missing')
        return default

    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigSchemaError(_join(path, key), f'expected a number, got {value!r}')

    return float(value)


def _choice(section: t.Dict[str, t.Any], key: str, path: str, choices: t.Type, default: t.Any = _MISSING) -> t.Any:
    if key not in section:
        if default is _MISSING:
            raise ConfigSchemaError(_join(path, key), 'required field is missing')
        return default

    try:
        return choices(section[key])
    except ValueError:
        raise ConfigSchemaError(
            _join(path, key),
            f'unknown value {section[key]!r}, expected one of {[item.value for item in choices]}',
        ) from None


def _boolean(section: t.Dict[str, t.Any], key: str, path: str, default: bool) -> bool:
    value = section.get(key, default)
    if not isinstance(value, bool):
        raise ConfigSchemaError(_join(path, key), f'expected true or false, got {value!r}')
    return value


@dataclass(frozen=True)
class MatrixOptions:
    columns_as_observations: bool = True

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'columns_as_observations': self.columns_as_observations}


@dataclass(frozen=True)
class RunConfig:
    """
    A validated run configuration: the pipeline settings plus, for simulating commands, the system and its sources
    """

    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    system: t.Optional[SystemSpec] = None
    sources: t.Optional[SourceSpec] = None
    length: t.Optional[int] = None
    matrix: MatrixOptions = field(default_factory=MatrixOptions)
    description: t.Optional[str] = None

    @property
    def seed(self) -> Seed:
        return self.pipeline.seed

    @property
    def can_simulate(self) -> bool:
        return self.system is not None and self.sources is not None and self.length is not None

    def require_simulation(self) -> t.Tuple[SystemSpec, SourceSpec, int]:
        if self.system is None:
            raise ConfigSchemaError('system', 'section is required to simulate data')
        if self.sources is None:
            raise ConfigSchemaError('sources', 'section is required to simulate data')
        if self.length is None:
            raise ConfigSchemaError('length', 'required to simulate data')

        return self.system, self.sources, self.length

    def to_dict(self) -> t.Dict[str, t.Any]:
        """
        The configuration in its file format, without seeds; ``parse_run_config`` reads it back
        """

        payload: t.Dict[str, t.Any] = {}

        if self.description is not None:
            payload['description'] = self.description

        if self.system is not None:
            system = self.system.to_dict()
            system.pop('seed')
            payload['system'] = system

        if self.sources is not None:
            payload['sources'] = {
                'layout': self.sources.layout.as_list(),
                'components': [
                    {key: value for key, value in component.to_dict().items() if value is not None}
                    for component in self.sources.components
                ],
            }

        if self.length is not None:
            payload['length'] = self.length

        pipeline = self.pipeline.to_dict()
        pipeline.pop('seed')
        pipeline['estimator'].pop('seed', None)
        payload['pipeline'] = pipeline
        payload['matrix'] = self.matrix.to_dict()

        return payload


_ROOT_FIELDS = ('description', 'system', 'sources', 'length', 'pipeline', 'matrix')
_SYSTEM_FIELDS = ('p', 'q', 'r', 'D_x', 'D_s', 'D_e', 'mixing', 'burn_in')
_PIPELINE_FIELDS = (
    'r',
    'max_ar_order',
    'min_ar_order',
    'order_rule',
    'dim_rule',
    'estimator',
    'cluster_rule',
    'max_sweeps',
    'tolerance',
    'restarts',
    'retain_series',
)
_KCCA_FIELDS = ('kind', 'sigma', 'kappa', 'eta', 'max_samples')


def _parse_system(payload: t.Any, seed: Seed) -> SystemSpec:
    path = 'system'
    section = _section(payload, path, _SYSTEM_FIELDS)

    values = {
        'p': _integer(section, 'p', path),
        'q': _integer(section, 'q', path),
        'r': _integer(section, 'r', path, default=0),
        'D_x': _integer(section, 'D_x', path, minimum=1),
        'D_s': _integer(section, 'D_s', path, minimum=1),
        'D_e': _integer(section, 'D_e', path, minimum=1),
        'mixing': _choice(section, 'mixing', path, MixingKind, default=MixingKind.random_orthogonal),
        'burn_in': _integer(section, 'burn_in', path, default=None),
    }

    try:
        return SystemSpec(seed=seed, **values)
    except UndercompletenessError as ex:
        raise ConfigSchemaError('system.D_x', f'undercompleteness requirement violated: {ex}') from ex
    except IpaError as ex:
        raise ConfigSchemaError(path, str(ex)) from ex


def _parse_sources(payload: t.Any, seed: Seed, system: t.Optional[SystemSpec]) -> SourceSpec:
    path = 'sources'
    section = _section(payload, path, ('layout', 'components'))
    dims = section.get('layout')

    if not isinstance(dims, list) or not dims:
        raise ConfigSchemaError(_join(path, 'layout'), 'expected a nonempty list of component dimensions')

    for index, dim in enumerate(dims):
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise ConfigSchemaError(_join(_join(path, 'layout'), index), f'expected a positive integer, got {dim!r}')

    layout = ComponentLayout(tuple(dims))

    if system is not None and layout.total != system.D_e:
        raise ConfigSchemaError(
            _join(path, 'layout'),
            f'component dimensions sum to {layout.total}, system.D_e is {system.D_e}',
        )

    if 'components' not in section:
        return SourceSpec.default(layout, seed=seed)

    items = section['components']
    if not isinstance(items, list):
        raise ConfigSchemaError(_join(path, 'components'), 'expected a list of component sources')

    components = []
    for index, item in enumerate(items):
        item_path = _join(_join(path, 'components'), index)
        component = _section(item, item_path, ('family', 'shape', 'path'))
        _choice(component, 'family', item_path, SourceFamily)
        components.append(component)

    try:
        return SourceSpec.from_dict({'layout': layout.as_list(), 'components': components, 'seed': seed})
    except IpaError as ex:
        raise ConfigSchemaError(_join(path, 'components'), str(ex)) from ex


def _parse_rule(section: t.Dict[str, t.Any], key: str, allowed: t.Tuple[str, ...], kinds: t.Type) -> None:
    path = _join('pipeline', key)
    rule = _section(section[key], path, allowed)
    _choice(rule, allowed[0], path, kinds)


def _parse_pipeline(payload: t.Any, seed: Seed, system: t.Optional[SystemSpec]) -> PipelineConfig:
    path = 'pipeline'
    section = dict(_section(payload if payload is not None else {}, path, _PIPELINE_FIELDS))

    for key in ('r', 'max_ar_order', 'min_ar_order'):
        _integer(section, key, path, default=None)

    for key in ('max_sweeps', 'restarts'):
        _integer(section, key, path, minimum=1, default=None)

    if 'tolerance' in section:
        _number(section, 'tolerance', path)

    _boolean(section, 'retain_series', path, default=False)

    if 'order_rule' in section:
        _parse_rule(section, 'order_rule', ('criterion', 'order'), SelectionCriterion)
    if 'dim_rule' in section:
        _parse_rule(section, 'dim_rule', ('kind', 'value'), DimRuleKind)
    if 'cluster_rule' in section:
        _parse_rule(section, 'cluster_rule', ('kind', 'count'), ClusterRuleKind)
    if 'estimator' in section:
        estimator = _section(section['estimator'], 'pipeline.estimator', _KCCA_FIELDS)
        _choice(estimator, 'kind', 'pipeline.estimator', EstimatorKind, default=EstimatorKind.kcca)

    if 'r' not in section and system is not None:
        section['r'] = int(system.r)

    try:
        return PipelineConfig.from_dict({**section, 'seed': seed})
    except IpaError as ex:
        raise ConfigSchemaError(path, str(ex)) from ex


def parse_run_config(payload: t.Any, seed: Seed = 0) -> RunConfig:
    """
    Validate a run configuration document and build the domain objects it describes.

    Every failure is a ``ConfigSchemaError`` carrying the dotted path of the field at fault.
    """

    section = _section(payload, '', _ROOT_FIELDS)
    description = section.get('description')

    if description is not None and not isinstance(description, str):
        raise ConfigSchemaError('description', 'expected a string')

    system = _parse_system(section['system'], seed) if section.get('system') is not None else None
    sources = _parse_sources(section['sources'], seed, system) if section.get('sources') is not None else None

    if system is not None and sources is None:
        raise ConfigSchemaError('sources', 'required when a system is configured')

    matrix = _section(section.get('matrix', {}), 'matrix', ('columns_as_observations',))

    return RunConfig(
        pipeline=_parse_pipeline(section.get('pipeline'), seed, system),
        system=system,
        sources=sources,
        length=_integer(section, 'length', '', minimum=1, default=None),
        matrix=MatrixOptions(_boolean(matrix, 'columns_as_observations', 'matrix', default=True)),
        description=description,
    )


def merge_config(base: t.Dict[str, t.Any], override: t.Dict[str, t.Any]) -> t.Dict[str, t.Any]:
    """
    Overlay ``override`` on ``base``: nested objects merge key by key, everything else is replaced
    """

    merged = dict(base)

    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = value

    return merged


def _presets_root() -> t.Any:
    return importlib_resources.files(PRESETS_ANCHOR) / PRESETS_DIR


def list_presets() -> t.List[str]:
    return sorted(
        item.name[:-len('.json')]
        for item in _presets_root().iterdir()
        if item.name.endswith('.json') and item.name != SCHEMA_RESOURCE
    )


def load_preset(name: str) -> t.Dict[str, t.Any]:
    resource = _presets_root() / f'{name}.json'

    if name == SCHEMA_RESOURCE[:-len('.json')] or not resource.is_file():
        raise ConfigSchemaError('preset', f'unknown preset {name!r}, available: {list_presets()}')

    return json.loads(resource.read_text(encoding='utf-8'))


def schema_text() -> str:
    return (_presets_root() / SCHEMA_RESOURCE).read_text(encoding='utf-8')


def _read_config_file(path: Path) -> t.Dict[str, t.Any]:
    try:
        return json.loads(path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as ex:
        raise ConfigSchemaError('', f'{path} is not valid JSON: {ex}') from ex


def resolve_run_config(
    preset: t.Optional[str],
    config_path: t.Optional[Path],
    seed: Seed,
) -> t.Tuple[RunConfig, t.Dict[str, t.Any]]:
    """
    Preset first, then the ``--config`` file on top of it; returns the parsed config and the merged document
    """

    document: t.Dict[str, t.Any] = load_preset(preset) if preset else {}

    if config_path is not None:
        document = merge_config(document, _read_config_file(Path(config_path)))

    config = parse_run_config(document, seed=seed)
    logger.info('Run config resolved, preset=%s, config=%s, seed=%s', preset, config_path, seed)

    return config, document


def with_matrix_defaults(config: RunConfig) -> RunConfig:
    """
    Matrix ISA runs skip the temporal stages: no differencing and an AR model of order 0
    """

    return replace(
        config,
        pipeline=replace(config.pipeline, r=0, min_ar_order=0, max_ar_order=0, order_rule=OrderRule.fixed(0)),
    )
