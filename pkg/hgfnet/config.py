"""Declarative model configuration read from TOML.

A configuration names a network (a preset or explicit nodes and edges),
fixed parameter values, the free parameters with their priors, the
response model, sampler settings and recovery settings::

    >>> config = parse_config('''
    ... [network]
    ... preset = "binary-3"
    ...
    ... [parameters]
    ... "node.1.tonic_volatility" = -2.5
    ... ''')
    >>> config.sampler.chains, config.sampler.draws, config.sampler.hdi_mass
    (4, 1000, 0.94)
    >>> net = config.build_network()
    >>> len(net), net.attributes[1].tonic_volatility
    (3, -2.5)
    >>> config.parameter_space().names
    ['node.1.tonic_volatility', 'response.inverse_temperature']

Validation errors are raised as one :class:`ConfigParseError` listing every
problem, each prefixed with the dotted path of the offending key.
"""
import logging
import tomllib
from pathlib import Path
from typing import NoReturn, Optional, Union

from hgfnet.attributes import Coupling, NodeAttributes, NodeKind
from hgfnet.exceptions import (ConfigParseError, HgfError,
                               ValidationException)
from hgfnet.ghgf import PRESET_NAMES, PresetSpec, preset
from hgfnet.model import AgentModel, parse_path, set_parameter
from hgfnet.network import (Network, add_edge, add_node,
                            derive_update_sequence, new_network)
from hgfnet.priors import Parameter, ParameterSpace, default_parameter_space
from hgfnet.response import ResponseModel
from hgfnet.schema import Schema, SchemaRecord

logger = logging.getLogger(__name__)


class NetworkSection(SchemaRecord):
    FIELDS = Schema(
        preset={'type': 'str', 'enum': set(PRESET_NAMES)},
        nodes={'type': 'list'},
        edges={'type': 'list', 'default': []},
        input_nodes={'type': 'list', 'member_type': 'int'},
        observation_precision={'type': 'float', 'exclusive_min': 0.0},
    )


class NodeSection(SchemaRecord):
    FIELDS = Schema(
        kind={'type': 'str', 'required': True,
              'default': NodeKind.CONTINUOUS.value,
              'enum': {kind.value for kind in NodeKind}},
        mean={'type': 'float'},
        precision={'type': 'float', 'exclusive_min': 0.0},
        tonic_volatility={'type': 'float'},
        extra={'type': 'dict', 'default': {}},
    )


class EdgeSection(SchemaRecord):
    FIELDS = Schema(
        child={'type': 'int', 'required': True, 'min': 0},
        parent={'type': 'int', 'required': True, 'min': 0},
        coupling={'type': 'str', 'required': True,
                  'default': Coupling.VALUE.value,
                  'enum': {coupling.value for coupling in Coupling}},
        strength={'type': 'float', 'default': 1.0, 'min': 0.0},
    )


class InferenceParameterSection(SchemaRecord):
    FIELDS = Schema(
        target={'type': 'str', 'required': True},
        prior={'type': 'str', 'required': True},
        args={'type': 'list', 'required': True, 'member_type': 'float'},
        transform={'type': 'str', 'default': 'identity'},
        lower={'type': 'float'},
        upper={'type': 'float'},
    )


class SamplerSection(SchemaRecord):
    FIELDS = Schema(
        chains={'type': 'int', 'default': 4, 'min': 2},
        draws={'type': 'int', 'default': 1000, 'min': 4},
        warmup={'type': 'int', 'default': 1000, 'min': 0},
        seed={'type': 'int', 'default': 0, 'min': 0},
        hdi_mass={'type': 'float', 'default': 0.94, 'exclusive_min': 0.0,
                  'max': 0.999},
        workers={'type': 'int', 'default': 1, 'min': 1},
        restarts={'type': 'int', 'default': 5, 'min': 1},
    )


class RecoverySection(SchemaRecord):
    FIELDS = Schema(
        subjects={'type': 'int', 'default': 50, 'min': 1},
        trials={'type': 'int', 'default': 320, 'min': 1},
        omega_range={'type': 'list', 'default': [-4.5, -1.5],
                     'member_type': 'float', 'min': 2, 'max': 2},
        log_temperature_range={'type': 'list',
                               'default': [-0.6931471805599453,
                                           1.3862943611198906],
                               'member_type': 'float', 'min': 2, 'max': 2},
    )


class ModelConfig(SchemaRecord):
    """The validated sections of a model configuration."""

    FIELDS = Schema(
        name={'type': 'str', 'default': 'model'},
        network={'type': 'dict', 'required': True},
        parameters={'type': 'dict', 'default': {}},
        inference={'type': 'dict', 'default': {}},
        response={'type': 'dict', 'default': {}},
        sampler={'type': 'dict', 'default': {}},
        recovery={'type': 'dict', 'default': {}},
    )

    def perfect(self) -> NoReturn:
        super(ModelConfig, self).perfect()
        for key, section in (('network', NetworkSection),
                             ('response', ResponseModel),
                             ('sampler', SamplerSection),
                             ('recovery', RecoverySection)):
            if isinstance(self[key], dict) and \
                    not isinstance(self[key], section):
                self[key] = section(self[key])

    def validate(self, raise_validation_exception: bool = True) -> list[str]:
        errors = ['config: %s' % error for error in
                  super(ModelConfig, self).validate(False)]
        if not errors:
            errors.extend(_validate_sections(self))

        if errors and raise_validation_exception:
            raise ConfigParseError(errors)

        return errors

    def build_network(self) -> Network:
        """The configured network with the fixed parameter values applied."""
        network = self.network
        if network.preset is not None:
            spec = PresetSpec.from_name(network.preset)
            if network.observation_precision is not None:
                spec.observation_precision = network.observation_precision
            net = preset(spec)
        else:
            net = new_network()
            for node in network.nodes:
                node = NodeSection(node)
                attrs = {key: node[key] for key in
                         ('mean', 'precision', 'tonic_volatility')
                         if node[key] is not None}
                attrs['extra'] = dict(node.extra)
                if 'mean' in attrs:
                    attrs['expected_mean'] = attrs['mean']
                if 'precision' in attrs:
                    attrs['expected_precision'] = attrs['precision']
                add_node(net, node.kind, NodeAttributes(attrs))
            for edge in network.edges:
                edge = EdgeSection(edge)
                add_edge(net, child=edge.child, parent=edge.parent,
                         coupling=edge.coupling, strength=edge.strength)
            net.sequence = derive_update_sequence(net)
        response = ResponseModel(self.response)
        for path, value in self.parameters.items():
            set_parameter(net, response, path, float(value))
        return net

    def response_model(self) -> ResponseModel:
        response = ResponseModel(dict(self.response))
        for path, value in self.parameters.items():
            if path.startswith('response.'):
                response[parse_path(path).field] = float(value)
        return response

    def agent_model(self) -> AgentModel:
        return AgentModel(self.build_network(), self.response_model(),
                          input_nodes=self.network.input_nodes,
                          name=self.name)

    def parameter_space(self) -> ParameterSpace:
        """The declared free parameters, or the tonic volatility of node 1
        and (for the temperature sigmoid) the inverse temperature."""
        declared = self.inference.get('parameters')
        if not declared:
            return default_parameter_space(
                temperature=self.response.family == 'temperature-sigmoid')
        return ParameterSpace(
            Parameter(target=item['target'],
                      prior={'family': item['prior'],
                             'args': list(item['args'])},
                      transform=item.get('transform', 'identity'),
                      lower=item.get('lower'), upper=item.get('upper'))
            for item in declared)


def _validate_sections(config: ModelConfig) -> list[str]:
    errors = []

    def collect(path: str, record: SchemaRecord):
        errors.extend('%s: %s' % (path, error)
                      for error in record.validate(False))

    network = config.network
    collect('network', network)
    if (network.preset is None) == (network.nodes is None):
        errors.append('network: exactly one of "preset" and "nodes" must be '
                      'given.')
    if network.preset is not None and network.edges:
        errors.append('network.edges: edges cannot be added to a preset.')
    for index, node in enumerate(network.nodes or []):
        if not isinstance(node, dict):
            errors.append('network.nodes[%s]: not a table.' % index)
            continue
        collect('network.nodes[%s]' % index, NodeSection(node))
    for index, edge in enumerate(network.edges or []):
        if not isinstance(edge, dict):
            errors.append('network.edges[%s]: not a table.' % index)
            continue
        collect('network.edges[%s]' % index, EdgeSection(edge))

    for path, value in config.parameters.items():
        try:
            parse_path(path)
        except ValidationException as error:
            errors.extend('parameters.%s: %s' % (path, message)
                          for message in error.validation_errors)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            errors.append('parameters.%s: the value "%s" is not a number.' %
                          (path, value))

    unknown = set(config.inference) - {'parameters'}
    if unknown:
        errors.append('inference: unknown keys %s.' % sorted(unknown))
    for index, item in enumerate(config.inference.get('parameters') or []):
        path = 'inference.parameters[%s]' % index
        if not isinstance(item, dict):
            errors.append('%s: not a table.' % path)
            continue
        section = InferenceParameterSection(item)
        item_errors = section.validate(False)
        if not item_errors:
            try:
                Parameter(target=section.target,
                          prior={'family': section.prior,
                                 'args': section.args},
                          transform=section.transform, lower=section.lower,
                          upper=section.upper).validate()
                parse_path(section.target)
            except ValidationException as error:
                item_errors = error.validation_errors
        errors.extend('%s: %s' % (path, error) for error in item_errors)

    collect('response', config.response)
    collect('sampler', config.sampler)
    collect('recovery', config.recovery)
    for key in ('omega_range', 'log_temperature_range'):
        bounds = config.recovery[key]
        if isinstance(bounds, list) and len(bounds) == 2 and \
                not bounds[0] <= bounds[1]:
            errors.append('recovery.%s: %s is not ordered.' % (key, bounds))

    if not errors:
        try:
            config.build_network().validate()
        except HgfError as error:
            errors.append('network: %s' % error)
    return errors


def parse_config(text: str, name: Optional[str] = None) -> ModelConfig:
    """Parse and validate TOML configuration text.

    :raises ConfigParseError: The text is not TOML or violates the schema.
    """
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as error:
        raise ConfigParseError('config: %s' % error) from error
    unknown = sorted(set(raw) - set(ModelConfig.get_schema()))
    if unknown:
        raise ConfigParseError('config: unknown sections %s.' % unknown)
    if name is not None and 'name' not in raw:
        raw['name'] = name
    config = ModelConfig(raw)
    config.validate()
    return config


def load_config(path: Union[str, Path]) -> ModelConfig:
    """Read and validate a TOML configuration file; the model is named after
    the file unless the file names it."""
    path = Path(path)
    logger.debug('Loading configuration %s.', path)
    return parse_config(path.read_text(encoding='utf-8'), name=path.stem)
