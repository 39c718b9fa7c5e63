"""Generalized Hierarchical Gaussian Filter node computations.

.. contents::

======
Usage
======

Each node update is one of three kinds of steps: a prediction, a prediction
error and a posterior update. The functions of this module take the whole
network and a node index and return the network, so they can be placed in
the update function registry (see :func:`update_functions`).

Continuous nodes
    The prediction adds the drift given by the value parents and widens the
    belief by the volatility ``dt * exp(omega + sum(kappa * parent))`` given
    by the volatility parents. The posterior update is precision weighted:
    observations, value children and volatility children each contribute a
    precision gain and a weighted prediction error.

Binary nodes
    The prediction is the logistic transform of the value parents' expected
    means. Observations are received exactly; the binary node passes its
    prediction error to its value parents.

A two-level binary HGF after observing ``u = 1``::

    >>> net = preset(PresetSpec(family='binary', levels=2,
    ...                         tonic_volatility=[0.0, -2.0]))
    >>> net = propagate(net, {0: 1.0})
    >>> round(net.attributes[1].mean, 6), round(net.attributes[1].precision, 6)
    (0.442166, 1.130797)
    >>> round(net.attributes[0].surprise, 6)
    0.693147

"""
import logging
import math
import sys
from typing import NamedTuple, NoReturn, Optional, Union

from scipy import special

from hgfnet import network as hgf_network
from hgfnet.attributes import Coupling, NodeAttributes, NodeKind
from hgfnet.exceptions import (DomainError, NumericalFailureError,
                               SequencingError, ValidationException)
from hgfnet.network import (Network, UpdateFunction, add_edge, add_node,
                            derive_update_sequence, new_network, propagate)
from hgfnet.schema import Schema, SchemaRecord

logger = logging.getLogger(__name__)

#: Bound on the log-volatility argument of the exponential.
MAX_LOG_VOLATILITY = 50.0

#: Floor on the variance of a binary expectation, the smallest normal double.
MIN_BERNOULLI_VARIANCE = sys.float_info.min

_VALUE = Coupling.VALUE.value
_VOLATILITY = Coupling.VOLATILITY.value


class PredictionError(NamedTuple):
    """The prediction errors emitted by a node for its parents."""

    node: int
    value_pe: float
    volatility_pe: Optional[float]
    expected_precision_at_emit: float


def prediction(net: Network, node: int) -> Network:
    """Compute the expected mean and precision of a node for this step.

    The parents of the node are expected to be predicted already.

    :raises NumericalFailureError: The expected precision is not positive and
        finite.
    """
    if net.node_kinds[node] is NodeKind.BINARY:
        return binary_prediction(net, node)
    return continuous_prediction(net, node)


def continuous_prediction(net: Network, node: int) -> Network:
    attrs = net.attributes[node]
    edges = net.edges[node]
    extra = attrs.extra
    dt = net.dt

    drift = extra['tonic_drift']
    for strength, parent in zip(attrs.value_coupling, edges.value_parents):
        drift += strength * net.attributes[parent].expected_mean
    drift += extra['autoregression'] * (extra['autoregression_target'] -
                                        attrs.mean)
    expected_mean = attrs.mean + dt * drift

    log_volatility = attrs.tonic_volatility + sum(
        strength * net.attributes[parent].expected_mean
        for strength, parent in zip(attrs.volatility_coupling,
                                    edges.volatility_parents))
    if not log_volatility <= MAX_LOG_VOLATILITY:
        raise NumericalFailureError(
            node, net.time_step,
            'log-volatility %s exceeds %s' % (log_volatility,
                                              MAX_LOG_VOLATILITY))
    log_volatility = max(log_volatility, -MAX_LOG_VOLATILITY)
    variance_increment = dt * math.exp(log_volatility)
    expected_precision = 1.0 / (1.0 / attrs.precision + variance_increment)

    _check(net, node, expected_mean, 'expected mean')
    _check_precision(net, node, expected_precision, 'expected precision')
    attrs.expected_mean = expected_mean
    attrs.expected_precision = expected_precision
    attrs.volatility_weight = variance_increment * expected_precision
    attrs.prediction_step = net.time_step
    return net


def binary_prediction(net: Network, node: int) -> Network:
    attrs = net.attributes[node]
    logit = _binary_logit(net, node)
    expected_mean = float(special.expit(logit))
    variance = expected_mean * float(special.expit(-logit))
    expected_precision = 1.0 / max(variance, MIN_BERNOULLI_VARIANCE)

    _check(net, node, expected_mean, 'expected mean')
    _check_precision(net, node, expected_precision, 'expected precision')
    attrs.expected_mean = expected_mean
    attrs.expected_precision = expected_precision
    attrs.prediction_step = net.time_step
    return net


def prediction_error(net: Network, node: int) -> PredictionError:
    """Compute the prediction errors of a node.

    The value prediction error is the observation (binary nodes) or the
    posterior mean (continuous nodes) minus the expected mean. The
    volatility prediction error is defined for nodes with volatility
    parents only.

    :raises SequencingError: The node was not predicted during this step.
    """
    attrs = net.attributes[node]
    if attrs.prediction_step != net.time_step:
        raise SequencingError(
            'Prediction error of node %s requested before its prediction at '
            'time step %s.' % (node, net.time_step))

    if net.node_kinds[node] is NodeKind.BINARY:
        if attrs.observation is None:
            raise SequencingError('Binary node %s has no observation at time '
                                  'step %s.' % (node, net.time_step))
        value_pe = attrs.observation - attrs.expected_mean
        return PredictionError(node, value_pe, None, attrs.expected_precision)

    value_pe = attrs.mean - attrs.expected_mean
    volatility_pe = None
    if net.edges[node].volatility_parents:
        volatility_pe = attrs.expected_precision * (
            1.0 / attrs.precision + value_pe * value_pe) - 1.0
    return PredictionError(node, value_pe, volatility_pe,
                           attrs.expected_precision)


def continuous_prediction_error(net: Network, node: int) -> Network:
    _emit(net, prediction_error(net, node))
    return net


def binary_prediction_error(net: Network, node: int) -> Network:
    emitted = prediction_error(net, node)
    attrs = net.attributes[node]
    attrs.mean = attrs.observation
    attrs.precision = attrs.expected_precision
    _emit(net, emitted)
    return net


def posterior_update(net: Network, node: int) -> Network:
    """Precision weighted update of a continuous node.

    The posterior precision is the expected precision plus the precision
    gains of the observation and of every child that emitted a prediction
    error during this step; the posterior mean moves from the expected mean
    by the weighted prediction errors divided by the posterior precision.

    :raises NumericalFailureError: The posterior precision is not positive
        (ill-posed update) or the mean is not finite.
    """
    attrs = net.attributes[node]
    edges = net.edges[node]
    step = net.time_step
    expected_mean = attrs.expected_mean

    precision = attrs.expected_precision
    weighted_error = 0.0
    if attrs.observation is not None:
        observation_precision = attrs.extra['observation_precision']
        precision += observation_precision
        weighted_error += observation_precision * (attrs.observation -
                                                   expected_mean)

    for child in edges.value_children:
        child_attrs = net.attributes[child]
        if child_attrs.emission_step != step:
            continue
        strength = _strength(net, child, node, _VALUE)
        if net.node_kinds[child] is NodeKind.BINARY:
            precision += strength * strength / child_attrs.expected_precision
            weighted_error += strength * child_attrs.value_prediction_error
        else:
            precision += (strength * strength *
                          child_attrs.expected_precision)
            weighted_error += (strength * child_attrs.expected_precision *
                               child_attrs.value_prediction_error)

    for child in edges.volatility_children:
        child_attrs = net.attributes[child]
        if child_attrs.emission_step != step:
            continue
        strength = _strength(net, child, node, _VOLATILITY)
        weight = strength * child_attrs.volatility_weight
        volatility_pe = child_attrs.volatility_prediction_error
        precision += (0.5 * weight * weight + weight * weight * volatility_pe
                      - 0.5 * strength * weight * volatility_pe)
        weighted_error += 0.5 * weight * volatility_pe

    if not precision > 0.0 or not math.isfinite(precision):
        raise NumericalFailureError(
            node, step, 'ill-posed update, posterior precision %s' % precision)
    mean = expected_mean + weighted_error / precision
    _check(net, node, mean, 'posterior mean')
    attrs.mean = mean
    attrs.precision = precision
    return net


def binary_surprise(expected_mean: float, u: Union[int, float]) -> float:
    """Negative log probability of a binary observation.

    >>> round(binary_surprise(0.9, 1), 6)
    0.105361

    :raises DomainError: The observation is not 0 or 1, or it is impossible
        under the expectation (infinite surprise).
    """
    if u not in (0, 1):
        raise DomainError('Binary observation must be 0 or 1, got %s.' % u)
    if not 0.0 <= expected_mean <= 1.0:
        raise DomainError('Expected mean %s is not a probability.' %
                          expected_mean)
    probability = expected_mean if u == 1 else 1.0 - expected_mean
    if probability <= 0.0:
        raise DomainError('Observation %s has zero probability under the '
                          'expectation %s.' % (u, expected_mean))
    if u == 1:
        return -math.log(expected_mean)
    return -math.log1p(-expected_mean)


def gaussian_surprise(expected_mean: float, predictive_precision: float,
                      u: float) -> float:
    """Negative log density of ``u`` under N(expected_mean,
    1 / predictive_precision).

    >>> gaussian_surprise(0.0, 2 * math.pi, 0.0)
    0.0

    :raises DomainError: An input is not finite or the precision is not
        positive.
    """
    if not (math.isfinite(expected_mean) and math.isfinite(u) and
            math.isfinite(predictive_precision)):
        raise DomainError('Gaussian surprise needs finite inputs.')
    if not predictive_precision > 0.0:
        raise DomainError('Predictive precision must be positive, got %s.' %
                          predictive_precision)
    error = u - expected_mean
    return 0.5 * (math.log(2.0 * math.pi / predictive_precision) +
                  predictive_precision * error * error)


def observation_surprise(net: Network, node: int) -> float:
    """The surprise of the observation received by a node at this step."""
    attrs = net.attributes[node]
    if net.node_kinds[node] is NodeKind.BINARY:
        logit = _binary_logit(net, node)
        if attrs.observation == 0:
            logit = -logit
        return -float(special.log_expit(logit))
    predictive_variance = (1.0 / attrs.expected_precision +
                           1.0 / attrs.extra['observation_precision'])
    return gaussian_surprise(attrs.expected_mean, 1.0 / predictive_variance,
                             attrs.observation)


def update_functions() -> dict:
    """The registry of the generalized HGF update functions."""
    entries = (
        UpdateFunction('continuous_prediction', hgf_network.PREDICTION,
                       continuous_prediction),
        UpdateFunction('binary_prediction', hgf_network.PREDICTION,
                       binary_prediction),
        UpdateFunction('continuous_prediction_error',
                       hgf_network.PREDICTION_ERROR,
                       continuous_prediction_error),
        UpdateFunction('binary_prediction_error',
                       hgf_network.PREDICTION_ERROR,
                       binary_prediction_error),
        UpdateFunction('continuous_posterior_update',
                       hgf_network.POSTERIOR_UPDATE, posterior_update),
    )
    return {entry.name: entry for entry in entries}


#: Per-level defaults of the presets, indexed by level - 1.
PRESET_DEFAULTS = {
    'binary': {'tonic_volatility': (0.0, -3.0, -6.0),
               'mean': (0.0, 0.0, 0.0),
               'precision': (1.0, 1.0, 1.0)},
    'continuous': {'tonic_volatility': (-3.0, -6.0, -6.0),
                   'mean': (0.0, 0.0, 0.0),
                   'precision': (1.0, 1.0, 1.0)},
}

#: The preset names understood by :meth:`PresetSpec.from_name`.
PRESET_NAMES = ('binary-2', 'binary-3', 'continuous-2', 'continuous-3')


class PresetSpec(SchemaRecord):
    """Description of a standard two or three level HGF.

    The per-level lists start at the first level (the node receiving the
    observations); ``coupling`` holds the strength between consecutive
    levels. A zero strength disables a coupling while keeping the node.
    """

    FIELDS = Schema(
        family={'type': 'str', 'required': True, 'default': 'binary',
                'enum': {'binary', 'continuous'}},
        levels={'type': 'int', 'required': True, 'default': 3,
                'enum': {2, 3}},
        tonic_volatility={'type': 'list', 'member_type': 'float'},
        mean={'type': 'list', 'member_type': 'float'},
        precision={'type': 'list', 'member_type': 'float'},
        coupling={'type': 'list', 'member_type': 'float', 'member_min': 0.0},
        observation_precision={'type': 'float', 'default': 1.0,
                               'exclusive_min': 0.0},
    )

    @classmethod
    def from_name(cls, name: str, **kwargs) -> 'PresetSpec':
        """``binary-2``, ``binary-3``, ``continuous-2`` or ``continuous-3``."""
        if name not in PRESET_NAMES:
            raise ValidationException('Unknown preset "%s", expected one of %s.'
                                      % (name, list(PRESET_NAMES)))
        family, levels = name.split('-')
        return cls(family=family, levels=int(levels), **kwargs)

    @property
    def name(self) -> str:
        return '%s-%s' % (self.family, self.levels)

    def perfect(self) -> NoReturn:
        super(PresetSpec, self).perfect()
        defaults = PRESET_DEFAULTS.get(self.family)
        if defaults is None or self.levels not in (2, 3):
            return
        for key, values in defaults.items():
            if self[key] is None:
                self[key] = list(values[:self.levels])
        if self.coupling is None:
            self.coupling = [1.0] * (self.levels - 1)

    def validate(self, raise_validation_exception: bool = True) -> list[str]:
        value_errors = super(PresetSpec, self).validate(False)
        if not value_errors:
            for key in ('tonic_volatility', 'mean', 'precision'):
                if len(self[key]) != self.levels:
                    value_errors.append('"%s" needs %s values, got %s.' %
                                        (key, self.levels, len(self[key])))
            if len(self.coupling) != self.levels - 1:
                value_errors.append('"coupling" needs %s values, got %s.' %
                                    (self.levels - 1, len(self.coupling)))
            for value in self.precision:
                if not value > 0:
                    value_errors.append('Precision %s must be positive.' %
                                        value)

        if value_errors and raise_validation_exception:
            raise ValidationException(value_errors)

        return value_errors


def preset(spec: Union[PresetSpec, str]) -> Network:
    """Build a fully wired standard network with its derived sequence.

    Binary family: x1 (binary) is value coupled to x2, x2 is volatility
    coupled to x3. Continuous family: x1 observes continuous inputs and
    every level above is a volatility parent of the level below.

    :raises ValidationException: The spec is invalid.
    """
    if isinstance(spec, str):
        spec = PresetSpec.from_name(spec)
    spec.validate()

    net = new_network()
    for level in range(spec.levels):
        kind = NodeKind.CONTINUOUS
        if spec.family == 'binary' and level == 0:
            kind = NodeKind.BINARY
        attrs = NodeAttributes(
            mean=float(spec.mean[level]),
            precision=float(spec.precision[level]),
            expected_mean=float(spec.mean[level]),
            expected_precision=float(spec.precision[level]),
            tonic_volatility=float(spec.tonic_volatility[level]))
        if level == 0 and spec.family == 'continuous':
            attrs.extra['observation_precision'] = spec.observation_precision
        add_node(net, kind, attrs)

    for level in range(1, spec.levels):
        coupling = Coupling.VOLATILITY
        if spec.family == 'binary' and level == 1:
            coupling = Coupling.VALUE
        add_edge(net, child=level - 1, parent=level, coupling=coupling,
                 strength=float(spec.coupling[level - 1]))

    net.sequence = derive_update_sequence(net)
    logger.debug('Built preset %s.', spec.name)
    return net


def _emit(net: Network, emitted: PredictionError):
    attrs = net.attributes[emitted.node]
    _check(net, emitted.node, emitted.value_pe, 'value prediction error')
    if emitted.volatility_pe is not None:
        _check(net, emitted.node, emitted.volatility_pe,
               'volatility prediction error')
    attrs.value_prediction_error = emitted.value_pe
    attrs.volatility_prediction_error = emitted.volatility_pe
    attrs.emission_step = net.time_step


def _strength(net: Network, child: int, parent: int, edge_type: str) -> float:
    position = net.edges[child]['%s_parents' % edge_type].index(parent)
    return net.attributes[child]['%s_coupling' % edge_type][position]


def _binary_logit(net: Network, node: int) -> float:
    logit = 0.0
    for strength, parent in zip(net.attributes[node].value_coupling,
                                net.edges[node].value_parents):
        logit += strength * net.attributes[parent].expected_mean
    return logit


def _check(net: Network, node: int, value: float, what: str):
    if not math.isfinite(value):
        raise NumericalFailureError(node, net.time_step,
                                    '%s is %s' % (what, value))


def _check_precision(net: Network, node: int, value: float, what: str):
    if not value > 0.0 or not math.isfinite(value):
        raise NumericalFailureError(node, net.time_step,
                                    '%s is %s' % (what, value))
