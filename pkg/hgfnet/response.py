"""Response models: from belief trajectories to action probabilities.

A response model reads the expected mean of one binary node and maps it to
the probability of choosing action 1. The mapping is looked up by family
name in :data:`RESPONSE_FUNCTIONS`; new families are added with
:func:`register_response_function`::

    >>> model = ResponseModel(family='temperature-sigmoid',
    ...                       inverse_temperature=2.0)
    >>> round(float(action_probability([0.7], model)[0]), 6)
    0.844828
    >>> round(log_likelihood([0.7], [1], model), 6)
    -0.168623

"""
import logging
from typing import Callable, NoReturn

import numpy as np
from scipy import special

from hgfnet.exceptions import AlignmentError, DomainError, ValidationException
from hgfnet.network import Trajectory
from hgfnet.schema import Schema, SchemaRecord

logger = logging.getLogger(__name__)

#: Probabilities are kept in [PROBABILITY_FLOOR, 1 - PROBABILITY_FLOOR]
#: before taking logs or drawing actions.
PROBABILITY_FLOOR = 1e-12

#: The registry of response functions: f(expected means, model) -> p(y=1).
RESPONSE_FUNCTIONS = {}


def register_response_function(family: str) -> Callable:
    """Decorator adding a response function to the registry."""

    def register(function: Callable) -> Callable:
        RESPONSE_FUNCTIONS[family] = function
        return function

    return register


@register_response_function('unit-sigmoid')
def unit_sigmoid(expected_mean: np.ndarray, model: 'ResponseModel'):
    return np.array(expected_mean, dtype=float)


@register_response_function('temperature-sigmoid')
def temperature_sigmoid(expected_mean: np.ndarray, model: 'ResponseModel'):
    """mu**t / (mu**t + (1 - mu)**t), computed on the logit scale."""
    temperature = model.inverse_temperature
    if temperature == 1.0:
        return np.array(expected_mean, dtype=float)
    return special.expit(temperature * special.logit(expected_mean))


class ResponseModel(SchemaRecord):
    """A named response family with its inverse temperature.

    ``node`` is the binary node whose expected mean drives the response.
    """

    FIELDS = Schema(
        family={'type': 'str', 'required': True,
                'default': 'temperature-sigmoid'},
        inverse_temperature={'type': 'float', 'default': 1.0,
                             'exclusive_min': 0.0, 'finite': True},
        node={'type': 'int', 'default': 0, 'min': 0},
    )

    def validate(self, raise_validation_exception: bool = True) -> list[str]:
        value_errors = super(ResponseModel, self).validate(False)
        if self.family not in RESPONSE_FUNCTIONS:
            value_errors.append(
                'The value "%s" for "family" not in enumeration %s.' %
                (self.family, sorted(RESPONSE_FUNCTIONS)))

        if value_errors and raise_validation_exception:
            raise ValidationException(value_errors)

        return value_errors

    def perfect(self) -> NoReturn:
        super(ResponseModel, self).perfect()
        if self.family == 'unit-sigmoid':
            self.inverse_temperature = 1.0


def expected_means(traj, node: int = 0) -> np.ndarray:
    """The expected means read by a response model.

    :param traj: A :class:`~hgfnet.network.Trajectory` or the series of
        expected means itself.
    """
    if isinstance(traj, Trajectory):
        return traj.expected_mean[:, node]
    return np.atleast_1d(np.asarray(traj, dtype=float))


def action_probability(traj, model: ResponseModel) -> np.ndarray:
    """Probability of action 1 at every trial.

    :raises DomainError: An expected mean lies outside (0, 1).
    """
    model.validate()
    means = expected_means(traj, model.node)
    outside = np.flatnonzero(~((means > 0.0) & (means < 1.0)))
    if len(outside):
        raise DomainError('Expected mean %s at trial %s lies outside (0, 1).'
                          % (means[outside[0]], outside[0]))
    return RESPONSE_FUNCTIONS[model.family](means, model)


def clip_probability(probability: np.ndarray) -> tuple[np.ndarray, int]:
    """The probabilities clipped away from 0 and 1, and how many were
    clipped."""
    clipped = np.clip(probability, PROBABILITY_FLOOR, 1.0 - PROBABILITY_FLOOR)
    return clipped, int(np.count_nonzero(clipped != probability))


def pointwise_log_likelihood(traj, actions, model: ResponseModel,
                             return_clipped: bool = False):
    """Log probability of each observed action.

    :raises AlignmentError: The actions and the trajectory differ in length.
    """
    actions = np.asarray(actions, dtype=float)
    probability = action_probability(traj, model)
    if len(actions) != len(probability):
        raise AlignmentError('%s actions for %s trials.' %
                             (len(actions), len(probability)))
    probability, clipped = clip_probability(probability)
    if clipped:
        logger.debug('Clipped %s response probabilities.', clipped)
    pointwise = np.where(actions == 1.0, np.log(probability),
                         np.log1p(-probability))
    if return_clipped:
        return pointwise, clipped
    return pointwise


def log_likelihood(traj, actions, model: ResponseModel) -> float:
    """Sum of the log probabilities of the actions."""
    return float(np.sum(pointwise_log_likelihood(traj, actions, model)))


def simulate_actions(traj, model: ResponseModel, seed=None) -> np.ndarray:
    """Bernoulli draws of the actions, reproducible for a given seed."""
    probability, _ = clip_probability(action_probability(traj, model))
    rng = np.random.default_rng(seed)
    return (rng.random(len(probability)) < probability).astype(float)
