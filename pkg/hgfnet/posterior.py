"""The log posterior of agent parameters given inputs and actions."""
import logging
import math
from typing import Sequence, Union

import numpy as np

from hgfnet.exceptions import DomainError, PropagationError
from hgfnet.inputs import InputSeries
from hgfnet.model import AgentModel
from hgfnet.priors import ParameterSpace

logger = logging.getLogger(__name__)


def as_subject(data: Union[InputSeries, tuple]) -> InputSeries:
    """An input series holding actions, from a series or an
    (inputs, actions) pair."""
    if isinstance(data, tuple):
        inputs, actions = data
        return inputs.with_actions(actions)
    data.require_actions()
    return data


class LogPosterior:
    """Callable log posterior density on the transformed parameter scale.

    Propagation failures and response domain failures map to ``-inf`` so a
    sampler rejects the proposal. Instances can be pickled and sent to
    worker processes.
    """

    def __init__(self, space: ParameterSpace, data, model: AgentModel):
        self.space = space
        self.data = as_subject(data)
        self.model = model

    def __call__(self, transformed: Sequence[float]) -> float:
        transformed = self.space.check(transformed)
        log_prior = self.space.log_prior(transformed)
        if log_prior == -math.inf:
            return -math.inf
        try:
            pointwise = self.pointwise(transformed)
        except (PropagationError, DomainError) as error:
            logger.debug('Rejected %s: %s', transformed.tolist(), error)
            return -math.inf
        total = log_prior + float(np.sum(pointwise))
        return total if math.isfinite(total) else -math.inf

    def pointwise(self, transformed: Sequence[float],
                  return_clipped: bool = False):
        """Per-trial log likelihood at a parameter point."""
        return self.model.pointwise_log_likelihood(
            self.data, self.space.values(transformed), return_clipped)


def log_posterior(space: ParameterSpace, params: Sequence[float], data,
                  model: AgentModel) -> float:
    """Log prior (with Jacobians) plus the response log likelihood.

    :param params: A point on the transformed scale.
    :return: The log posterior, or ``-inf`` outside the prior support or when
        the network fails to propagate.
    :raises AlignmentError: *params* does not match the space dimension.
    """
    return LogPosterior(space, data, model)(params)
