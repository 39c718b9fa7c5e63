"""Maximum a posteriori fitting, for one subject or a whole dataset.

:func:`map_fit` maximizes the log posterior with Nelder-Mead from several
starting points: the prior center first, then draws from the prior.
:func:`batch_fit` fits every subject independently, in worker processes
when asked to; each subject gets a seed derived from the master seed and
its index, so the results do not depend on the number of workers.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy import optimize

from hgfnet.core import Core
from hgfnet.exceptions import (HgfError, OptimizationFailureError,
                               ValidationException)
from hgfnet.model import AgentModel
from hgfnet.posterior import LogPosterior
from hgfnet.priors import ParameterSpace
from hgfnet.sampling import sample, summarize

logger = logging.getLogger(__name__)

#: Nelder-Mead tolerances on the transformed scale.
OPTIMIZER_OPTIONS = {'xatol': 1e-8, 'fatol': 1e-10, 'maxiter': 4000}

FIT_MODES = ('map', 'sample')


class FitResult(Core):
    """The outcome of fitting one subject.

    ``estimate`` maps parameter targets to natural scale values;
    ``transformed`` holds the same point on the transformed scale. A failed
    fit keeps its ``error`` message and no estimate.
    """


def subject_seed(seed: int, subject: int) -> int:
    """The seed of one subject, derived from the master seed."""
    sequence = np.random.SeedSequence(seed, spawn_key=(subject,))
    return int(sequence.generate_state(1)[0])


def maximize_log_density(log_density: Callable,
                         starts: Iterable[Sequence[float]],
                         bounds: Optional[list] = None) -> tuple:
    """Nelder-Mead maximization from each start; the best end point wins.

    Starts with a non-finite log density are skipped.

    :return: The best point and its log density.
    :raises OptimizationFailureError: No start has a finite log density.
    """

    def objective(point):
        value = log_density(point)
        return -value if math.isfinite(value) else math.inf

    best_point, best_value = None, -math.inf
    for start in starts:
        start = np.asarray(start, dtype=float)
        if bounds is not None:
            start = np.clip(start, [-math.inf if lower is None else lower
                                    for lower, _ in bounds],
                            [math.inf if upper is None else upper
                             for _, upper in bounds])
        if not math.isfinite(objective(start)):
            continue
        result = optimize.minimize(objective, start, method='Nelder-Mead',
                                   bounds=bounds, options=OPTIMIZER_OPTIONS)
        value = -float(result.fun)
        if value > best_value:
            best_point, best_value = np.asarray(result.x, dtype=float), value

    if best_point is None:
        raise OptimizationFailureError(
            'Every optimization start has a log density of -inf.')
    return best_point, best_value


def map_fit(space: ParameterSpace, data, model: AgentModel,
            restarts: int = 5, seed: int = 0) -> FitResult:
    """Maximum a posteriori estimate of the parameters.

    :param restarts: Number of starts; the prior center plus
        ``restarts - 1`` prior draws.
    :raises OptimizationFailureError: Every start has a log posterior of
        -inf.
    """
    if restarts < 1:
        raise ValidationException('restarts must be positive, got %s.' %
                                  restarts)
    target = LogPosterior(space, data, model)
    rng = np.random.default_rng(seed)
    starts = [space.center()]
    if restarts > 1:
        starts.extend(space.draw(rng, restarts - 1))
    point, value = maximize_log_density(target, starts, space.bounds())
    _, clipped = target.pointwise(point, return_clipped=True)
    return FitResult(
        estimate=space.values(point),
        transformed=point.tolist(),
        log_posterior=value,
        at_bound=dict(zip(space.names, space.at_bound(point))),
        clipped=clipped,
        error=None,
    )


def _sample_fit(space: ParameterSpace, data, model: AgentModel, seed: int,
                sampler: dict) -> FitResult:
    samples = sample(space, data, model, seed=seed, **sampler)
    rows = summarize(samples)
    means = samples.mean()
    transformed = samples.pooled_transformed().mean(axis=0)
    return FitResult(
        estimate=dict(zip(space.names, means.tolist())),
        transformed=transformed.tolist(),
        log_posterior=float(np.max(samples.log_density)),
        at_bound=dict(zip(space.names, [False] * space.dim)),
        clipped=0,
        error=None,
        summary=[dict(row) for row in rows],
    )


def _fit_subject(task: tuple) -> FitResult:
    subject, space, data, model, mode, seed, restarts, sampler = task
    try:
        if mode == 'map':
            result = map_fit(space, data, model, restarts=restarts, seed=seed)
        else:
            result = _sample_fit(space, data, model, seed, sampler)
    except HgfError as error:
        logger.exception('Fit of subject %s failed.', subject)
        result = FitResult(estimate=None, transformed=None,
                           log_posterior=-math.inf, at_bound=None,
                           clipped=0, error=str(error))
    result.subject = subject
    result.seed = seed
    logger.debug('Fitted subject %s.', subject)
    return result


def batch_fit(space: ParameterSpace, dataset: Sequence, model: AgentModel,
              mode: str = 'map', workers: int = 1, seed: int = 0,
              restarts: int = 5, sampler: Optional[dict] = None
              ) -> list[FitResult]:
    """Fit every subject of a dataset independently.

    :param dataset: Input series holding actions, or (inputs, actions)
        pairs, one per subject.
    :param mode: ``map`` or ``sample``.
    :param sampler: Keyword arguments of :func:`~hgfnet.sampling.sample`
        for the ``sample`` mode (chains, draws, warmup).
    :return: One :class:`FitResult` per subject in dataset order; failed
        fits carry their error instead of raising.
    """
    if mode not in FIT_MODES:
        raise ValidationException('The value "%s" for "mode" not in '
                                  'enumeration %s.' % (mode, list(FIT_MODES)))
    if not len(dataset):
        raise ValidationException('The dataset is empty.')
    tasks = [(subject, space, data, model, mode, subject_seed(seed, subject),
              restarts, dict(sampler or {}))
             for subject, data in enumerate(dataset)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_fit_subject, tasks))
    else:
        results = [_fit_subject(task) for task in tasks]
    failed = sum(result.error is not None for result in results)
    logger.info('Fitted %s subjects, %s failed.', len(results), failed)
    return results
