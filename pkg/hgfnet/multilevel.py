"""Multilevel (hierarchical) posterior sampling over a group of subjects.

Every subject's parameters, on the transformed scale of the parameter
space, are ``theta_i = mu + sigma * z_i`` with group means ``mu``, group
standard deviations ``sigma`` (half-normal priors) and standard normal
offsets ``z_i`` (the non-centered parameterization).

A sweep of the sampler makes two kinds of Metropolis moves:

* a group move proposes new ``(mu, log sigma)`` and rescales every offset so
  that each ``theta_i`` stays fixed; the likelihood is then unchanged and
  the move costs no belief propagation,
* one move per subject proposes new offsets ``z_i`` and evaluates that
  subject's likelihood.

Proposal scales follow a Robbins-Monro recursion during warmup and are
frozen afterwards.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy import stats

from hgfnet.exceptions import (DomainError, PropagationError,
                               SamplerFailureError, ValidationException)
from hgfnet.model import AgentModel
from hgfnet.posterior import LogPosterior
from hgfnet.priors import ParameterSpace
from hgfnet.sampling import TARGET_ACCEPTANCE, PosteriorSamples

logger = logging.getLogger(__name__)

#: Smallest group for which group level inference is attempted.
MIN_SUBJECTS = 5


class GroupPrior(NamedTuple):
    """Normal(mean_mu, mean_sigma) prior on a group mean and HalfNormal(
    sd_scale) prior on the group standard deviation, transformed scale."""

    mean_mu: float
    mean_sigma: float
    sd_scale: float = 1.0


def default_group_priors(space: ParameterSpace) -> list[GroupPrior]:
    """Group mean priors taken from the individual priors where they are
    normal on the transformed scale."""
    priors = []
    for parameter in space.parameters:
        prior = parameter.prior
        normal_on_scale = (
            (prior.family == 'normal' and parameter.transform == 'identity')
            or (prior.family == 'log-normal' and parameter.transform == 'log'))
        if normal_on_scale:
            priors.append(GroupPrior(float(prior.args[0]),
                                     float(prior.args[1])))
        else:
            priors.append(GroupPrior(parameter.forward(prior.center()), 1.0))
    return priors


class _Hierarchy:
    """Log densities of the hierarchical model."""

    def __init__(self, space: ParameterSpace, dataset: Sequence,
                 model: AgentModel, group_priors: Sequence[GroupPrior]):
        self.space = space
        self.targets = [LogPosterior(space, data, model) for data in dataset]
        self.mean_mu = np.array([prior.mean_mu for prior in group_priors])
        self.mean_sigma = np.array([prior.mean_sigma
                                    for prior in group_priors])
        self.sd_scale = np.array([prior.sd_scale for prior in group_priors])

    def log_likelihood(self, subject: int, theta: np.ndarray) -> float:
        target = self.targets[subject]
        try:
            value = float(np.sum(target.pointwise(theta)))
        except (PropagationError, DomainError) as error:
            logger.debug('Subject %s rejected %s: %s', subject,
                         theta.tolist(), error)
            return -math.inf
        return value if math.isfinite(value) else -math.inf

    def log_group_prior(self, mu: np.ndarray, log_sigma: np.ndarray) -> float:
        sigma = np.exp(log_sigma)
        return float(np.sum(stats.norm.logpdf(mu, self.mean_mu,
                                              self.mean_sigma)) +
                     np.sum(stats.halfnorm.logpdf(sigma, scale=self.sd_scale))
                     + np.sum(log_sigma))

    def log_centered(self, mu: np.ndarray, log_sigma: np.ndarray,
                     theta: np.ndarray) -> float:
        """Group prior plus the population density of fixed subject
        parameters (rows of *theta*)."""
        return self.log_group_prior(mu, log_sigma) + float(np.sum(
            stats.norm.logpdf(theta, mu, np.exp(log_sigma))))


def _multilevel_chain(arguments: tuple) -> tuple:
    (space, dataset, model, group_priors, draws, warmup, seed,
     chain) = arguments
    rng = np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(chain,)))
    hierarchy = _Hierarchy(space, dataset, model, group_priors)
    subjects, dim = len(dataset), space.dim

    mu = hierarchy.mean_mu + 0.1 * rng.standard_normal(dim)
    log_sigma = np.log(0.5 * hierarchy.sd_scale)
    offsets = 0.1 * rng.standard_normal((subjects, dim))
    likelihood = np.empty(subjects)
    for subject in range(subjects):
        likelihood[subject] = hierarchy.log_likelihood(
            subject, mu + np.exp(log_sigma) * offsets[subject])
        if likelihood[subject] == -math.inf:
            raise SamplerFailureError('Subject %s has no finite likelihood '
                                      'at the starting point.' % subject)

    group_step = math.log(2.38 / math.sqrt(2 * dim) * 0.2)
    subject_steps = np.full(subjects, math.log(2.38 / math.sqrt(dim) * 0.5))
    group_accepted = 0
    subject_accepted = np.zeros(subjects, dtype=int)
    width = 2 * dim + subjects * dim
    states = np.empty((draws, width))
    natural = np.empty((draws, width))
    densities = np.empty(draws)
    accepted_after_warmup = 0
    moves_after_warmup = 0

    for iteration in range(warmup + draws):
        adapting = iteration < warmup
        rate = (iteration + 1) ** -0.6

        theta = mu + np.exp(log_sigma) * offsets
        current = hierarchy.log_centered(mu, log_sigma, theta)
        proposal = np.concatenate([mu, log_sigma]) + math.exp(group_step) * \
            rng.standard_normal(2 * dim)
        new_mu, new_log_sigma = proposal[:dim], proposal[dim:]
        candidate = hierarchy.log_centered(new_mu, new_log_sigma, theta)
        accept = math.exp(min(0.0, candidate - current)) \
            if math.isfinite(candidate) else 0.0
        if rng.random() < accept:
            mu, log_sigma = new_mu, new_log_sigma
            offsets = (theta - mu) / np.exp(log_sigma)
            group_accepted += adapting
            accepted_after_warmup += not adapting
        moves_after_warmup += not adapting
        if adapting:
            group_step += (accept - TARGET_ACCEPTANCE) * rate

        sigma = np.exp(log_sigma)
        for subject in range(subjects):
            proposed = offsets[subject] + math.exp(subject_steps[subject]) * \
                rng.standard_normal(dim)
            proposed_likelihood = hierarchy.log_likelihood(
                subject, mu + sigma * proposed)
            log_ratio = (proposed_likelihood - likelihood[subject] -
                         0.5 * float(proposed @ proposed) +
                         0.5 * float(offsets[subject] @ offsets[subject]))
            accept = math.exp(min(0.0, log_ratio)) \
                if math.isfinite(log_ratio) else 0.0
            if rng.random() < accept:
                offsets[subject] = proposed
                likelihood[subject] = proposed_likelihood
                subject_accepted[subject] += adapting
            if adapting:
                subject_steps[subject] += (accept - TARGET_ACCEPTANCE) * rate

        if iteration == warmup - 1 and (not group_accepted or
                                        not subject_accepted.all()):
            raise SamplerFailureError(
                'Chain %s rejected every warmup proposal of a block.' % chain)
        if not adapting:
            row = iteration - warmup
            theta = mu + sigma * offsets
            states[row] = np.concatenate([mu, log_sigma, offsets.reshape(-1)])
            natural[row] = np.concatenate([
                mu, sigma,
                np.array([space.to_natural(values) for values in theta])
                .reshape(-1)])
            densities[row] = (hierarchy.log_group_prior(mu, log_sigma) +
                              float(np.sum(stats.norm.logpdf(offsets))) +
                              float(np.sum(likelihood)))

    logger.debug('Multilevel chain %s: group acceptance %.3f.', chain,
                 accepted_after_warmup / max(1, moves_after_warmup))
    return (natural, states, densities,
            accepted_after_warmup / max(1, moves_after_warmup))


def parameter_names(space: ParameterSpace, subjects: int) -> list[str]:
    """``mu[...]`` and ``sigma[...]`` group parameters on the transformed
    scale, then ``target[i]`` subject parameters on the natural scale."""
    names = ['mu[%s]' % name for name in space.names]
    names += ['sigma[%s]' % name for name in space.names]
    names += ['%s[%s]' % (name, subject) for subject in range(subjects)
              for name in space.names]
    return names


def multilevel_sample(dataset: Sequence, model: AgentModel,
                      space: ParameterSpace,
                      group_priors: Optional[Sequence[GroupPrior]] = None,
                      chains: int = 4, draws: int = 1000, warmup: int = 1000,
                      seed: int = 0, workers: int = 1) -> PosteriorSamples:
    """Joint posterior of group means, group standard deviations and
    subject parameters.

    :param dataset: One input series with actions (or one (inputs, actions)
        pair) per subject.
    :raises ValidationException: Fewer than five subjects, fewer than two
        chains, or group priors not matching the space.
    :raises SamplerFailureError: A chain could not start or move.
    """
    if len(dataset) < MIN_SUBJECTS:
        raise ValidationException('Multilevel sampling needs at least %s '
                                  'subjects, got %s.' % (MIN_SUBJECTS,
                                                         len(dataset)))
    if chains < 2:
        raise ValidationException('Multilevel sampling needs at least two '
                                  'chains, got %s.' % chains)
    group_priors = list(group_priors or default_group_priors(space))
    if len(group_priors) != space.dim:
        raise ValidationException('%s group priors for %s parameters.' %
                                  (len(group_priors), space.dim))

    tasks = [(space, list(dataset), model, group_priors, draws, warmup, seed,
              chain) for chain in range(chains)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, chains)) as pool:
            results = list(pool.map(_multilevel_chain, tasks))
    else:
        results = [_multilevel_chain(task) for task in tasks]

    logger.info('Sampled a multilevel model of %s subjects, %s chains.',
                len(dataset), chains)
    return PosteriorSamples(
        draws=np.array([result[0] for result in results]),
        transformed=np.array([result[1] for result in results]),
        names=parameter_names(space, len(dataset)),
        acceptance=np.array([result[3] for result in results]),
        log_density=np.array([result[2] for result in results]))
