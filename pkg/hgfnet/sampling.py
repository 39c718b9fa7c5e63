"""Adaptive random walk Metropolis sampling and convergence diagnostics.

.. contents::

======
Usage
======

:func:`sample_log_density` draws from any log density on an unconstrained
space; :func:`sample` draws the parameters of an agent model given a
subject's inputs and actions.

Each chain owns a generator seeded from the master seed and its chain
index, so the draws do not depend on how chains are scheduled. During
warmup the proposal scale follows a Robbins-Monro recursion toward the
target acceptance rate, and halfway through warmup the proposal shape is
set to the covariance of the draws so far. Adaptation is frozen once
warmup ends::

    >>> def standard_normal(x):
    ...     return -0.5 * float(x @ x)
    >>> samples = sample_log_density(standard_normal, [0.0], chains=2,
    ...                              draws=200, warmup=200, seed=3)
    >>> samples.draws.shape
    (2, 200, 1)

Diagnostics use :mod:`arviz`: rank normalized split R-hat, bulk effective
sample size, Monte Carlo standard error and the highest density interval
over the pooled draws.

"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional, Sequence

import arviz as az
import numpy as np
import pandas as pd

from hgfnet.core import Core
from hgfnet.exceptions import (DiagnosticsError, SamplerFailureError,
                               ValidationException)
from hgfnet.model import AgentModel
from hgfnet.posterior import LogPosterior
from hgfnet.priors import ParameterSpace

logger = logging.getLogger(__name__)

#: Acceptance rate targeted by the warmup adaptation.
TARGET_ACCEPTANCE = 0.3

#: Attempts at finding a finite starting point for a chain.
START_ATTEMPTS = 100


class PosteriorSamples:
    """Draws of shape (chains, draws, parameters).

    ``draws`` holds the natural scale values and ``transformed`` the values
    on the scale the chains moved in.
    """

    def __init__(self, draws: np.ndarray, transformed: np.ndarray,
                 names: Sequence[str], acceptance: np.ndarray,
                 log_density: np.ndarray):
        self.draws = np.asarray(draws, dtype=float)
        self.transformed = np.asarray(transformed, dtype=float)
        self.names = list(names)
        self.acceptance = np.asarray(acceptance, dtype=float)
        self.log_density = np.asarray(log_density, dtype=float)

    def __repr__(self):
        return '<PosteriorSamples chains=%s draws=%s parameters=%s>' % (
            self.n_chains, self.n_draws, self.names)

    @property
    def n_chains(self) -> int:
        return self.draws.shape[0]

    @property
    def n_draws(self) -> int:
        return self.draws.shape[1]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def chains_of(self, name: str) -> np.ndarray:
        """Natural scale draws of one parameter, shape (chains, draws)."""
        return self.draws[:, :, self.index(name)]

    def pooled(self, name: str) -> np.ndarray:
        return self.chains_of(name).reshape(-1)

    def pooled_transformed(self) -> np.ndarray:
        """All transformed draws, shape (chains * draws, parameters)."""
        return self.transformed.reshape(-1, self.transformed.shape[2])

    def mean(self) -> np.ndarray:
        return self.draws.reshape(-1, len(self.names)).mean(axis=0)

    def to_frame(self) -> pd.DataFrame:
        """One row per chain and draw, one column per parameter."""
        chains, draws = self.n_chains, self.n_draws
        frame = pd.DataFrame({'chain': np.repeat(np.arange(chains), draws),
                              'draw': np.tile(np.arange(draws), chains)})
        for position, name in enumerate(self.names):
            frame[name] = self.draws[:, :, position].reshape(-1)
        return frame


def _chain_rng(seed: int, chain: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(chain,)))


def _find_start(log_density: Callable, initial: np.ndarray,
                rng: np.random.Generator, jitter: float) -> tuple:
    for attempt in range(START_ATTEMPTS):
        spread = jitter if attempt else 0.1 * jitter
        point = initial + spread * rng.standard_normal(len(initial))
        value = log_density(point)
        if value > -math.inf:
            return point, value
    raise SamplerFailureError('No finite log density found near %s after %s '
                              'attempts.' % (initial.tolist(), START_ATTEMPTS))


def run_chain(log_density: Callable, initial: Sequence[float], draws: int,
              warmup: int, seed: int, chain: int,
              scale: Optional[Sequence[float]] = None,
              target_acceptance: float = TARGET_ACCEPTANCE) -> tuple:
    """One adaptive Metropolis chain.

    :return: The post-warmup draws (draws, dim), their log densities and the
        post-warmup acceptance rate.
    :raises SamplerFailureError: No finite start was found or every warmup
        proposal was rejected.
    """
    rng = _chain_rng(seed, chain)
    initial = np.asarray(initial, dtype=float)
    dim = len(initial)
    scale = np.ones(dim) * 0.5 if scale is None else np.asarray(scale, float)
    point, value = _find_start(log_density, initial, rng, float(scale.mean()))

    log_step = math.log(2.38 / math.sqrt(dim))
    factor = np.diag(scale)
    history = np.empty((warmup, dim))
    warmup_accepted = 0
    for iteration in range(warmup):
        proposal = point + math.exp(log_step) * (
            factor @ rng.standard_normal(dim))
        candidate = log_density(proposal)
        log_ratio = candidate - value
        accept_probability = 1.0 if log_ratio >= 0 else math.exp(log_ratio)
        if rng.random() < accept_probability:
            point, value = proposal, candidate
            warmup_accepted += 1
        history[iteration] = point
        log_step += (accept_probability - target_acceptance) / (
            iteration + 1) ** 0.6
        if iteration + 1 == warmup // 2 and warmup >= 20 * dim:
            factor = _proposal_factor(history[warmup // 4:iteration + 1],
                                      factor)
            log_step = math.log(2.38 / math.sqrt(dim))

    if warmup and not warmup_accepted:
        raise SamplerFailureError(
            'Chain %s rejected all %s warmup proposals.' % (chain, warmup))
    logger.debug('Chain %s warmup accepted %s of %s, step %.4g.', chain,
                 warmup_accepted, warmup, math.exp(log_step))

    step = math.exp(log_step)
    states = np.empty((draws, dim))
    densities = np.empty(draws)
    accepted = 0
    for iteration in range(draws):
        proposal = point + step * (factor @ rng.standard_normal(dim))
        candidate = log_density(proposal)
        log_ratio = min(0.0, candidate - value)
        if rng.random() < math.exp(log_ratio):
            point, value = proposal, candidate
            accepted += 1
        states[iteration] = point
        densities[iteration] = value
    return states, densities, accepted / draws if draws else 0.0


def _proposal_factor(history: np.ndarray, fallback: np.ndarray) -> np.ndarray:
    covariance = np.atleast_2d(np.cov(history, rowvar=False))
    covariance = covariance + 1e-8 * np.eye(len(covariance))
    if not np.all(np.isfinite(covariance)) or np.all(np.diag(covariance) <
                                                      1e-12):
        return fallback
    try:
        return np.linalg.cholesky(covariance)
    except np.linalg.LinAlgError:
        return fallback


def _run_chain_task(arguments: tuple) -> tuple:
    return run_chain(*arguments)


def sample_log_density(log_density: Callable, initial: Sequence[float],
                       chains: int = 4, draws: int = 1000,
                       warmup: int = 1000, seed: int = 0,
                       scale: Optional[Sequence[float]] = None,
                       workers: int = 1,
                       names: Optional[Sequence[str]] = None,
                       to_natural: Optional[Callable] = None
                       ) -> PosteriorSamples:
    """Sample a log density with independent adaptive Metropolis chains.

    :param initial: The point every chain starts near.
    :param workers: Chains run in that many processes; the log density must
        then be picklable. The draws do not depend on it.
    :param to_natural: Maps a transformed point to the natural scale; the
        identity by default.
    :raises SamplerFailureError: A chain failed to start or to move.
    """
    if chains < 1:
        raise SamplerFailureError('At least one chain is needed.')
    initial = np.asarray(initial, dtype=float)
    tasks = [(log_density, initial, draws, warmup, seed, chain, scale)
             for chain in range(chains)]
    if workers > 1 and chains > 1:
        with ProcessPoolExecutor(max_workers=min(workers, chains)) as pool:
            results = list(pool.map(_run_chain_task, tasks))
    else:
        results = [_run_chain_task(task) for task in tasks]

    transformed = np.array([states for states, _, _ in results])
    densities = np.array([values for _, values, _ in results])
    acceptance = np.array([rate for _, _, rate in results])
    if to_natural is None:
        natural = transformed.copy()
    else:
        natural = np.apply_along_axis(to_natural, 2, transformed)
    names = list(names) if names is not None else [
        'x%s' % position for position in range(len(initial))]
    logger.info('Sampled %s chains of %s draws, acceptance %s.', chains,
                draws, np.round(acceptance, 3).tolist())
    return PosteriorSamples(natural, transformed, names, acceptance,
                            densities)


def sample(space: ParameterSpace, data, model: AgentModel, chains: int = 4,
           draws: int = 1000, warmup: int = 1000, seed: int = 0,
           workers: int = 1, initial: Optional[Sequence[float]] = None
           ) -> PosteriorSamples:
    """Posterior draws of the parameters of an agent model.

    Chains start near *initial* (the prior center by default) and move on
    the transformed scale; the draws are reported on the natural scale.

    :raises ValidationException: Fewer than two chains.
    :raises SamplerFailureError: A chain failed.
    """
    if chains < 2:
        raise ValidationException('Posterior sampling needs at least two '
                                  'chains, got %s.' % chains)
    target = LogPosterior(space, data, model)
    if initial is None:
        initial = space.center()
    scale = [0.5] * space.dim
    return sample_log_density(target, initial, chains=chains, draws=draws,
                              warmup=warmup, seed=seed, scale=scale,
                              workers=workers, names=space.names,
                              to_natural=space.to_natural)


def r_hat(chains: np.ndarray) -> float:
    """Rank normalized split R-hat of draws shaped (chains, draws); 1.0 for
    constant draws."""
    chains = np.asarray(chains, dtype=float)
    if np.ptp(chains) == 0:
        return 1.0
    return float(az.rhat(chains, method='rank'))


def ess_bulk(chains: np.ndarray) -> float:
    chains = np.asarray(chains, dtype=float)
    if np.ptp(chains) == 0:
        return float(chains.size)
    return float(az.ess(chains, method='bulk'))


def mcse_mean(chains: np.ndarray) -> float:
    chains = np.asarray(chains, dtype=float)
    if np.ptp(chains) == 0:
        return 0.0
    return float(az.mcse(chains, method='mean'))


def hdi(values: np.ndarray, mass: float = 0.94) -> tuple[float, float]:
    """Narrowest interval holding ``floor(mass * n)`` + 1 of the sorted
    pooled draws.

    >>> hdi(np.arange(1000.0), 0.94)
    (0.0, 940.0)
    """
    if not 0.0 < mass < 1.0:
        raise DiagnosticsError('HDI mass must lie in (0, 1), got %s.' % mass)
    values = np.asarray(values, dtype=float).reshape(-1)
    lower, upper = az.hdi(values, hdi_prob=mass)
    return float(lower), float(upper)


class SummaryRow(Core):
    """Posterior summary of one parameter."""


def summarize(samples: PosteriorSamples,
              hdi_mass: float = 0.94) -> list[SummaryRow]:
    """Mean, sd, split R-hat, bulk ESS, MCSE and HDI of every parameter.

    :raises DiagnosticsError: Fewer than two chains.
    """
    if samples.n_chains < 2:
        raise DiagnosticsError('Diagnostics need at least two chains, got '
                               '%s.' % samples.n_chains)
    if samples.n_draws < 4:
        raise DiagnosticsError('Diagnostics need at least four draws per '
                               'chain, got %s.' % samples.n_draws)
    rows = []
    for name in samples.names:
        chains = samples.chains_of(name)
        pooled = chains.reshape(-1)
        lower, upper = hdi(pooled, hdi_mass)
        rows.append(SummaryRow(
            parameter=name,
            mean=float(np.mean(pooled)),
            sd=float(np.std(pooled, ddof=1)),
            r_hat=r_hat(chains),
            ess_bulk=ess_bulk(chains),
            mcse_mean=mcse_mean(chains),
            hdi_lower=lower,
            hdi_upper=upper,
            hdi_mass=float(hdi_mass),
        ))
    return rows


def summary_frame(rows: Sequence[SummaryRow]) -> pd.DataFrame:
    return pd.DataFrame([dict(row) for row in rows]).set_index('parameter')
