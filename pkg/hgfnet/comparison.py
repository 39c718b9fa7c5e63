"""Model comparison by expected log pointwise predictive density.

The ELPD of each model is estimated with WAIC from the pointwise log
likelihood of the actions over (thinned) posterior draws::

    lppd_i = log mean_s p(y_i | theta_s)
    p_i    = var_s log p(y_i | theta_s)
    elpd   = sum_i (lppd_i - p_i)

:func:`arviz.waic` computes the estimate and :func:`arviz.compare` the
ranking and the standard error of each difference to the best model.
"""
import logging
import math
from typing import Optional, Sequence

import arviz as az
import numpy as np
import pandas as pd

from hgfnet.core import Core
from hgfnet.exceptions import AlignmentError, ValidationException
from hgfnet.model import AgentModel
from hgfnet.posterior import LogPosterior
from hgfnet.priors import ParameterSpace
from hgfnet.sampling import PosteriorSamples

logger = logging.getLogger(__name__)

#: Upper bound on the posterior draws used per model.
MAX_DRAWS = 400

ESTIMATOR_NOTE = ('ELPD estimated with WAIC (widely applicable information '
                  'criterion) in place of PSIS leave-one-out cross-validation.')


def pointwise_log_likelihood_matrix(space: ParameterSpace, data,
                                    model: AgentModel,
                                    samples: PosteriorSamples,
                                    max_draws: int = MAX_DRAWS) -> np.ndarray:
    """Log likelihood of every trial under thinned posterior draws, shape
    (chains, kept draws, trials)."""
    target = LogPosterior(space, data, model)
    per_chain = max(1, min(samples.n_draws, max_draws // samples.n_chains))
    kept = np.unique(np.linspace(0, samples.n_draws - 1, per_chain)
                     .round().astype(int))
    matrix = np.array([[target.pointwise(samples.transformed[chain, draw])
                        for draw in kept]
                       for chain in range(samples.n_chains)])
    return matrix


class ComparisonReport:
    """Ranking of models by ELPD, best first.

    ``table`` holds one row per model (``rank``, ``elpd``, ``p_waic``,
    ``se``, ``elpd_diff``, ``dse``, ``weight``); ``pointwise`` keeps each
    model's log likelihood matrix so the totals can be recomputed.
    """

    def __init__(self, table: pd.DataFrame, pointwise: dict):
        self.table = table
        self.pointwise = pointwise
        self.note = ESTIMATOR_NOTE

    def __repr__(self):
        return '<ComparisonReport ranking=%s>' % self.ranking

    @property
    def ranking(self) -> list[str]:
        return list(self.table.index)

    def to_dict(self) -> dict:
        rows = []
        for name, row in zip(self.table.index,
                             self.table.to_dict(orient='records')):
            rows.append(Core(model=name, **{key: _plain(value)
                                            for key, value in row.items()}))
        return {'estimator': 'waic', 'note': self.note, 'models': rows}


def _plain(value):
    if isinstance(value, (np.floating, float)):
        return None if math.isnan(value) else float(value)
    if isinstance(value, (np.integer, np.bool_)):
        return value.item()
    return value


def waic_table(pointwise: dict) -> pd.DataFrame:
    """Rank log likelihood matrices shaped (chains, draws, trials)."""
    trials = {name: matrix.shape[-1] for name, matrix in pointwise.items()}
    if len(set(trials.values())) > 1:
        raise AlignmentError('The models were scored on different trial '
                             'counts: %s' % trials)
    data = {}
    for name, matrix in pointwise.items():
        data[name] = az.from_dict(
            posterior={'draw_index': np.zeros(matrix.shape[:2])},
            log_likelihood={'y': matrix})
    compared = az.compare(data, ic='waic', scale='log')
    table = pd.DataFrame({
        'rank': compared['rank'].astype(int),
        'elpd': compared['elpd_waic'].astype(float),
        'p_waic': compared['p_waic'].astype(float),
        'se': compared['se'].astype(float),
        'elpd_diff': compared['elpd_diff'].astype(float),
        'dse': compared['dse'].astype(float),
        'weight': compared['weight'].astype(float),
    }, index=compared.index)
    table.index.name = 'model'
    return table.sort_values('rank', kind='stable')


def compare(models: Sequence[AgentModel], data, samples: Sequence,
            spaces: Sequence[ParameterSpace],
            names: Optional[Sequence[str]] = None,
            max_draws: int = MAX_DRAWS) -> ComparisonReport:
    """Compare fitted models on the same data.

    :param data: The subject's inputs and actions, or one per model.
    :param samples: The posterior draws of each model.
    :param spaces: The parameter space each model was sampled in.
    :raises ValidationException: Fewer than two models or unequal list
        lengths.
    :raises AlignmentError: The models see different trial counts.
    """
    if len(models) < 2:
        raise ValidationException('Comparison needs at least two models.')
    if not len(models) == len(samples) == len(spaces):
        raise ValidationException('%s models, %s sample sets and %s spaces.'
                                  % (len(models), len(samples), len(spaces)))
    names = list(names) if names is not None else [model.name
                                                   for model in models]
    if len(set(names)) != len(names):
        names = ['%s_%s' % (name, index) for index, name in enumerate(names)]
    per_model = data if isinstance(data, list) else [data] * len(models)
    if len(per_model) != len(models):
        raise ValidationException('%s data sets for %s models.' %
                                  (len(per_model), len(models)))

    pointwise = {}
    for name, model, space, draws, subject in zip(names, models, spaces,
                                                  samples, per_model):
        pointwise[name] = pointwise_log_likelihood_matrix(
            space, subject, model, draws, max_draws)
        logger.debug('Scored %s on %s draws.', name,
                     pointwise[name].shape[:2])
    report = ComparisonReport(waic_table(pointwise), pointwise)
    logger.info('Model ranking: %s.', report.ranking)
    return report
