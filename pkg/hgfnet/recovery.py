"""Parameter recovery: simulate agents with known parameters, refit them and
compare the estimates with the truth."""
import logging
import math
from typing import NamedTuple, Optional, Sequence

import numpy as np
import pandas as pd
from scipy import stats

from hgfnet.exceptions import HgfError, ValidationException
from hgfnet.fitting import batch_fit
from hgfnet.ghgf import preset
from hgfnet.inputs import InputSeries, switching_task
from hgfnet.model import AgentModel
from hgfnet.priors import ParameterSpace, default_parameter_space
from hgfnet.response import ResponseModel

logger = logging.getLogger(__name__)

OMEGA_RANGE = (-4.5, -1.5)
LOG_TEMPERATURE_RANGE = (math.log(0.5), math.log(4.0))
TEMPERATURE_TARGET = 'response.inverse_temperature'


class SimulatedSubject(NamedTuple):
    """Inputs with simulated actions and the parameters behind them.

    ``data`` is *None* when the simulation failed; ``error`` then says why.
    """

    subject: int
    data: Optional[InputSeries]
    truth: dict
    error: Optional[str]


def simulate_dataset(model: AgentModel, inputs: InputSeries,
                     n_subjects: int = 50,
                     omega_range: Sequence[float] = OMEGA_RANGE,
                     log_temperature_range: Sequence[float] =
                     LOG_TEMPERATURE_RANGE,
                     omega_target: str = 'node.1.tonic_volatility',
                     seed: int = 0) -> list[SimulatedSubject]:
    """Draw true parameters uniformly and simulate each subject's actions on
    the same inputs.

    :raises ValidationException: A range is not ordered.
    """
    for name, (lower, upper) in (('omega_range', omega_range),
                                 ('log_temperature_range',
                                  log_temperature_range)):
        if not lower <= upper:
            raise ValidationException('%s %s is not ordered.' %
                                      (name, [lower, upper]))
    if n_subjects < 1:
        raise ValidationException('n_subjects must be positive, got %s.' %
                                  n_subjects)

    rng = np.random.default_rng(seed)
    omegas = rng.uniform(omega_range[0], omega_range[1], n_subjects)
    log_temperatures = rng.uniform(log_temperature_range[0],
                                   log_temperature_range[1], n_subjects)
    subjects = []
    for subject in range(n_subjects):
        truth = {omega_target: float(omegas[subject]),
                 TEMPERATURE_TARGET: float(math.exp(log_temperatures[subject]))}
        try:
            data, _ = model.simulate(inputs, truth,
                                     seed=int(rng.integers(2 ** 32)))
            error = None
        except HgfError as failure:
            logger.exception('Simulation of subject %s failed.', subject)
            data, error = None, str(failure)
        subjects.append(SimulatedSubject(subject, data, truth, error))
    return subjects


class RecoveryReport:
    """True and recovered parameters per subject, with per-parameter
    Pearson correlations and unit-line residuals.

    ``frame`` holds one row per subject; excluded subjects (failed
    simulation or fit) keep their truth and an error message. Estimates at
    an optimization bound are flagged. A correlation is *nan* when fewer
    than two subjects remain or a column is constant.
    """

    COLUMNS = ('subject', 'true_omega', 'true_log_temperature',
               'estimated_omega', 'estimated_log_temperature',
               'residual_omega', 'residual_log_temperature', 'at_bound',
               'excluded', 'error')

    def __init__(self, frame: pd.DataFrame):
        self.frame = frame.loc[:, list(self.COLUMNS)]
        included = self.frame[~self.frame['excluded']]
        self.correlations = {
            'omega': _pearson(included['true_omega'],
                              included['estimated_omega']),
            'log_temperature': _pearson(included['true_log_temperature'],
                                        included['estimated_log_temperature']),
        }

    def __repr__(self):
        return '<RecoveryReport subjects=%s excluded=%s r=%s>' % (
            self.n_subjects, self.n_excluded, self.correlations)

    @property
    def n_subjects(self) -> int:
        return len(self.frame)

    @property
    def n_excluded(self) -> int:
        return int(self.frame['excluded'].sum())


def _pearson(truth: pd.Series, estimate: pd.Series) -> float:
    truth = truth.to_numpy(dtype=float)
    estimate = estimate.to_numpy(dtype=float)
    if len(truth) < 2 or np.ptp(truth) == 0 or np.ptp(estimate) == 0:
        return math.nan
    return float(stats.pearsonr(truth, estimate)[0])


def recover(n_subjects: int = 50, trials: int = 320,
            omega_range: Sequence[float] = OMEGA_RANGE,
            log_temperature_range: Sequence[float] = LOG_TEMPERATURE_RANGE,
            seed: int = 0, model: Optional[AgentModel] = None,
            space: Optional[ParameterSpace] = None, workers: int = 1,
            restarts: int = 5) -> RecoveryReport:
    """Simulate, refit and correlate.

    Every subject sees the same switching task inputs. The model defaults
    to the three level binary HGF with a temperature sigmoid; the space to
    the tonic volatility of node 1 and the inverse temperature.
    """
    model = model or AgentModel(preset('binary-3'),
                                ResponseModel(family='temperature-sigmoid'))
    space = space or default_parameter_space()
    if TEMPERATURE_TARGET not in space.names:
        raise ValidationException('Recovery needs "%s" in the parameter '
                                  'space.' % TEMPERATURE_TARGET)
    omega_target = next(name for name in space.names
                        if name != TEMPERATURE_TARGET)

    inputs = switching_task(trials=trials, seed=seed)
    subjects = simulate_dataset(model, inputs, n_subjects, omega_range,
                                log_temperature_range, omega_target, seed)
    simulated = [subject for subject in subjects if subject.data is not None]
    fits = {}
    if simulated:
        results = batch_fit(space, [subject.data for subject in simulated],
                            model, mode='map', workers=workers, seed=seed,
                            restarts=restarts)
        fits = {subject.subject: result
                for subject, result in zip(simulated, results)}

    rows = []
    for subject in subjects:
        true_omega = subject.truth[omega_target]
        true_log_t = math.log(subject.truth[TEMPERATURE_TARGET])
        fit = fits.get(subject.subject)
        error = subject.error or (fit.error if fit is not None else None)
        if error is None:
            estimated_omega = fit.estimate[omega_target]
            estimated_log_t = math.log(fit.estimate[TEMPERATURE_TARGET])
            at_bound = any(fit.at_bound.values())
        else:
            estimated_omega = estimated_log_t = math.nan
            at_bound = False
        rows.append({
            'subject': subject.subject,
            'true_omega': true_omega,
            'true_log_temperature': true_log_t,
            'estimated_omega': estimated_omega,
            'estimated_log_temperature': estimated_log_t,
            'residual_omega': estimated_omega - true_omega,
            'residual_log_temperature': estimated_log_t - true_log_t,
            'at_bound': at_bound,
            'excluded': error is not None,
            'error': error or '',
        })
    report = RecoveryReport(pd.DataFrame(rows, columns=RecoveryReport.COLUMNS))
    logger.info('Recovery of %s subjects: %s.', n_subjects,
                report.correlations)
    return report
