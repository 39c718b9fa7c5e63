"""Input series fed to a network, and the bundled synthetic task.

An :class:`InputSeries` holds one row per time step: the observations of
every input column (*nan* where nothing was observed), an optional time
stamp and an optional binary action::

    >>> series = InputSeries([1.0, 0.0, float('nan')], time=[0.5, 1.0, 3.0])
    >>> series.dt.tolist()
    [1.0, 0.5, 2.0]
    >>> len(switching_task(trials=80, seed=1))
    80

"""
import logging
from typing import Iterable, Optional, Sequence

import numpy as np

from hgfnet.exceptions import EmptyInputError, IngestionError

logger = logging.getLogger(__name__)


class InputSeries:
    """Observations of shape (rows, input columns) with their clock.

    :param observations: A 1-d array (one input column) or a 2-d array.
    :param time: Strictly increasing time stamps. Without them the time
        step is 1.0 everywhere; with them the first step is 1.0 and the
        following steps are the successive differences.
    :param actions: Binary responses aligned with the rows.
    :param columns: The names of the input columns.
    :raises IngestionError: The time stamps are not strictly increasing, an
        action is not 0 or 1, or the lengths disagree.
    """

    def __init__(self, observations, time: Optional[Iterable] = None,
                 actions: Optional[Iterable] = None,
                 columns: Optional[Sequence[str]] = None):
        values = np.asarray(observations, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.ndim != 2:
            raise IngestionError('Observations must be a 1-d or 2-d array, '
                                 'got %s dimensions.' % values.ndim)
        self.observations = values
        rows = len(values)

        if columns is None:
            columns = ['u'] if values.shape[1] == 1 else [
                'u%s' % (column + 1) for column in range(values.shape[1])]
        self.columns = list(columns)
        if len(self.columns) != values.shape[1]:
            raise IngestionError('%s column names for %s input columns.' %
                                 (len(self.columns), values.shape[1]))

        if time is None:
            self.time = np.arange(1, rows + 1, dtype=float)
            self.dt = np.ones(rows)
            self.has_time = False
        else:
            self.time = np.asarray(time, dtype=float)
            if len(self.time) != rows:
                raise IngestionError('%s time stamps for %s rows.' %
                                     (len(self.time), rows))
            steps = np.diff(self.time)
            bad = np.flatnonzero(~(steps > 0))
            if len(bad):
                raise IngestionError(
                    'Time must be strictly increasing, fails at row %s.' %
                    (bad[0] + 1), row=int(bad[0] + 1))
            self.dt = np.concatenate([[1.0], steps]) if rows else np.ones(0)
            self.has_time = True

        self.actions = None
        if actions is not None:
            self.actions = np.asarray(actions, dtype=float)
            if len(self.actions) != rows:
                raise IngestionError('%s actions for %s rows.' %
                                     (len(self.actions), rows))
            bad = np.flatnonzero(~np.isin(self.actions, (0.0, 1.0)))
            if len(bad):
                raise IngestionError(
                    'Action %s at row %s is not 0 or 1.' %
                    (self.actions[bad[0]], bad[0]), row=int(bad[0]))

    def __len__(self) -> int:
        return len(self.observations)

    def __repr__(self):
        return '<InputSeries rows=%s columns=%s actions=%s>' % (
            len(self), self.columns, self.actions is not None)

    @property
    def n_columns(self) -> int:
        return self.observations.shape[1]

    def check_binary(self, columns: Optional[Iterable[int]] = None):
        """Raise :class:`IngestionError` at the first value of the given
        columns (all by default) that is neither 0, 1 nor missing."""
        columns = range(self.n_columns) if columns is None else columns
        for column in columns:
            values = self.observations[:, column]
            bad = np.flatnonzero(~(np.isnan(values) |
                                   np.isin(values, (0.0, 1.0))))
            if len(bad):
                raise IngestionError(
                    'Value %s of column "%s" at row %s is not binary.' %
                    (values[bad[0]], self.columns[column], bad[0]),
                    row=int(bad[0]))

    def with_actions(self, actions: Iterable) -> 'InputSeries':
        """The same inputs paired with another action series."""
        return InputSeries(self.observations,
                           time=self.time if self.has_time else None,
                           actions=actions, columns=self.columns)

    def require_actions(self) -> np.ndarray:
        if self.actions is None:
            raise EmptyInputError('The input series holds no actions.')
        return self.actions


def switching_task(trials: int = 320, block: int = 40,
                   probabilities: Sequence[float] = (0.2, 0.8),
                   seed: Optional[int] = None) -> InputSeries:
    """Binary associative learning inputs whose outcome probability
    alternates between the given values every *block* trials.

    :raises IngestionError: *trials* or *block* is not positive.
    """
    if trials <= 0 or block <= 0:
        raise IngestionError('trials and block must be positive, got %s and '
                             '%s.' % (trials, block))
    probabilities = np.asarray(probabilities, dtype=float)
    rng = np.random.default_rng(seed)
    schedule = probabilities[(np.arange(trials) // block) %
                             len(probabilities)]
    outcomes = (rng.random(trials) < schedule).astype(float)
    logger.debug('Generated a switching task of %s trials.', trials)
    return InputSeries(outcomes)
