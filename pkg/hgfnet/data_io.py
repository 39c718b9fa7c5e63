"""Reading input series and writing results.

Input series are comma separated files with a header row. Columns are
mapped by name:

* ``time`` - optional, strictly increasing time stamps,
* ``u`` or ``u1``, ``u2``, ... - one column per input node,
* ``y`` - optional binary actions.

Results are written as UTF-8 with LF line endings; floats use the shortest
representation that reads back to the same value, and JSON keys are
sorted, so identical results give byte identical files.
"""
import json
import logging
import math
import re
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

import numpy as np
import pandas as pd

from hgfnet.exceptions import IngestionError
from hgfnet.inputs import InputSeries
from hgfnet.network import Trajectory

logger = logging.getLogger(__name__)

TRAJECTORY_FILE = 'trajectory.csv'
SAMPLES_FILE = 'samples.csv'
SUMMARY_FILE = 'summary.json'
COMPARISON_FILE = 'comparison.json'
RECOVERY_FILE = 'recovery.csv'
INPUTS_FILE = 'inputs.csv'

_INPUT_COLUMN = re.compile(r'^u(\d*)$')


def _numeric(frame: pd.DataFrame, column: str) -> np.ndarray:
    values = pd.to_numeric(frame[column], errors='coerce')
    bad = np.flatnonzero(values.isna() & frame[column].notna())
    if len(bad):
        raise IngestionError('Value "%s" of column "%s" at row %s is not a '
                             'number.' % (frame[column].iloc[bad[0]], column,
                                          bad[0]), row=int(bad[0]))
    return values.to_numpy(dtype=float)


def read_timeseries_csv(path: Union[str, Path],
                        binary_columns: Optional[Iterable[int]] = None
                        ) -> InputSeries:
    """Read an input series file.

    Row numbers in errors count data rows from 0.

    :param binary_columns: Positions of the input columns received by binary
        nodes; their values must be 0, 1 or missing.
    :raises IngestionError: A column is unknown or missing, a value is not a
        number, a binary column or the actions hold another value, or the
        time stamps are not strictly increasing.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, float_precision='round_trip')
    except pd.errors.EmptyDataError as error:
        raise IngestionError('%s holds no header row.' % path) from error

    inputs, unknown = [], []
    for column in frame.columns:
        match = _INPUT_COLUMN.match(column.strip())
        if match:
            inputs.append((int(match.group(1) or 0), column))
        elif column.strip() not in ('time', 'y'):
            unknown.append(column)
    if unknown:
        raise IngestionError('Unknown columns %s in %s.' % (unknown, path))
    if not inputs:
        raise IngestionError('%s has no input column (u, u1, ...).' % path)
    inputs.sort()

    frame.columns = [column.strip() for column in frame.columns]
    names = [column.strip() for _, column in inputs]
    observations = np.column_stack([_numeric(frame, name) for name in names])
    time = _numeric(frame, 'time') if 'time' in frame else None
    if time is not None and np.isnan(time).any():
        row = int(np.flatnonzero(np.isnan(time))[0])
        raise IngestionError('Time stamp missing at row %s.' % row, row=row)
    actions = _numeric(frame, 'y') if 'y' in frame else None

    series = InputSeries(observations, time=time, actions=actions,
                         columns=names)
    if binary_columns is not None:
        series.check_binary(binary_columns)
    logger.debug('Read %s rows from %s.', len(series), path)
    return series


def write_timeseries_csv(series: InputSeries, path: Union[str, Path]) -> Path:
    """Write an input series in the layout :func:`read_timeseries_csv`
    reads."""
    columns = {}
    if series.has_time:
        columns['time'] = series.time
    for position, name in enumerate(series.columns):
        columns[name] = series.observations[:, position]
    if series.actions is not None:
        columns['y'] = series.actions.astype(int)
    return _write_csv(pd.DataFrame(columns), path)


def read_trajectory_csv(path: Union[str, Path]) -> Trajectory:
    """Read a trajectory written by :func:`write_outputs`.

    :raises IngestionError: The file lacks trajectory columns.
    """
    frame = pd.read_csv(path, float_precision='round_trip')
    required = ('time_step', 'time', 'dt', 'node', 'kind') + \
        Trajectory.STATISTICS
    missing = [column for column in required if column not in frame]
    if missing:
        raise IngestionError('%s lacks the trajectory columns %s.' %
                             (path, missing))
    return Trajectory.from_frame(frame)


def _write_csv(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    frame.to_csv(path, index=False, lineterminator='\n', encoding='utf-8')
    return path


def _plain(value):
    """JSON compatible copy of *value*; non-finite floats become null."""
    if isinstance(value, Mapping):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return [_plain(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    return value


def write_json(document, path: Union[str, Path]) -> Path:
    path = Path(path)
    text = json.dumps(_plain(document), sort_keys=True, indent=2,
                      allow_nan=False)
    path.write_text(text + '\n', encoding='utf-8', newline='\n')
    return path


def write_outputs(results: Mapping, out_dir: Union[str, Path]) -> list[Path]:
    """Write whichever results are present.

    ================ ===================================================
    Key              File
    ================ ===================================================
    ``inputs``       ``inputs.csv`` (:class:`~hgfnet.inputs.InputSeries`)
    ``trajectory``   ``trajectory.csv``, one row per time step per node
    ``samples``      ``samples.csv``, chain, draw and parameter columns
    ``summary``      ``summary.json``
    ``comparison``   ``comparison.json``
    ``recovery``     ``recovery.csv``
    ================ ===================================================

    :return: The written paths, in the order of the table.
    :raises OSError: The directory cannot be created or written.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if results.get('inputs') is not None:
        written.append(write_timeseries_csv(results['inputs'],
                                            out_dir / INPUTS_FILE))
    if results.get('trajectory') is not None:
        written.append(_write_csv(results['trajectory'].to_frame(),
                                  out_dir / TRAJECTORY_FILE))
    if results.get('samples') is not None:
        written.append(_write_csv(results['samples'].to_frame(),
                                  out_dir / SAMPLES_FILE))
    if results.get('summary') is not None:
        written.append(write_json(results['summary'], out_dir / SUMMARY_FILE))
    if results.get('comparison') is not None:
        written.append(write_json(results['comparison'].to_dict(),
                                  out_dir / COMPARISON_FILE))
    if results.get('recovery') is not None:
        written.append(_write_csv(results['recovery'].frame,
                                  out_dir / RECOVERY_FILE))
    for path in written:
        logger.info('Wrote %s.', path)
    return written
