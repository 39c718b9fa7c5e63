"""Static SVG figures of belief trajectories.

One panel per node, the highest node on top: the expected mean as a line
with a band of one standard deviation (from the expected precision), the
observations as points, and on the panels of input nodes the surprise as a
shaded band on a second axis.
"""
import logging
from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from hgfnet.attributes import NodeKind  # noqa: E402
from hgfnet.exceptions import EmptyInputError  # noqa: E402
from hgfnet.network import Trajectory  # noqa: E402

logger = logging.getLogger(__name__)

PANEL_HEIGHT = 1.8
FIGURE_WIDTH = 8.0
MEAN_COLOR = '#1f5f99'
SURPRISE_COLOR = '#b8860b'


def _panel(axes, traj: Trajectory, node: int):
    series = traj.node(node)
    mean = series.expected_mean
    sd = 1.0 / np.sqrt(series.expected_precision)
    axes.fill_between(traj.time, mean - sd, mean + sd, color=MEAN_COLOR,
                      alpha=0.25, linewidth=0)
    axes.plot(traj.time, mean, color=MEAN_COLOR, linewidth=1.0)
    observed = ~np.isnan(series.observation)
    if observed.any():
        axes.scatter(traj.time[observed], series.observation[observed],
                     s=4, color='black', zorder=3)
    if traj.node_kinds[node] is NodeKind.BINARY:
        axes.set_ylim(-0.1, 1.1)
    axes.set_ylabel('x%s (%s)' % (node, traj.node_kinds[node].value[0]))
    axes.grid(True, linewidth=0.3)

    if observed.any():
        twin = axes.twinx()
        surprise = np.where(observed, series.surprise, 0.0)
        twin.fill_between(traj.time, 0.0, surprise, color=SURPRISE_COLOR,
                          alpha=0.3, linewidth=0, step='mid')
        twin.set_ylabel('surprise', color=SURPRISE_COLOR)
        twin.set_ylim(bottom=0.0)


def plot_trajectory_svg(traj: Trajectory, path: Union[str, Path]) -> Path:
    """Draw every node of *traj* into an SVG file.

    The output only depends on the trajectory: element ids are salted with
    a constant and no date is embedded.

    :raises EmptyInputError: The trajectory has no time steps or no nodes.
    """
    if len(traj) == 0 or traj.n_nodes == 0:
        raise EmptyInputError('Cannot plot an empty trajectory.')
    path = Path(path)
    nodes = traj.n_nodes
    with matplotlib.rc_context({'svg.hashsalt': 'hgfnet',
                                'svg.fonttype': 'none'}):
        figure, axes = plt.subplots(nodes, 1, sharex=True, squeeze=False,
                                    figsize=(FIGURE_WIDTH,
                                             PANEL_HEIGHT * nodes + 0.6))
        try:
            for row, node in enumerate(reversed(range(nodes))):
                _panel(axes[row, 0], traj, node)
            axes[-1, 0].set_xlabel('time')
            figure.tight_layout()
            figure.savefig(path, format='svg', metadata={'Date': None})
        finally:
            plt.close(figure)
    logger.info('Plotted %s nodes to %s.', nodes, path)
    return path

