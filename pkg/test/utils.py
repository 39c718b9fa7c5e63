"""Utilities for testing."""
import math
import unittest

import numpy as np

from hgfnet.attributes import NodeKind
from hgfnet.inputs import InputSeries
from hgfnet.network import Network, Trajectory


class BaseTestCase(unittest.TestCase):
    """BaseTest case has methods to test hgfnet records, networks and
    trajectories."""

    def assert_dynamic_accessing(self, record):
        """Assert that record exhibits dynamic property accessing.

        :param record: Record to validate for dynamic access.
        :type record: hgfnet.core.Core
        """
        # Assignment by attribute
        record.attr1 = 1
        self.assertEqual(1, record.attr1)
        self.assertEqual(1, record['attr1'])

        # Assignment by key
        record['key1'] = 'Some value'
        self.assertEqual('Some value', record['key1'])
        self.assertEqual('Some value', record.key1)

        # Retrieval failures follow expected interface behavior
        self.assertRaises(AttributeError, getattr, record, 'no_attribute')
        self.assertRaises(KeyError, lambda: record['bad_key'])

    def assert_network_valid(self, net: Network):
        """Assert that the four components of a network agree."""
        net.validate()
        self.assertEqual(len(net.attributes), len(net.edges))
        self.assertEqual(len(net.attributes), len(net.node_kinds))
        for node, attrs in enumerate(net.attributes):
            for edge_type in ('value', 'volatility'):
                self.assertEqual(len(net.edges.parents(node, edge_type)),
                                 len(attrs['%s_coupling' % edge_type]))
                for parent in net.edges.parents(node, edge_type):
                    self.assertIn(node, net.edges.children(parent, edge_type))

    def assert_trajectory_positive(self, traj: Trajectory):
        """Assert finite statistics and positive precisions at every step."""
        for name in ('mean', 'expected_mean'):
            self.assertTrue(np.all(np.isfinite(traj.__dict__[name])), name)
        for name in ('precision', 'expected_precision'):
            values = traj.__dict__[name]
            self.assertTrue(np.all((values > 0.0) & np.isfinite(values)),
                            name)
        for node, kind in enumerate(traj.node_kinds):
            if kind is NodeKind.BINARY:
                means = traj.expected_mean[:, node]
                self.assertTrue(np.all((means >= 0.0) & (means <= 1.0)))

    def assert_close(self, expected, actual, tolerance: float = 1e-9):
        """Assert element-wise closeness of scalars or arrays."""
        expected = np.asarray(expected, dtype=float)
        actual = np.asarray(actual, dtype=float)
        self.assertEqual(expected.shape, actual.shape)
        difference = np.abs(expected - actual)
        worst = float(np.nanmax(difference)) if difference.size else 0.0
        self.assertTrue(
            np.allclose(expected, actual, rtol=0.0, atol=tolerance,
                        equal_nan=True),
            'largest difference %s exceeds %s' % (worst, tolerance))


def binary_inputs(trials: int = 60, seed: int = 0) -> InputSeries:
    """A short switching task for tests."""
    from hgfnet.inputs import switching_task

    return switching_task(trials=trials, block=15, seed=seed)


def is_nan(value) -> bool:
    return value is None or (isinstance(value, float) and math.isnan(value))
