"""Core unit tests."""
import json
from copy import copy, deepcopy

from test import utils

from hgfnet.core import Core


class SubType(Core):
    """Sub-class of Core for testing purposes."""
    pass


class CoreTest(utils.BaseTestCase):
    """Core test cases."""

    def test_core_instantiation(self):
        """Core instantiation to confirm dict behavior."""
        core1 = Core()
        self.assertIsNotNone(core1)

        # Test dictionary initialization.
        core2 = Core({'mean': 0.0, 'precision': 1.0})
        self.assertEqual(0.0, core2['mean'])
        self.assertEqual(1.0, core2.precision)

        # Test initialization by property.
        core3 = Core(mean=0.5, precision=2.0)
        self.assertEqual(0.5, core3.mean)
        self.assertEqual(2.0, core3['precision'])

        # Test initialization by list.
        core4 = Core([['mean', 0.5], ['precision', 2.0]])
        self.assertEqual(0.5, core4['mean'])
        self.assertEqual(2.0, core4.precision)

    def test_dynamic_access(self):
        """Core property access as a dict and as attribute."""
        self.assert_dynamic_accessing(Core())

    def test_json_serialization(self):
        """A record serializes as the plain dict it is."""
        record = Core(parameter='node.1.tonic_volatility', mean=-3.1)
        self.assertEqual(
            '{"mean": -3.1, "parameter": "node.1.tonic_volatility"}',
            json.dumps(record, sort_keys=True))

    def test_copy(self):
        """Ensure that Core supports copy operations."""
        sub_object = SubType(
            mean=1.0,
            value_coupling=[1.0, 0.5],
            extra={'tonic_drift': 0.0, 'nested': [1, 2]})

        sub_copy = copy(sub_object)

        self.assertIsInstance(sub_copy, SubType)
        self.assertIsNot(sub_object, sub_copy)
        self.assertDictEqual(sub_object, sub_copy)
        self.assertIs(sub_copy.value_coupling, sub_object.value_coupling)
        self.assertIs(sub_copy.extra, sub_object.extra)

    def test_deepcopy(self):
        """Ensure that Core supports deepcopy operation."""
        sub_object = SubType(
            mean=1.0,
            value_coupling=[1.0, 0.5],
            extra={'tonic_drift': 0.0, 'nested': [1, 2]})

        sub_copy = deepcopy(sub_object)

        self.assertIsInstance(sub_copy, SubType)
        self.assertDictEqual(sub_object, sub_copy)
        self.assertIsNot(sub_copy.value_coupling, sub_object.value_coupling)
        self.assertIsNot(sub_copy.extra, sub_object.extra)
        self.assertIsNot(sub_copy.extra['nested'],
                         sub_object.extra['nested'])
        sub_copy.value_coupling.append(2.0)
        self.assertEqual([1.0, 0.5], sub_object.value_coupling)
