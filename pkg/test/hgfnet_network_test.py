"""Network structure, update sequence and belief propagation tests."""
import math

import numpy as np

from test.utils import BaseTestCase, binary_inputs

from hgfnet.attributes import NodeAttributes, NodeKind
from hgfnet.exceptions import (AlignmentError, CouplingError, CycleError,
                               DuplicateEdgeError, EmptyInputError,
                               InvalidAttributeError, NodeIndexError,
                               ObservationError, PropagationError,
                               SequencingError, ValidationException)
from hgfnet.ghgf import preset
from hgfnet.inputs import InputSeries
from hgfnet.network import (PREDICTION, AdjacencyList, Network, Trajectory,
                            UpdateFunction, add_edge, add_node,
                            derive_update_sequence, new_network, propagate,
                            remove_node, run, set_edges, topological_order)


def chain(levels: int = 3) -> Network:
    """A chain of continuous nodes, each the value parent of the one below."""
    net = new_network()
    for _ in range(levels):
        add_node(net, NodeKind.CONTINUOUS,
                 NodeAttributes(tonic_volatility=-2.0))
    for child in range(levels - 1):
        add_edge(net, child=child, parent=child + 1)
    net.sequence = derive_update_sequence(net)
    return net


def random_dag(rng: np.random.Generator, size: int,
               edge_probability: float = 0.3) -> Network:
    """Continuous nodes whose parents always have a higher index."""
    net = new_network()
    for _ in range(size):
        add_node(net, NodeKind.CONTINUOUS)
    for child in range(size):
        for parent in range(child + 1, size):
            if rng.random() < edge_probability:
                coupling = 'value' if rng.random() < 0.5 else 'volatility'
                add_edge(net, child, parent, coupling,
                         float(rng.uniform(0.1, 1.0)))
    return net


class NetworkStructureTest(BaseTestCase):

    def test_new_network(self):
        net = new_network()
        self.assertEqual(0, len(net))
        self.assertEqual(0, len(net.edges))
        self.assertEqual([], net.sequence)
        self.assertIn('continuous_posterior_update', net.functions)
        self.assertIn('binary_prediction', net.functions)

    def test_add_node(self):
        net = new_network()
        add_node(net, NodeKind.CONTINUOUS,
                 NodeAttributes(mean=0.0, precision=1.0,
                                tonic_volatility=-2.0))
        self.assertEqual(1, len(net))
        self.assertEqual(-2.0, net.attributes[0].tonic_volatility)
        self.assertEqual([], net.edges.parents(0))
        add_node(net, 'binary-state')
        add_node(net)
        self.assertEqual(3, len(net))
        self.assertEqual([NodeKind.CONTINUOUS, NodeKind.BINARY,
                          NodeKind.CONTINUOUS], net.node_kinds)
        self.assert_network_valid(net)

    def test_add_node_copies_attributes(self):
        attrs = NodeAttributes(mean=1.0)
        net = add_node(new_network(), NodeKind.CONTINUOUS, attrs)
        net.attributes[0].mean = 2.0
        self.assertEqual(1.0, attrs.mean)

    def test_add_node_invalid_precision(self):
        net = new_network()
        self.assertRaises(InvalidAttributeError, add_node, net,
                          NodeKind.CONTINUOUS, {'precision': -1.0})
        self.assertEqual(0, len(net))

    def test_add_edge(self):
        net = preset('binary-3')
        self.assertEqual([1], net.edges.parents(0, 'value'))
        self.assertEqual([0], net.edges.children(1, 'value'))
        self.assertEqual([2], net.edges.parents(1, 'volatility'))
        self.assertEqual([1], net.edges.children(2, 'volatility'))
        self.assertEqual([1.0], net.attributes[0].value_coupling)
        self.assertEqual([1.0], net.attributes[1].volatility_coupling)
        self.assert_network_valid(net)

    def test_add_edge_errors(self):
        net = chain(2)
        self.assertRaises(CycleError, add_edge, net, 1, 0)
        self.assertRaises(CycleError, add_edge, net, 0, 0)
        self.assertRaises(DuplicateEdgeError, add_edge, net, 0, 1)
        self.assertRaises(NodeIndexError, add_edge, net, 0, 5)
        self.assertRaises(ValidationException, add_edge, net, 0, 1,
                          'volatility', -1.0)
        add_node(net, NodeKind.BINARY)
        self.assertRaises(CouplingError, add_edge, net, 0, 2)
        self.assertRaises(CouplingError, add_edge, net, 2, 1, 'volatility')
        self.assert_network_valid(net)

    def test_node_index_error_is_index_error(self):
        with self.assertRaises(IndexError) as context:
            new_network().check_index(0)
        self.assertEqual(0, context.exception.index)
        self.assertEqual(0, context.exception.size)

    def test_remove_node(self):
        net = preset('binary-3')
        net, mapping = remove_node(net, 2, return_mapping=True)
        self.assertEqual({0: 0, 1: 1, 2: None}, mapping)
        self.assertEqual(2, len(net))
        self.assertEqual([], net.edges.parents(1))
        self.assertEqual([], net.attributes[1].volatility_coupling)
        self.assertNotIn(2, [step.node for step in net.sequence])
        self.assert_network_valid(net)

    def test_remove_middle_node_remaps(self):
        net = chain(3)
        remove_node(net, 1)
        self.assertEqual(2, len(net))
        self.assertEqual([], net.edges.parents(0))
        self.assertEqual([], net.edges.children(1))
        self.assertEqual({0, 1}, {step.node for step in net.sequence})
        self.assert_network_valid(net)

    def test_remove_only_node(self):
        net = add_node(new_network())
        remove_node(net, 0)
        self.assertEqual(0, len(net))
        self.assertRaises(NodeIndexError, remove_node, chain(3), 5)

    def test_set_edges(self):
        net = preset('binary-3')
        add_node(net, NodeKind.CONTINUOUS)
        set_edges(net, 1, 'volatility', [3])
        self.assertEqual([3], net.edges.parents(1, 'volatility'))
        self.assertEqual([], net.edges.children(2, 'volatility'))
        self.assertEqual([1], net.edges.children(3, 'volatility'))
        self.assert_network_valid(net)

        set_edges(net, 1, 'volatility', [])
        self.assertEqual([], net.edges.parents(1, 'volatility'))
        self.assertEqual([], net.attributes[1].volatility_coupling)
        self.assertRaises(CycleError, set_edges, net, 1, 'value', [1])
        self.assertRaises(CycleError, set_edges, net, 1, 'value', [0])
        self.assertRaises(NodeIndexError, set_edges, net, 1, 'value', [9])
        self.assert_network_valid(net)

    def test_set_edges_keeps_strengths(self):
        net = chain(3)
        net.attributes[0].value_coupling = [0.5]
        set_edges(net, 0, 'value', [1, 2])
        self.assertEqual([0.5, 1.0], net.attributes[0].value_coupling)
        self.assertRaises(AlignmentError, set_edges, net, 0, 'value', [1],
                          [1.0, 2.0])

    def test_ancestors_and_descendants(self):
        net = preset('binary-3')
        self.assertEqual({1, 2}, net.ancestors(0))
        self.assertEqual(set(), net.ancestors(2))
        self.assertEqual({0, 1}, net.descendants(2))
        self.assertEqual([0], net.input_nodes())

    def test_copy_is_independent(self):
        net = preset('binary-3')
        the_copy = net.copy()
        the_copy.attributes[1].mean = 5.0
        the_copy.edges.link(0, 2, 'value')
        the_copy.sequence.append((0, 'binary_prediction'))
        self.assertEqual(0.0, net.attributes[1].mean)
        self.assertEqual([1], net.edges.parents(0, 'value'))
        self.assertEqual(7, len(net.sequence))

    def test_adjacency_admits_more_edge_types(self):
        edges = AdjacencyList(edge_types=('value', 'volatility', 'noise'))
        edges.append_node()
        edges.append_node()
        edges.link(0, 1, 'noise')
        self.assertEqual([1], edges.parents(0, 'noise'))
        self.assertEqual([1], edges.parents(0))
        self.assertEqual([0], edges.children(1))

    def test_validate_detects_inconsistency(self):
        net = chain(2)
        net.attributes[0].value_coupling = []
        self.assertRaises(ValidationException, net.validate)
        net = chain(2)
        net.edges[1]['value_children'] = []
        self.assertRaises(ValidationException, net.validate)

    def test_to_dot(self):
        dot = preset('binary-3').to_dot('binary_3')
        self.assertTrue(dot.startswith('digraph "binary_3" {'))
        self.assertIn('x0 [shape=box];', dot)
        self.assertIn('x1 [shape=circle];', dot)
        self.assertIn('x1 -> x0;', dot)
        self.assertIn('x2 -> x1 [style=dashed];', dot)

    def test_mutation_keeps_invariants(self):
        """Random interleavings of structural edits and propagation."""
        rng = np.random.default_rng(11)
        net = chain(3)
        for _ in range(150):
            operation = rng.integers(4)
            if operation == 0 or len(net) < 2:
                add_node(net, NodeKind.CONTINUOUS)
            elif operation == 1:
                remove_node(net, int(rng.integers(len(net))))
            elif operation == 2:
                child = int(rng.integers(len(net) - 1))
                candidates = list(range(child + 1, len(net)))
                parents = [parent for parent in candidates
                           if rng.random() < 0.5]
                set_edges(net, child, 'value', parents)
            else:
                net.sequence = derive_update_sequence(net)
                observations = {node: float(rng.normal())
                                for node in net.input_nodes()}
                net = propagate(net, observations)
            self.assert_network_valid(net)


class UpdateSequenceTest(BaseTestCase):

    def test_binary_three_level_sequence(self):
        self.assertEqual(
            ['2:continuous_prediction', '1:continuous_prediction',
             '0:binary_prediction', '0:binary_prediction_error',
             '1:continuous_posterior_update', '1:continuous_prediction_error',
             '2:continuous_posterior_update'],
            [str(step) for step in derive_update_sequence(preset('binary-3'))])

    def test_single_node_sequence(self):
        net = add_node(new_network())
        self.assertEqual(
            ['0:continuous_prediction', '0:continuous_posterior_update'],
            [str(step) for step in derive_update_sequence(net)])

    def test_origin_restricts_to_ancestors(self):
        sequence = derive_update_sequence(preset('binary-3'), origin=1)
        self.assertEqual(
            ['2:continuous_prediction', '1:continuous_prediction',
             '1:continuous_posterior_update', '1:continuous_prediction_error',
             '2:continuous_posterior_update'],
            [str(step) for step in sequence])
        self.assertNotIn(0, [step.node for step in sequence])

    def test_missing_function(self):
        net = chain(2)
        del net.functions['continuous_prediction_error']
        self.assertRaises(ValidationException, derive_update_sequence, net)

    def test_cycle_detected(self):
        net = chain(2)
        net.edges.link(1, 0, 'value')
        self.assertRaises(CycleError, topological_order, net)
        self.assertRaises(CycleError, derive_update_sequence, net)

    def test_random_networks(self):
        """Derived sequences are sound on random acyclic networks."""
        rng = np.random.default_rng(5)
        for _ in range(1000):
            net = random_dag(rng, int(rng.integers(1, 21)))
            sequence = derive_update_sequence(net)
            position = {}
            for index, step in enumerate(sequence):
                self.assertIn(step.function_name, net.functions)
                phase = net.functions[step.function_name].phase
                self.assertNotIn((step.node, phase), position)
                position[(step.node, phase)] = index

            for node in range(len(net)):
                predicted = position[(node, PREDICTION)]
                for parent in net.edges.parents(node):
                    self.assertLess(position[(parent, PREDICTION)], predicted)
                    self.assertLess(position[(node, 'prediction_error')],
                                    position[(parent, 'posterior_update')])
                if (node, 'prediction_error') in position:
                    self.assertLess(position[(node, 'posterior_update')],
                                    position[(node, 'prediction_error')])
                else:
                    self.assertEqual([], net.edges.parents(node))


class PropagationTest(BaseTestCase):

    def test_propagate_returns_copy(self):
        net = preset('binary-2')
        updated = propagate(net, {0: 1.0})
        self.assertIsNot(net, updated)
        self.assertEqual(0.0, net.attributes[1].mean)
        self.assertEqual(0, net.time_step)
        self.assertEqual(1, updated.time_step)

    def test_no_observation(self):
        net = preset('binary-3')
        updated = propagate(net, {})
        for before, after in zip(net.attributes, updated.attributes):
            self.assertEqual(before.mean, after.mean)
            self.assertEqual(before.precision, after.precision)
        self.assertLess(updated.attributes[1].expected_precision, 1.0)
        self.assertIsNone(updated.attributes[0].surprise)
        updated = propagate(net, {0: math.nan})
        self.assertEqual(net.attributes[1].mean, updated.attributes[1].mean)

    def test_deterministic(self):
        net = preset('binary-3')
        first = propagate(net, {0: 1.0}, dt=0.5)
        second = propagate(net, {0: 1.0}, dt=0.5)
        self.assertEqual([dict(attrs) for attrs in first.attributes],
                         [dict(attrs) for attrs in second.attributes])

    def test_binary_observation_checked(self):
        net = preset('binary-2')
        self.assertRaises(ObservationError, propagate, net, {0: 0.5})
        self.assertRaises(NodeIndexError, propagate, net, {4: 1.0})

    def test_time_step_must_be_positive(self):
        self.assertRaises(ValidationException, propagate, preset('binary-2'),
                          {0: 1.0}, 0.0)

    def test_empty_sequence(self):
        net = add_node(new_network())
        self.assertRaises(SequencingError, propagate, net, {0: 1.0})

    def test_custom_update_function_sees_network(self):
        """A registered function receives and returns the whole network."""
        seen = []

        def count_nodes(net, node):
            seen.append((node, len(net), len(net.sequence)))
            return net

        net = chain(2)
        net.functions['count_nodes'] = UpdateFunction(
            'count_nodes', PREDICTION, count_nodes)
        net.sequence.insert(0, (1, 'count_nodes'))
        propagate(net, {0: 0.5})
        self.assertEqual([(1, 2, 6)], seen)

    def test_continuous_observation_on_parent(self):
        """Any node may receive observations."""
        net = chain(2)
        updated = propagate(net, {1: 2.0})
        self.assertGreater(updated.attributes[1].mean, 0.0)
        self.assertEqual(net.attributes[0].mean, updated.attributes[0].mean)
        self.assertIsNotNone(updated.attributes[1].surprise)


class RunTest(BaseTestCase):

    def test_run_switching_task(self):
        inputs = binary_inputs(trials=320)
        traj = run(preset('binary-3'), inputs)
        self.assertEqual(320, len(traj))
        self.assertEqual((320, 3), traj.mean.shape)
        self.assert_trajectory_positive(traj)
        self.assertTrue(np.all(np.isfinite(traj.surprise[:, 0])))
        self.assertTrue(np.all(np.isnan(traj.surprise[:, 1:])))
        self.assertEqual(320, traj.network.time_step)

    def test_run_deterministic(self):
        inputs = binary_inputs()
        first = run(preset('binary-3'), inputs)
        second = run(preset('binary-3'), inputs)
        for name in Trajectory.STATISTICS:
            np.testing.assert_array_equal(first.__dict__[name],
                                          second.__dict__[name])

    def test_removal_reduces_to_two_levels(self):
        inputs = binary_inputs(trials=320, seed=4)
        reduced = remove_node(preset('binary-3'), 2)
        expected = run(preset('binary-2'), inputs)
        for net in (reduced, preset('binary-2')):
            traj = run(net, inputs)
            for name in Trajectory.STATISTICS:
                self.assert_close(expected.__dict__[name], traj.__dict__[name],
                                  1e-12)

    def test_missing_rows_advance_time(self):
        inputs = InputSeries([1.0, math.nan, 0.0], time=[1.0, 2.0, 4.0])
        traj = run(preset('binary-2'), inputs)
        self.assertEqual([1.0, 1.0, 2.0], traj.dt.tolist())
        self.assertTrue(math.isnan(traj.surprise[1, 0]))
        self.assertEqual(traj.mean[0, 1], traj.mean[1, 1])
        self.assertLess(traj.expected_precision[1, 1], traj.precision[0, 1])

    def test_empty_series(self):
        self.assertRaises(EmptyInputError, run, preset('binary-2'),
                          np.empty((0, 1)))

    def test_column_mismatch(self):
        self.assertRaises(AlignmentError, run, preset('binary-2'),
                          np.ones((3, 2)))

    def test_failure_carries_row(self):
        net = preset('binary-2')
        with self.assertRaises(PropagationError) as context:
            run(net, [1.0, 0.0, 2.0])
        self.assertEqual(2, context.exception.row)
        self.assertIsInstance(context.exception.cause, ObservationError)

    def test_frame_round_trip(self):
        traj = run(preset('binary-3'), binary_inputs(trials=20))
        frame = traj.to_frame()
        self.assertEqual(60, len(frame))
        self.assertEqual(['time_step', 'time', 'dt', 'node', 'kind', 'mean',
                          'precision', 'expected_mean', 'expected_precision',
                          'observation', 'surprise'], list(frame.columns))
        rebuilt = Trajectory.from_frame(frame)
        self.assertEqual(traj.node_kinds, rebuilt.node_kinds)
        for name in Trajectory.STATISTICS:
            np.testing.assert_array_equal(traj.__dict__[name],
                                          rebuilt.__dict__[name])

    def test_total_surprise(self):
        traj = run(preset('binary-2'), [1.0, 1.0])
        self.assertAlmostEqual(float(np.sum(traj.surprise[:, 0])),
                               traj.total_surprise())
        self.assertAlmostEqual(math.log(2.0), traj.surprise[0, 0])
