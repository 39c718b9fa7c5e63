"""Agent model and log posterior tests."""
import math

import numpy as np

from test.utils import BaseTestCase, binary_inputs

from hgfnet.exceptions import (AlignmentError, EmptyInputError,
                               ValidationException)
from hgfnet.ghgf import preset
from hgfnet.model import AgentModel, ParameterPath, parse_path, set_parameter
from hgfnet.posterior import LogPosterior, as_subject, log_posterior
from hgfnet.priors import default_parameter_space
from hgfnet.response import ResponseModel, log_likelihood


class ParameterPathTest(BaseTestCase):

    def test_parse(self):
        self.assertEqual(ParameterPath('node', 1, 'tonic_volatility', None),
                         parse_path('node.1.tonic_volatility'))
        self.assertEqual(ParameterPath('node', 0, 'extra', 'tonic_drift'),
                         parse_path('node.0.extra.tonic_drift'))
        self.assertEqual(ParameterPath('response', None,
                                       'inverse_temperature', None),
                         parse_path('response.inverse_temperature'))

    def test_invalid(self):
        for path in ('node.x.mean', 'node.1', 'node.1.surprise',
                     'node.1.observation', 'node.1.value_coupling',
                     'node.1.value_coupling.a', 'response.family',
                     'response.colour', 'network.1.mean', 'node.1.mean.0'):
            self.assertRaises(ValidationException, parse_path, path)

    def test_set_parameter(self):
        net, response = preset('binary-3'), ResponseModel()
        set_parameter(net, response, 'node.2.tonic_volatility', -5.0)
        set_parameter(net, response, 'node.0.value_coupling.0', 0.5)
        set_parameter(net, response, 'node.1.extra.tonic_drift', 0.1)
        set_parameter(net, response, 'response.inverse_temperature', 4.0)
        self.assertEqual(-5.0, net.attributes[2].tonic_volatility)
        self.assertEqual([0.5], net.attributes[0].value_coupling)
        self.assertEqual(0.1, net.attributes[1].extra['tonic_drift'])
        self.assertEqual(4.0, response.inverse_temperature)

    def test_set_missing_target(self):
        net, response = preset('binary-2'), ResponseModel()
        self.assertRaises(ValidationException, set_parameter, net, response,
                          'node.5.mean', 0.0)
        self.assertRaises(ValidationException, set_parameter, net, response,
                          'node.1.volatility_coupling.0', 1.0)


class AgentModelTest(BaseTestCase):

    def setUp(self):
        self.model = AgentModel(preset('binary-3'), ResponseModel())
        self.inputs = binary_inputs(trials=50, seed=1)

    def test_configure_copies(self):
        net, response = self.model.configure(
            {'node.1.tonic_volatility': -2.0,
             'response.inverse_temperature': 2.0})
        self.assertEqual(-2.0, net.attributes[1].tonic_volatility)
        self.assertEqual(-3.0, self.model.network.attributes[1]
                         .tonic_volatility)
        self.assertEqual(1.0, self.model.response.inverse_temperature)
        self.assertIsNot(response, self.model.response)

    def test_check_response(self):
        self.model.check_response()
        continuous = AgentModel(preset('continuous-2'))
        self.assertRaises(ValidationException, continuous.check_response)
        missing = AgentModel(preset('binary-2'), ResponseModel(node=4))
        self.assertRaises(ValidationException, missing.check_response)

    def test_trajectory(self):
        traj = self.model.trajectory(self.inputs,
                                     {'node.1.tonic_volatility': -2.0})
        self.assertEqual(50, len(traj))
        self.assert_trajectory_positive(traj)

    def test_simulate(self):
        values = {'node.1.tonic_volatility': -2.0,
                  'response.inverse_temperature': 3.0}
        first, traj = self.model.simulate(self.inputs, values, seed=5)
        second, _ = self.model.simulate(self.inputs, values, seed=5)
        self.assertEqual(first.actions.tolist(), second.actions.tolist())
        self.assertEqual(self.inputs.observations.tolist(),
                         first.observations.tolist())
        self.assertEqual(50, len(traj))

    def test_pointwise_log_likelihood(self):
        values = {'node.1.tonic_volatility': -2.0,
                  'response.inverse_temperature': 3.0}
        subject, traj = self.model.simulate(self.inputs, values, seed=2)
        pointwise = self.model.pointwise_log_likelihood(subject, values)
        self.assertEqual((50,), pointwise.shape)
        self.assertTrue(np.all(pointwise <= 0.0))
        self.assertAlmostEqual(
            log_likelihood(traj, subject.actions,
                           ResponseModel(inverse_temperature=3.0)),
            float(pointwise.sum()))
        self.assertRaises(EmptyInputError,
                          self.model.pointwise_log_likelihood, self.inputs)


class LogPosteriorTest(BaseTestCase):

    def setUp(self):
        self.model = AgentModel(preset('binary-3'), ResponseModel())
        self.space = default_parameter_space()
        self.subject, _ = self.model.simulate(
            binary_inputs(trials=50, seed=3),
            {'node.1.tonic_volatility': -2.5,
             'response.inverse_temperature': 2.0}, seed=3)

    def test_prior_plus_likelihood(self):
        point = [-2.5, math.log(2.0)]
        expected = self.space.log_prior(point) + float(np.sum(
            self.model.pointwise_log_likelihood(
                self.subject, self.space.values(point))))
        self.assertAlmostEqual(expected, log_posterior(
            self.space, point, self.subject, self.model))

    def test_outside_support(self):
        self.assertEqual(-math.inf, log_posterior(
            self.space, [-3.0, math.log(200.0) + 800.0], self.subject,
            self.model))

    def test_propagation_failure_rejected(self):
        """A log-volatility beyond the numerical range is rejected."""
        self.assertEqual(-math.inf, log_posterior(
            self.space, [60.0, 0.0], self.subject, self.model))

    def test_alignment(self):
        self.assertRaises(AlignmentError, log_posterior, self.space, [-3.0],
                          self.subject, self.model)

    def test_subject_pair(self):
        inputs = binary_inputs(trials=50, seed=3)
        paired = as_subject((inputs, self.subject.actions))
        target = LogPosterior(self.space, paired, self.model)
        self.assertAlmostEqual(
            log_posterior(self.space, [-3.0, 0.0], self.subject, self.model),
            target([-3.0, 0.0]))
        self.assertRaises(EmptyInputError, as_subject, inputs)
