"""MAP and batch fitting tests."""
import math

import numpy as np

from test.utils import BaseTestCase, binary_inputs

from hgfnet.exceptions import OptimizationFailureError, ValidationException
from hgfnet.fitting import (FitResult, batch_fit, map_fit,
                            maximize_log_density, subject_seed)
from hgfnet.ghgf import preset
from hgfnet.model import AgentModel
from hgfnet.posterior import log_posterior
from hgfnet.priors import default_parameter_space
from hgfnet.response import ResponseModel


def quadratic(point):
    return -float(np.sum((np.asarray(point) - np.array([1.0, -2.0])) ** 2))


class MaximizeTest(BaseTestCase):

    def test_quadratic(self):
        point, value = maximize_log_density(quadratic, [[0.0, 0.0],
                                                        [5.0, 5.0]])
        self.assert_close([1.0, -2.0], point, 1e-5)
        self.assertAlmostEqual(0.0, value, places=8)

    def test_bounds(self):
        point, _ = maximize_log_density(quadratic, [[0.0, 0.0]],
                                        bounds=[(None, 0.5), (None, None)])
        self.assert_close([0.5, -2.0], point, 1e-5)

    def test_skips_impossible_starts(self):
        def half_plane(point):
            return quadratic(point) if point[0] > 0 else -math.inf

        point, _ = maximize_log_density(half_plane, [[-1.0, 0.0],
                                                     [2.0, 0.0]])
        self.assert_close([1.0, -2.0], point, 1e-5)
        self.assertRaises(OptimizationFailureError, maximize_log_density,
                          half_plane, [[-1.0, 0.0]])


class MapFitTest(BaseTestCase):

    def setUp(self):
        self.model = AgentModel(preset('binary-3'), ResponseModel())
        self.space = default_parameter_space()
        self.subject, _ = self.model.simulate(
            binary_inputs(trials=60, seed=2),
            {'node.1.tonic_volatility': -2.5,
             'response.inverse_temperature': 2.0}, seed=2)

    def test_map_fit(self):
        result = map_fit(self.space, self.subject, self.model, restarts=2,
                         seed=1)
        self.assertIsInstance(result, FitResult)
        self.assertIsNone(result.error)
        self.assertEqual(self.space.names, list(result.estimate))
        self.assertGreater(result.estimate['response.inverse_temperature'],
                           0.0)
        self.assertAlmostEqual(
            log_posterior(self.space, result.transformed, self.subject,
                          self.model), result.log_posterior)
        self.assertGreaterEqual(result.log_posterior, log_posterior(
            self.space, self.space.center(), self.subject, self.model))
        self.assertEqual(set(self.space.names), set(result.at_bound))
        self.assertIsInstance(result.clipped, int)

    def test_reproducible(self):
        first = map_fit(self.space, self.subject, self.model, restarts=2,
                        seed=4)
        second = map_fit(self.space, self.subject, self.model, restarts=2,
                         seed=4)
        self.assertEqual(first.transformed, second.transformed)

    def test_restarts(self):
        self.assertRaises(ValidationException, map_fit, self.space,
                          self.subject, self.model, restarts=0)


class BatchFitTest(BaseTestCase):

    def setUp(self):
        self.model = AgentModel(preset('binary-3'), ResponseModel())
        self.space = default_parameter_space()
        self.dataset = [
            self.model.simulate(binary_inputs(trials=40, seed=seed),
                                {'node.1.tonic_volatility': omega,
                                 'response.inverse_temperature': 2.0},
                                seed=seed)[0]
            for seed, omega in enumerate((-4.0, -3.0, -2.0))]

    def test_subject_seed(self):
        self.assertEqual(subject_seed(3, 1), subject_seed(3, 1))
        self.assertNotEqual(subject_seed(3, 1), subject_seed(3, 2))
        self.assertNotEqual(subject_seed(3, 1), subject_seed(4, 1))

    def test_workers_do_not_change_results(self):
        serial = batch_fit(self.space, self.dataset, self.model, restarts=2,
                           seed=9)
        parallel = batch_fit(self.space, self.dataset, self.model,
                             restarts=2, seed=9, workers=2)
        self.assertEqual([0, 1, 2], [result.subject for result in serial])
        self.assertEqual([result.transformed for result in serial],
                         [result.transformed for result in parallel])
        self.assertEqual([result.seed for result in serial],
                         [subject_seed(9, subject) for subject in range(3)])

    def test_failure_is_recorded(self):
        dataset = [self.dataset[0], binary_inputs(trials=40, seed=8)]
        results = batch_fit(self.space, dataset, self.model, restarts=1)
        self.assertIsNone(results[0].error)
        self.assertIsNotNone(results[1].error)
        self.assertIsNone(results[1].estimate)
        self.assertEqual(-math.inf, results[1].log_posterior)

    def test_sample_mode(self):
        results = batch_fit(self.space, self.dataset[:1], self.model,
                            mode='sample',
                            sampler={'chains': 2, 'draws': 40,
                                     'warmup': 40})
        result = results[0]
        self.assertIsNone(result.error)
        self.assertEqual(self.space.names,
                         [row['parameter'] for row in result.summary])

    def test_invalid(self):
        self.assertRaises(ValidationException, batch_fit, self.space,
                          self.dataset, self.model, mode='vb')
        self.assertRaises(ValidationException, batch_fit, self.space, [],
                          self.model)
