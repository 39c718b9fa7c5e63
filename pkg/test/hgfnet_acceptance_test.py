"""Long running end-to-end checks, enabled with ``HGFNET_ACCEPTANCE=1``."""
import math
import os
import unittest

import numpy as np

from test.utils import BaseTestCase

from hgfnet.comparison import compare
from hgfnet.fitting import batch_fit
from hgfnet.ghgf import binary_surprise, preset
from hgfnet.inputs import switching_task
from hgfnet.model import AgentModel
from hgfnet.multilevel import multilevel_sample
from hgfnet.network import run
from hgfnet.priors import (ParameterSpace, default_parameter_space,
                           omega_parameter)
from hgfnet.recovery import recover, simulate_dataset
from hgfnet.response import ResponseModel
from hgfnet.sampling import sample, sample_log_density, summarize

ACCEPTANCE = os.environ.get('HGFNET_ACCEPTANCE') == '1'


def normal_density(point):
    return -0.5 * ((float(point[0]) - 3.0) / 2.0) ** 2


@unittest.skipUnless(ACCEPTANCE, 'set HGFNET_ACCEPTANCE=1 to run')
class AcceptanceTest(BaseTestCase):

    def setUp(self):
        self.model = AgentModel(preset('binary-3'),
                                ResponseModel(family='temperature-sigmoid'))
        self.space = default_parameter_space()

    def test_surprise_normalization(self):
        for seed in range(100):
            traj = run(preset('binary-3'), switching_task(trials=500,
                                                          seed=seed))
            for predicted in traj.expected_mean[:, 0]:
                total = (math.exp(-binary_surprise(predicted, 1)) +
                         math.exp(-binary_surprise(predicted, 0)))
                self.assertAlmostEqual(1.0, total, delta=1e-12)

    def test_known_target(self):
        samples = sample_log_density(normal_density, [0.0], chains=4,
                                     draws=2000, warmup=1000, seed=0)
        row = summarize(samples)[0]
        self.assertLess(abs(row.mean - 3.0), 3.0 * row.mcse_mean)
        self.assertLess(abs(row.sd - 2.0), 0.2)

    def test_convergence(self):
        data, _ = self.model.simulate(
            switching_task(seed=1),
            {'node.1.tonic_volatility': -3.0,
             'response.inverse_temperature': 2.0}, seed=1)
        samples = sample(self.space, data, self.model, chains=4, draws=1000,
                         warmup=1000, seed=1)
        for row in summarize(samples):
            self.assertLess(row.r_hat, 1.05, row.parameter)
            self.assertGreater(row.ess_bulk, 100.0, row.parameter)

    def test_recovery(self):
        report = recover(n_subjects=50, trials=320, seed=1)
        self.assertEqual(50, report.n_subjects)
        self.assertGreaterEqual(report.correlations['omega'], 0.7)
        self.assertGreaterEqual(report.correlations['log_temperature'], 0.7)

    def test_temperature_model_preferred(self):
        unit = AgentModel(preset('binary-3'),
                          ResponseModel(family='unit-sigmoid'), name='unit')
        self.model.name = 'temperature'
        spaces = [self.space, ParameterSpace([omega_parameter()])]
        wins = 0
        for seed in range(20):
            data, _ = self.model.simulate(
                switching_task(seed=seed),
                {'node.1.tonic_volatility': -3.0,
                 'response.inverse_temperature': 3.0}, seed=seed)
            samples = [sample(space, data, model, chains=2, draws=500,
                              warmup=500, seed=seed)
                       for model, space in zip((self.model, unit), spaces)]
            report = compare((self.model, unit), data, samples, spaces)
            wins += report.ranking[0] == 'temperature'
        self.assertGreaterEqual(wins, 18)

    def test_multilevel_coverage(self):
        subjects = simulate_dataset(self.model, switching_task(seed=2),
                                    n_subjects=20, seed=2)
        samples = multilevel_sample([subject.data for subject in subjects],
                                    self.model, self.space, chains=4,
                                    draws=1000, warmup=1000, seed=2)
        rows = {row.parameter: row for row in summarize(samples)}
        truths = {
            'node.1.tonic_volatility': np.mean(
                [subject.truth['node.1.tonic_volatility']
                 for subject in subjects]),
            'response.inverse_temperature': np.mean(
                [math.log(subject.truth['response.inverse_temperature'])
                 for subject in subjects]),
        }
        for name, truth in truths.items():
            row = rows['mu[%s]' % name]
            self.assertLessEqual(row.hdi_lower, truth, name)
            self.assertGreaterEqual(row.hdi_upper, truth, name)

    def test_parallel_invariance(self):
        subjects = simulate_dataset(self.model, switching_task(seed=3),
                                    n_subjects=10, seed=3)
        dataset = [subject.data for subject in subjects]
        serial = batch_fit(self.space, dataset, self.model, workers=1,
                           seed=3)
        parallel = batch_fit(self.space, dataset, self.model, workers=8,
                             seed=3)
        self.assertEqual([result.transformed for result in serial],
                         [result.transformed for result in parallel])
